"""Accuracy measurement against annotated turns.

Level-wise accuracies evaluate each network on its own task (disambiguators
from lexicon input, the rest from gold one-hot input); the overall measure
runs the complete incremental analyzer and compares whole phrases.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace

import numpy as np

from .analysis import AnalyzerConfig, analyze_words
from .corpus import gold_phrases
from .correction import word_error
from .models import ModelSet
from .training import (
    phrase_error_features,
    phrase_error_pairs,
    soft_analyses,
    word_error_features,
    word_error_pairs,
)


def tagger_accuracies(models: ModelSet, turns) -> dict:
    """Per-token argmax accuracy of the five categorization networks."""
    ts = models.tagsets
    nets = models.networks()
    hits = {name: 0 for name in ("bas-syn-dis", "bas-sem-dis", "abs-syn-cat", "abs-sem-cat", "phrase-start")}
    total = 0
    for turn in turns:
        syn_in = [models.lexicon.lookup(t.word)[0].values for t in turn.tokens]
        sem_in = [models.lexicon.lookup(t.word)[1].values for t in turn.tokens]
        syn_hot = [ts.syn_basic.one_hot(t.syn) for t in turn.tokens]
        sem_hot = [ts.sem_basic.one_hot(t.sem) for t in turn.tokens]
        runs = {
            "bas-syn-dis": (syn_in, [ts.syn_basic.index(t.syn) for t in turn.tokens]),
            "bas-sem-dis": (sem_in, [ts.sem_basic.index(t.sem) for t in turn.tokens]),
            "abs-syn-cat": (syn_hot, [ts.syn_abstract.index(t.syn_abs) for t in turn.tokens]),
            "abs-sem-cat": (sem_hot, [ts.sem_abstract.index(t.sem_abs) for t in turn.tokens]),
        }
        for name, (inputs, targets) in runs.items():
            outs = nets[name].run_sequence(inputs)
            hits[name] += int(np.sum(np.argmax(outs, axis=1) == np.asarray(targets)))
        outs = nets["phrase-start"].run_sequence(syn_hot)
        marks = (outs[:, 0] * (1.0 - outs[:, 1])) >= 0.5
        gold = np.array([t.boundary for t in turn.tokens], dtype=bool)
        hits["phrase-start"] += int(np.sum(marks == gold))
        total += len(turn.tokens)
    if total == 0:
        raise ValueError("no tokens to evaluate")
    return {name: h / total for name, h in hits.items()}


def _balanced_accuracy(outcomes) -> float:
    """Mean of per-class accuracies over (predicted, actual) booleans."""
    pos = [p for p, a in outcomes if a]
    neg = [not p for p, a in outcomes if not a]
    if not pos or not neg:
        raise ValueError("balanced accuracy needs both classes")
    return 0.5 * (sum(pos) / len(pos) + sum(neg) / len(neg))


def combiner_accuracies(models: ModelSet, turns, threshold: float = 0.5) -> dict:
    """Balanced detection accuracy of the two repair combiners."""
    nets = models.networks()
    word_outcomes = []
    phrase_outcomes = []
    for turn in turns:
        analyses = soft_analyses(turn, models.taggers, models.lexicon)
        for pair, label in word_error_pairs(turn):
            lex, syn, sem = word_error_features(pair, analyses, nets)
            conf = word_error(lex, syn, sem, models.correction.word_error)
            word_outcomes.append((conf >= threshold, label))
        for pair, label in phrase_error_pairs(turn):
            feats = phrase_error_features(pair, analyses, models.correction)
            out, _ = models.correction.phrase_error.forward(feats)
            conf = float(out[0] * (1.0 - out[1]))
            phrase_outcomes.append((conf >= threshold, label))
    return {
        "word-error": _balanced_accuracy(word_outcomes),
        "phrase-error": _balanced_accuracy(phrase_outcomes),
    }


@dataclass
class OverallResult:
    syn_accuracy: float
    sem_accuracy: float
    n_phrases: int


def overall_phrase_accuracy(
    models: ModelSet, turns, config: AnalyzerConfig | None = None
) -> OverallResult:
    """Whole-pipeline phrase accuracy on raw word streams.

    A gold phrase is syntactically correct when the analyzer produced a phrase
    starting at the same token with the same abstract syntactic label, and
    semantically correct when a system phrase ends at the same token with the
    same abstract semantic label.  Token indices refer to the raw stream, so
    deletion mistakes surface as alignment errors.
    """
    syn_hits = sem_hits = total = 0
    for turn in turns:
        analyzer = analyze_words(models, [t.word for t in turn.tokens], config)
        by_start = {p.start: p for p in analyzer.phrases()}
        by_end = {p.end: p for p in analyzer.phrases()}
        for start, end, syn_label, sem_label in gold_phrases(turn):
            total += 1
            got = by_start.get(start)
            if got is not None and got.syn_label == syn_label:
                syn_hits += 1
            got = by_end.get(end)
            if got is not None and got.sem_label == sem_label:
                sem_hits += 1
    if total == 0:
        raise ValueError("no phrases to evaluate")
    return OverallResult(syn_hits / total, sem_hits / total, total)


def ablated_models(models: ModelSet, fraction: float, seed: int) -> ModelSet:
    """The same networks over a lexicon with a fraction of entries removed."""
    return dc_replace(models, lexicon=models.lexicon.ablate(fraction, seed))


def ablation_experiment(models: ModelSet, turns, fractions=(0.05, 0.10), seeds=(0, 1, 2, 3, 4)):
    """Overall accuracies of the intact lexicon and, per fraction, the mean
    over several randomly ablated lexica (one per seed)."""
    results = {0.0: overall_phrase_accuracy(models, turns)}
    for fraction in fractions:
        runs = [
            overall_phrase_accuracy(ablated_models(models, fraction, seed), turns)
            for seed in seeds
        ]
        results[fraction] = OverallResult(
            float(np.mean([r.syn_accuracy for r in runs])),
            float(np.mean([r.sem_accuracy for r in runs])),
            runs[0].n_phrases,
        )
    return results
