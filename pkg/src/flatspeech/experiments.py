"""Built-in studies: delayed-dependency prediction and noisy-lattice decoding.

The delay task compares a recurrent predictor against count-based n-gram
baselines on sequences whose only predictable symbol depends on a cue three
steps back.  The lattice study measures how much the learned syntactic and
semantic plausibilities improve word accuracy over acoustic scores alone.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace

import numpy as np

from .analysis import AnalyzerConfig
from .decoder import DecoderConfig, WordGraph, WordHypothesis, decode
from .models import ModelSet
from .ngram import NgramModel, RecurrentPredictor, exclusion_accuracy
from .nnet import NetworkSpec, TrainConfig, train

# ---- delayed-dependency prediction task ---------------------------------


@dataclass(frozen=True)
class DelayTaskConfig:
    n_cues: int = 5
    n_fillers: int = 15
    frames_per_sequence: int = 3
    n_train: int = 150
    n_test: int = 300
    seed: int = 7
    hidden: int = 14
    epochs: int = 200
    learning_rate: float = 0.3
    ngram_alpha: float = 0.1

    @property
    def alphabet(self):
        cues = tuple(f"c{i}" for i in range(self.n_cues))
        fillers = tuple(f"f{i}" for i in range(self.n_fillers))
        return cues + fillers


@dataclass
class DelayTask:
    config: DelayTaskConfig
    mapping: dict  # cue -> resolution symbol, revealed three steps later
    train: list
    test: list

    @property
    def alphabet(self):
        return self.config.alphabet


def make_delay_task(config: DelayTaskConfig | None = None) -> DelayTask:
    """Frames of [cue, filler, filler, mapped(cue)]; only the last is predictable."""
    config = config if config is not None else DelayTaskConfig()
    rng = np.random.default_rng(config.seed)
    cues = config.alphabet[: config.n_cues]
    fillers = config.alphabet[config.n_cues :]
    order = rng.permutation(config.n_cues)
    mapping = {cues[i]: cues[(int(order[i]) + 1) % config.n_cues] for i in range(config.n_cues)}

    def sample_split(n):
        seqs = []
        for _ in range(n):
            seq = []
            for _ in range(config.frames_per_sequence):
                cue = cues[int(rng.integers(len(cues)))]
                seq.append(cue)
                seq.append(fillers[int(rng.integers(len(fillers)))])
                seq.append(fillers[int(rng.integers(len(fillers)))])
                seq.append(mapping[cue])
            seqs.append(seq)
        return seqs

    return DelayTask(config, mapping, sample_split(config.n_train), sample_split(config.n_test))


class OptimalDelayPredictor:
    """The true conditional distribution of the generating process.

    No learned predictor can beat it in expectation, which makes it the
    reference curve for the baselines.
    """

    def __init__(self, task: DelayTask):
        self.task = task
        self.alphabet = task.alphabet
        self._index = {sym: i for i, sym in enumerate(self.alphabet)}

    def probs(self, prefix) -> np.ndarray:
        cfg = self.task.config
        cues = self.alphabet[: cfg.n_cues]
        fillers = self.alphabet[cfg.n_cues :]
        p = np.zeros(len(self.alphabet))
        position = len(prefix) % 4
        if position in (1, 2):
            for sym in fillers:
                p[self._index[sym]] = 1.0 / len(fillers)
        elif position == 3:
            p[self._index[self.task.mapping[prefix[-3]]]] = 1.0
        else:
            for sym in cues:
                p[self._index[sym]] = 1.0 / len(cues)
        return p


def train_delay_predictor(task: DelayTask) -> RecurrentPredictor:
    cfg = task.config
    size = len(task.alphabet)
    index = {sym: i for i, sym in enumerate(task.alphabet)}

    def one_hot(sym):
        v = np.zeros(size)
        v[index[sym]] = 1.0
        return v

    data = [
        [(one_hot(seq[t]), one_hot(seq[t + 1])) for t in range(len(seq) - 1)]
        for seq in task.train
    ]
    spec = NetworkSpec(size, cfg.hidden, size, recurrent=True, seed=cfg.seed)
    net, _ = train(spec, data, TrainConfig(cfg.epochs, cfg.learning_rate, seed=cfg.seed))
    return RecurrentPredictor(net, task.alphabet)


def delay_comparison(task: DelayTask | None = None, max_order: int = 5) -> dict:
    """Exclusion-accuracy curves: recurrent net, n-grams, and the optimum.

    Returns {"recurrent": [...], "ngram-1": [...], ..., "optimal": [...]},
    each a list indexed by exclusion level 0 .. alphabet size - 1.
    """
    task = task if task is not None else make_delay_task()
    levels = range(len(task.alphabet))
    curves = {}
    predictor = train_delay_predictor(task)
    curves["recurrent"] = [exclusion_accuracy(predictor, task.test, k) for k in levels]
    for n in range(1, max_order + 1):
        model = NgramModel(n, task.alphabet, alpha=task.config.ngram_alpha).fit(task.train)
        curves[f"ngram-{n}"] = [exclusion_accuracy(model, task.test, k) for k in levels]
    optimal = OptimalDelayPredictor(task)
    curves["optimal"] = [exclusion_accuracy(optimal, task.test, k) for k in levels]
    return curves


# ---- noisy-lattice decoding study ---------------------------------------


@dataclass(frozen=True)
class NoisyLatticeConfig:
    n_lattices: int = 100
    p_distractor: float = 0.6
    slot_width: int = 10
    seed: int = 0
    beam: int = 10


def make_noisy_lattice(tokens, lexicon, cfg: NoisyLatticeConfig, rng):
    """One slot per reference word; some slots gain a wrong-category rival.

    Half of the rivals come from a different syntactic category, the other
    half share the reference word's syntactic category but differ in the
    semantic one, so each knowledge source has distractors only it can reject.
    """
    vocabulary = sorted(lexicon.entries)
    hypotheses = []
    reference = []
    for i, tok in enumerate(tokens):
        start = cfg.slot_width * i
        end = start + cfg.slot_width - 1
        reference.append(tok.word)
        hypotheses.append(WordHypothesis(start, end, tok.word, float(rng.uniform(0.5, 1.0))))
        if rng.random() < cfg.p_distractor:
            si = lexicon.syn_tagset.index(tok.syn)
            mi = lexicon.sem_tagset.index(tok.sem)
            if rng.random() < 0.5:
                rivals = [
                    w
                    for w in vocabulary
                    if w != tok.word and not lexicon.entries[w].syn[si]
                ]
            else:
                rivals = [
                    w
                    for w in vocabulary
                    if w != tok.word
                    and lexicon.entries[w].syn[si]
                    and not lexicon.entries[w].sem[mi]
                ]
            if not rivals:
                rivals = [w for w in vocabulary if w != tok.word]
            rival = rivals[int(rng.integers(len(rivals)))]
            hypotheses.append(WordHypothesis(start, end, rival, float(rng.uniform(0.5, 1.0))))
    return WordGraph(hypotheses), reference


_MODES = {
    "acoustic": AnalyzerConfig(use_syn=False, use_sem=False, repairs=False),
    "acoustic+syn": AnalyzerConfig(use_syn=True, use_sem=False, repairs=False),
    "acoustic+syn+sem": AnalyzerConfig(use_syn=True, use_sem=True, repairs=False),
}


def noisy_lattice_experiment(models: ModelSet, turns, cfg: NoisyLatticeConfig | None = None) -> dict:
    """Mean rank-1 word accuracy per knowledge source combination."""
    cfg = cfg if cfg is not None else NoisyLatticeConfig()
    rng = np.random.default_rng(cfg.seed)
    lattices = []
    for turn in turns[: cfg.n_lattices]:
        live = [t for t in turn.tokens if not t.deleted]
        if len(live) < 2:
            continue
        lattices.append(make_noisy_lattice(live, models.lexicon, cfg, rng))
    results = {}
    for mode, analyzer_cfg in _MODES.items():
        decoder_cfg = DecoderConfig(beam=cfg.beam, analyzer=analyzer_cfg)
        scores = []
        for graph, reference in lattices:
            best = decode(models, graph, decoder_cfg)[0]
            words = best.words(graph)
            scores.append(
                sum(w == r for w, r in zip(words, reference)) / len(reference)
            )
        results[mode] = float(np.mean(scores))
    return results


# ---- reference lattice ---------------------------------------------------
# A small hand-built lattice whose intended nine-word path competes with
# plausible-looking rivals; times are centiseconds, scores are raw acoustics.

_REFERENCE_LATTICE = (
    (10, 32, "ähm", 0.90),
    (33, 38, "ich", 1.00),
    (33, 43, "am", 0.90),
    (39, 43, "am", 0.50),
    (44, 70, "sechsten", 0.95),
    (71, 90, "april", 0.95),
    (91, 105, "wenn", 0.80),
    (91, 105, "bin", 0.90),
    (106, 112, "ich", 0.80),
    (106, 120, "ich", 0.85),
    (113, 120, "ich", 0.80),
    (121, 150, "leider", 0.95),
    (151, 175, "außer", 0.95),
    (176, 200, "hause", 0.95),
)

REFERENCE_LATTICE_BEST = ["ähm", "am", "sechsten", "april", "bin", "ich", "leider", "außer", "hause"]


def reference_lattice() -> WordGraph:
    return WordGraph([WordHypothesis(s, e, w, a) for s, e, w, a in _REFERENCE_LATTICE])
