"""Incremental per-sequence analysis: lookup, tagging, plausibility, repair.

A SequenceAnalyzer consumes one word at a time and maintains everything that
belongs to a single hypothesis sequence: tagger and predictor states, the
token analyses, the plausibility score and the repair marks.  Cloning an
analyzer is cheap and gives the lattice decoder independent branches.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .correction import (
    DEFAULT_REPAIR_THRESHOLD,
    RepairDecision,
    detect_pause_interjection,
    category_eq,
    lex_word_eq,
    phrase_error,
    word_error,
)
from .models import ModelSet
from .scoring import FIRST_WORD_PLAUSIBILITY, SequenceScore, agreement_plausibility
from .taggers import DEFAULT_BOUNDARY_THRESHOLD, Phrase, TokenAnalysis, assemble_phrases


@dataclass(frozen=True)
class AnalyzerConfig:
    boundary_threshold: float = DEFAULT_BOUNDARY_THRESHOLD
    repair_threshold: float = DEFAULT_REPAIR_THRESHOLD
    use_syn: bool = True  # include syntactic plausibility in the score
    use_sem: bool = True  # include semantic plausibility in the score
    repairs: bool = True  # detect and mark disfluencies


class SequenceAnalyzer:
    """All mutable state of one hypothesis sequence."""

    def __init__(self, models: ModelSet, config: AnalyzerConfig | None = None, _clone_of=None):
        self.models = models
        self.config = config if config is not None else AnalyzerConfig()
        if _clone_of is None:
            self.taggers = models.taggers.fresh_bundle()
            self.predictors = models.predictors.fresh_bundle()
            self.tokens: list[TokenAnalysis] = []
            self.score = SequenceScore()
            self.repairs: list[RepairDecision] = []
            self._syn_pred = None
            self._sem_pred = None
            self.finished = False
        else:
            src = _clone_of
            self.taggers = src.taggers.clone()
            self.predictors = src.predictors.clone()
            self.tokens = [replace(tok) for tok in src.tokens]
            self.score = src.score.copy()
            self.repairs = list(src.repairs)
            self._syn_pred = src._syn_pred
            self._sem_pred = src._sem_pred
            self.finished = src.finished

    def clone(self) -> "SequenceAnalyzer":
        """Independent copy; shares the read-only networks, nothing mutable."""
        return SequenceAnalyzer(self.models, self.config, _clone_of=self)

    # ---- incremental input -------------------------------------------------

    def feed(self, word: str, acoustic: float = 1.0) -> TokenAnalysis:
        """Analyze the next word and fold it into score and repair state."""
        if self.finished:
            raise RuntimeError("cannot feed a finished sequence")
        syn_amb, sem_amb, _known = self.models.lexicon.lookup(word)
        syn = self.taggers.disambiguate_syn(syn_amb)
        sem = self.taggers.disambiguate_sem(sem_amb)
        token = TokenAnalysis(
            word=word,
            syn_basic=syn,
            syn_abstract=self.taggers.abstract_syn(syn),
            sem_basic=sem,
            sem_abstract=self.taggers.abstract_sem(sem),
            boundary=self.taggers.phrase_start(syn),
        )
        index = len(self.tokens)
        self.tokens.append(token)

        if self._syn_pred is None:
            syn_pl = sem_pl = FIRST_WORD_PLAUSIBILITY
        else:
            syn_pl = agreement_plausibility(self._syn_pred, syn)
            sem_pl = agreement_plausibility(self._sem_pred, sem)
        self._syn_pred = self.predictors.predict_next_syn(syn)
        self._sem_pred = self.predictors.predict_next_sem(sem)
        self.score = self.score.extended(
            acoustic,
            syn_pl if self.config.use_syn else 1.0,
            sem_pl if self.config.use_sem else 1.0,
        )

        if self.config.repairs:
            self._repair_step(index, token)
        return token

    def finish(self) -> None:
        """Close the sequence; the final pair of phrases gets its repair check."""
        if self.finished:
            return
        self.finished = True
        if self.config.repairs:
            phrases = self._live_phrases()
            if len(phrases) >= 2:
                self._check_phrase_pair(phrases[-2], phrases[-1])

    # ---- repair detection --------------------------------------------------

    def _repair_step(self, index: int, token: TokenAnalysis) -> None:
        decision = detect_pause_interjection(index, token.word, self.models.lexicon)
        if decision is not None:
            self._apply(decision)
            return
        self._check_word_pair(index, token)
        phrases = self._live_phrases()
        # A token that just opened a new phrase completes the previous one, so
        # the two most recently completed phrases can now be compared.
        if len(phrases) >= 3 and phrases[-1].start == index:
            self._check_phrase_pair(phrases[-3], phrases[-2])

    def _check_word_pair(self, index: int, token: TokenAnalysis) -> None:
        prev_index = next(
            (i for i in range(index - 1, -1, -1) if not self.tokens[i].deleted), None
        )
        if prev_index is None:
            return
        prev = self.tokens[prev_index]
        nets = self.models.correction
        confidence = word_error(
            lex_word_eq(prev.word, token.word),
            category_eq(prev.syn_basic, token.syn_basic, nets.bas_syn_eq),
            category_eq(prev.sem_basic, token.sem_basic, nets.bas_sem_eq),
            nets.word_error,
        )
        if confidence >= self.config.repair_threshold:
            self._apply(RepairDecision("word-repair", (prev_index,), confidence))

    def _check_phrase_pair(self, earlier: Phrase, later: Phrase) -> None:
        first = self._span_tokens(earlier)
        second = self._span_tokens(later)
        confidence = phrase_error(first, second, self.models.correction)
        if confidence >= self.config.repair_threshold:
            span = tuple(
                i for i in range(earlier.start, earlier.end + 1) if not self.tokens[i].deleted
            )
            self._apply(RepairDecision("phrase-repair", span, confidence))

    def _apply(self, decision: RepairDecision) -> None:
        self.repairs.append(decision)
        for i in decision.span:
            self.tokens[i].deleted = True
            self.tokens[i].repair_kind = decision.kind

    # ---- views -------------------------------------------------------------

    def _live_phrases(self):
        return assemble_phrases(self.tokens, self.config.boundary_threshold)

    def _span_tokens(self, phrase: Phrase):
        return [
            self.tokens[i]
            for i in range(phrase.start, phrase.end + 1)
            if not self.tokens[i].deleted
        ]

    def phrases(self):
        """Current phrase segmentation over the non-deleted tokens."""
        return self._live_phrases()

    def words(self):
        return [tok.word for tok in self.tokens]

    def live_words(self):
        return [tok.word for tok in self.tokens if not tok.deleted]

    def __len__(self) -> int:
        return len(self.tokens)


def analyze_words(models: ModelSet, words, config: AnalyzerConfig | None = None) -> SequenceAnalyzer:
    """Run a plain word sequence (acoustics all 1.0) through a fresh analyzer."""
    analyzer = SequenceAnalyzer(models, config)
    for word in words:
        analyzer.feed(word)
    analyzer.finish()
    return analyzer
