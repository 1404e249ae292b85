"""Detection of pauses, interjections, word repairs and phrase repairs.

Occurrence tests (pauses, interjections, lexical equality) are symbolic;
category equality and the final repair decisions are small trained networks.
Repaired tokens are only marked as deleted, never removed, so the raw
hypothesis can always be reconstructed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lexicon import Lexicon, normalize_word
from .nnet import Network
from .tagsets import CategoryVector, TagsetBundle

DEFAULT_REPAIR_THRESHOLD = 0.5


@dataclass(frozen=True)
class RepairDecision:
    kind: str  # pause | interjection | word-repair | phrase-repair
    span: tuple[int, ...]  # token indices to mark deleted
    confidence: float

    def __post_init__(self):
        if len(self.span) == 0:
            raise ValueError("reparandum span must be non-empty")


@dataclass
class CorrectionNets:
    """Equality and combiner networks, shared read-only across sequences."""

    bas_syn_eq: Network  # 2 * |basic syn| -> 2
    bas_sem_eq: Network  # 2 * |basic sem| -> 2
    abs_syn_eq: Network  # 2 * |abstract syn| -> 2
    abs_sem_eq: Network  # 2 * |abstract sem| -> 2
    word_error: Network  # (lex, syn, sem) -> 2
    phrase_error: Network  # (lex-start, syn, sem) -> 2
    tagsets: TagsetBundle

    def __post_init__(self):
        ts = self.tagsets
        checks = (
            (self.bas_syn_eq, 2 * ts.syn_basic.size),
            (self.bas_sem_eq, 2 * ts.sem_basic.size),
            (self.abs_syn_eq, 2 * ts.syn_abstract.size),
            (self.abs_sem_eq, 2 * ts.sem_abstract.size),
            (self.word_error, 3),
            (self.phrase_error, 3),
        )
        for net, nin in checks:
            if net.spec.input_size != nin or net.spec.output_size != 2:
                raise ValueError(
                    f"correction network sizes {net.spec.input_size}->{net.spec.output_size} "
                    f"do not match expected {nin}->2"
                )


def integrate_outputs(out: np.ndarray) -> float:
    """Two-unit plausible/improbable outputs folded to one value: u1 * (1 - u2)."""
    return float(out[0] * (1.0 - out[1]))


def detect_pause_interjection(index: int, word: str, lexicon: Lexicon):
    """Symbolic occurrence test; returns a decision for flagged words, else None."""
    is_pause, is_interjection = lexicon.flags(word)
    if is_pause:
        return RepairDecision("pause", (index,), 1.0)
    if is_interjection:
        return RepairDecision("interjection", (index,), 1.0)
    return None


def lex_word_eq(w1: str, w2: str) -> float:
    """Symbolic lexical equality after normalization: 1.0 or 0.0."""
    return 1.0 if normalize_word(w1) == normalize_word(w2) else 0.0


def category_eq(v1: CategoryVector, v2: CategoryVector, net: Network) -> float:
    """Learned equality of two category vectors over the same tagset."""
    if v1.tagset != v2.tagset:
        raise ValueError("category vectors use different tagsets")
    out, _ = net.forward(np.concatenate([v1.values, v2.values]))
    return integrate_outputs(out)


def word_error(lex: float, syn: float, sem: float, net: Network) -> float:
    """Repair confidence from the three word-level equality preferences."""
    out, _ = net.forward(np.array([lex, syn, sem]))
    return integrate_outputs(out)


def phrase_pair_features(tokens1, tokens2, nets: CorrectionNets):
    """(lex-start, abstract-syn, abstract-sem) equality preferences of two phrases.

    Words are aligned positionally from the phrase starts; unmatched tail
    positions contribute equality 0.
    """
    lex = lex_word_eq(tokens1[0].word, tokens2[0].word)
    n = max(len(tokens1), len(tokens2))
    syn_vals = []
    sem_vals = []
    for i in range(n):
        if i >= len(tokens1) or i >= len(tokens2):
            syn_vals.append(0.0)
            sem_vals.append(0.0)
            continue
        syn_vals.append(
            category_eq(tokens1[i].syn_abstract, tokens2[i].syn_abstract, nets.abs_syn_eq)
        )
        sem_vals.append(
            category_eq(tokens1[i].sem_abstract, tokens2[i].sem_abstract, nets.abs_sem_eq)
        )
    return lex, float(np.mean(syn_vals)), float(np.mean(sem_vals))


def phrase_error(tokens1, tokens2, nets: CorrectionNets) -> float:
    """Confidence that the first phrase is replaced by the second."""
    lex, syn, sem = phrase_pair_features(tokens1, tokens2, nets)
    out, _ = nets.phrase_error.forward(np.array([lex, syn, sem]))
    return integrate_outputs(out)
