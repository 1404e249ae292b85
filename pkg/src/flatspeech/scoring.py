"""Sequence plausibility: prediction networks and the equal-weight combination.

Each word of a hypothesis sequence contributes an acoustic, a syntactic and a
semantic plausibility in [0, 1]; the sequence score is the geometric mean over
words of their per-word product, so sequences of different length compare
fairly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .nnet import Network
from .tagsets import CategoryVector, TagsetBundle

FIRST_WORD_PLAUSIBILITY = 1.0  # no prediction exists before the first word


@dataclass
class PredictorNets:
    """Shared next-category prediction networks."""

    bas_syn_pre: Network
    bas_sem_pre: Network
    tagsets: TagsetBundle

    def __post_init__(self):
        ts = self.tagsets
        for net, size in ((self.bas_syn_pre, ts.syn_basic.size), (self.bas_sem_pre, ts.sem_basic.size)):
            if net.spec.input_size != size or net.spec.output_size != size:
                raise ValueError(
                    f"predictor network sizes {net.spec.input_size}->{net.spec.output_size} "
                    f"do not match tagset size {size}"
                )

    def fresh_bundle(self) -> "PredictorBundle":
        return PredictorBundle(self)


class PredictorBundle:
    """Recurrent predictor states for one hypothesis sequence."""

    def __init__(self, nets: PredictorNets, states=None):
        self.nets = nets
        if states is None:
            states = {
                "bas_syn_pre": nets.bas_syn_pre.initial_state(),
                "bas_sem_pre": nets.bas_sem_pre.initial_state(),
            }
        self.states = states

    def clone(self) -> "PredictorBundle":
        return PredictorBundle(self.nets, {k: s.copy() for k, s in self.states.items()})

    def reset(self) -> None:
        self.states["bas_syn_pre"] = self.nets.bas_syn_pre.initial_state()
        self.states["bas_sem_pre"] = self.nets.bas_sem_pre.initial_state()

    def predict_next_syn(self, current: CategoryVector) -> CategoryVector:
        out, self.states["bas_syn_pre"] = self.nets.bas_syn_pre.forward(
            current.values, self.states["bas_syn_pre"]
        )
        return CategoryVector(self.nets.tagsets.syn_basic, out)

    def predict_next_sem(self, current: CategoryVector) -> CategoryVector:
        out, self.states["bas_sem_pre"] = self.nets.bas_sem_pre.forward(
            current.values, self.states["bas_sem_pre"]
        )
        return CategoryVector(self.nets.tagsets.sem_basic, out)


def agreement_plausibility(prediction: CategoryVector, disambiguated: CategoryVector) -> float:
    """Predicted activation of the category the disambiguator settled on."""
    if prediction.tagset is not disambiguated.tagset and prediction.tagset != disambiguated.tagset:
        raise ValueError("prediction and disambiguation use different tagsets")
    return float(prediction.values[disambiguated.argmax()])


def combine(acoustic, syntactic, semantic) -> float:
    """Equal-weight per-word product, geometric mean over sequence length."""
    n = len(acoustic)
    if n == 0:
        raise ValueError("cannot combine empty plausibility lists")
    if len(syntactic) != n or len(semantic) != n:
        raise ValueError("plausibility lists must have equal length")
    log_sum = 0.0
    for a, s, m in zip(acoustic, syntactic, semantic):
        for v in (a, s, m):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"plausibility {v} outside [0, 1]")
        p = a * s * m
        if p == 0.0:
            return 0.0
        log_sum += math.log(p)
    return math.exp(log_sum / n)


@dataclass
class SequenceScore:
    """Per-word plausibility lists and their combined value."""

    acoustic: list[float] = field(default_factory=list)
    syntactic: list[float] = field(default_factory=list)
    semantic: list[float] = field(default_factory=list)
    combined: float = 1.0

    def copy(self) -> "SequenceScore":
        return SequenceScore(
            list(self.acoustic), list(self.syntactic), list(self.semantic), self.combined
        )

    def extended(self, acoustic: float, syntactic: float, semantic: float) -> "SequenceScore":
        """New score with one more word appended; the original is untouched."""
        score = self.copy()
        score.acoustic.append(acoustic)
        score.syntactic.append(syntactic)
        score.semantic.append(semantic)
        score.combined = combine(score.acoustic, score.syntactic, score.semantic)
        return score

    def __len__(self) -> int:
        return len(self.acoustic)
