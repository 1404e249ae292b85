"""The five categorization networks and the phrase assembler.

One TaggerBundle per hypothesis sequence: the underlying networks are shared
read-only, the recurrent states belong to the bundle and are cloned when a
hypothesis sequence branches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .nnet import Network, SequenceState
from .tagsets import CategoryVector, TagsetBundle

DEFAULT_BOUNDARY_THRESHOLD = 0.5


@dataclass
class TokenAnalysis:
    """Per-token result of the four-level analysis plus boundary/deletion marks."""

    word: str
    syn_basic: CategoryVector
    syn_abstract: CategoryVector
    sem_basic: CategoryVector
    sem_abstract: CategoryVector
    boundary: float
    deleted: bool = False
    repair_kind: str | None = None


@dataclass(frozen=True)
class Phrase:
    start: int  # token index of first span token
    end: int  # token index of last span token, inclusive
    syn_label: str  # abstract syntactic category of the first span token
    sem_label: str  # abstract semantic category of the last span token


@dataclass
class TaggerNets:
    """The shared, immutable networks behind every TaggerBundle."""

    bas_syn_dis: Network
    bas_sem_dis: Network
    abs_syn_cat: Network
    abs_sem_cat: Network
    phrase_start: Network
    tagsets: TagsetBundle

    def __post_init__(self):
        ts = self.tagsets
        checks = (
            (self.bas_syn_dis, ts.syn_basic.size, ts.syn_basic.size),
            (self.bas_sem_dis, ts.sem_basic.size, ts.sem_basic.size),
            (self.abs_syn_cat, ts.syn_basic.size, ts.syn_abstract.size),
            (self.abs_sem_cat, ts.sem_basic.size, ts.sem_abstract.size),
            (self.phrase_start, ts.syn_basic.size, 2),
        )
        for net, nin, nout in checks:
            if net.spec.input_size != nin or net.spec.output_size != nout:
                raise ValueError(
                    f"tagger network sizes {net.spec.input_size}->{net.spec.output_size} "
                    f"do not match tagsets ({nin}->{nout})"
                )

    def fresh_bundle(self) -> "TaggerBundle":
        return TaggerBundle(self)


class TaggerBundle:
    """Mutable recurrent states for one hypothesis sequence; never shared."""

    def __init__(self, nets: TaggerNets, states=None):
        self.nets = nets
        if states is None:
            states = {
                name: getattr(nets, name).initial_state()
                for name in ("bas_syn_dis", "bas_sem_dis", "abs_syn_cat", "abs_sem_cat", "phrase_start")
            }
        self.states = states

    def clone(self) -> "TaggerBundle":
        return TaggerBundle(self.nets, {k: s.copy() for k, s in self.states.items()})

    def reset(self) -> None:
        for name in self.states:
            self.states[name] = getattr(self.nets, name).initial_state()

    def _step(self, name: str, values: np.ndarray) -> np.ndarray:
        net = getattr(self.nets, name)
        out, self.states[name] = net.forward(values, self.states[name])
        return out

    def disambiguate_syn(self, ambiguous: CategoryVector) -> CategoryVector:
        out = self._step("bas_syn_dis", ambiguous.values)
        return CategoryVector(self.nets.tagsets.syn_basic, out)

    def disambiguate_sem(self, ambiguous: CategoryVector) -> CategoryVector:
        out = self._step("bas_sem_dis", ambiguous.values)
        return CategoryVector(self.nets.tagsets.sem_basic, out)

    def abstract_syn(self, disambiguated: CategoryVector) -> CategoryVector:
        out = self._step("abs_syn_cat", disambiguated.values)
        return CategoryVector(self.nets.tagsets.syn_abstract, out)

    def abstract_sem(self, disambiguated: CategoryVector) -> CategoryVector:
        out = self._step("abs_sem_cat", disambiguated.values)
        return CategoryVector(self.nets.tagsets.sem_abstract, out)

    def phrase_start(self, disambiguated_syn: CategoryVector) -> float:
        out = self._step("phrase_start", disambiguated_syn.values)
        # two-unit plausible/improbable coding, integrated as u1 * (1 - u2)
        return float(out[0] * (1.0 - out[1]))


def assemble_phrases(tokens, threshold: float = DEFAULT_BOUNDARY_THRESHOLD):
    """Partition the non-deleted tokens into phrases at boundary marks.

    A new span opens at the first non-deleted token and wherever the boundary
    strength reaches ``threshold``. Span indices refer to positions in
    ``tokens``.
    """
    live = [i for i, tok in enumerate(tokens) if not tok.deleted]
    phrases: list[Phrase] = []
    if not live:
        return phrases
    spans = []
    for pos, i in enumerate(live):
        if pos == 0 or tokens[i].boundary >= threshold:
            spans.append([i, i])
        else:
            spans[-1][1] = i
    for start, end in spans:
        phrases.append(
            Phrase(
                start=start,
                end=end,
                syn_label=tokens[start].syn_abstract.top_label(),
                sem_label=tokens[end].sem_abstract.top_label(),
            )
        )
    return phrases
