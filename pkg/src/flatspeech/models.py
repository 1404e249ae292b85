"""Container for a full trained model set, with directory save/load."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .correction import CorrectionNets
from .lexicon import Lexicon
from .nnet import Network
from .scoring import PredictorNets
from .tagsets import (
    ABSTRACT_SEMANTIC,
    ABSTRACT_SYNTACTIC,
    BASIC_SEMANTIC,
    BASIC_SYNTACTIC,
    Tagset,
    TagsetBundle,
)
from .taggers import TaggerNets

TAGGER_NAMES = ("bas-syn-dis", "bas-sem-dis", "abs-syn-cat", "abs-sem-cat", "phrase-start")
PREDICTOR_NAMES = ("bas-syn-pre", "bas-sem-pre")
CORRECTION_NAMES = (
    "bas-syn-eq",
    "bas-sem-eq",
    "abs-syn-eq",
    "abs-sem-eq",
    "word-error",
    "phrase-error",
)
ALL_NET_NAMES = TAGGER_NAMES + PREDICTOR_NAMES + CORRECTION_NAMES

_TAGSET_FILES = {
    BASIC_SYNTACTIC: "tagset-basic-syntactic.txt",
    ABSTRACT_SYNTACTIC: "tagset-abstract-syntactic.txt",
    BASIC_SEMANTIC: "tagset-basic-semantic.txt",
    ABSTRACT_SEMANTIC: "tagset-abstract-semantic.txt",
}


@dataclass
class ModelSet:
    tagsets: TagsetBundle
    lexicon: Lexicon
    taggers: TaggerNets
    predictors: PredictorNets
    correction: CorrectionNets

    @classmethod
    def from_networks(cls, tagsets: TagsetBundle, lexicon: Lexicon, nets: dict) -> "ModelSet":
        """Assemble from a name -> Network mapping using the canonical names."""
        missing = [n for n in ALL_NET_NAMES if n not in nets]
        if missing:
            raise ValueError(f"missing networks: {missing}")
        taggers = TaggerNets(
            nets["bas-syn-dis"],
            nets["bas-sem-dis"],
            nets["abs-syn-cat"],
            nets["abs-sem-cat"],
            nets["phrase-start"],
            tagsets,
        )
        predictors = PredictorNets(nets["bas-syn-pre"], nets["bas-sem-pre"], tagsets)
        correction = CorrectionNets(
            nets["bas-syn-eq"],
            nets["bas-sem-eq"],
            nets["abs-syn-eq"],
            nets["abs-sem-eq"],
            nets["word-error"],
            nets["phrase-error"],
            tagsets,
        )
        return cls(tagsets, lexicon, taggers, predictors, correction)

    def networks(self) -> dict:
        t, p, c = self.taggers, self.predictors, self.correction
        return {
            "bas-syn-dis": t.bas_syn_dis,
            "bas-sem-dis": t.bas_sem_dis,
            "abs-syn-cat": t.abs_syn_cat,
            "abs-sem-cat": t.abs_sem_cat,
            "phrase-start": t.phrase_start,
            "bas-syn-pre": p.bas_syn_pre,
            "bas-sem-pre": p.bas_sem_pre,
            "bas-syn-eq": c.bas_syn_eq,
            "bas-sem-eq": c.bas_sem_eq,
            "abs-syn-eq": c.abs_syn_eq,
            "abs-sem-eq": c.abs_sem_eq,
            "word-error": c.word_error,
            "phrase-error": c.phrase_error,
        }

    def save(self, directory) -> None:
        os.makedirs(directory, exist_ok=True)
        for kind, fname in _TAGSET_FILES.items():
            tagset = {
                BASIC_SYNTACTIC: self.tagsets.syn_basic,
                ABSTRACT_SYNTACTIC: self.tagsets.syn_abstract,
                BASIC_SEMANTIC: self.tagsets.sem_basic,
                ABSTRACT_SEMANTIC: self.tagsets.sem_abstract,
            }[kind]
            tagset.to_file(os.path.join(directory, fname))
        self.lexicon.to_file(os.path.join(directory, "lexicon.txt"))
        for name, net in self.networks().items():
            net.meta.setdefault("name", name)
            net.save(os.path.join(directory, name + ".net"))

    @classmethod
    def load(cls, directory) -> "ModelSet":
        tagsets = TagsetBundle(
            Tagset.from_file(os.path.join(directory, _TAGSET_FILES[BASIC_SYNTACTIC]), BASIC_SYNTACTIC),
            Tagset.from_file(
                os.path.join(directory, _TAGSET_FILES[ABSTRACT_SYNTACTIC]), ABSTRACT_SYNTACTIC
            ),
            Tagset.from_file(os.path.join(directory, _TAGSET_FILES[BASIC_SEMANTIC]), BASIC_SEMANTIC),
            Tagset.from_file(
                os.path.join(directory, _TAGSET_FILES[ABSTRACT_SEMANTIC]), ABSTRACT_SEMANTIC
            ),
        )
        lexicon = Lexicon.from_file(os.path.join(directory, "lexicon.txt"), tagsets)
        nets = {
            name: Network.load(os.path.join(directory, name + ".net")) for name in ALL_NET_NAMES
        }
        return cls.from_networks(tagsets, lexicon, nets)
