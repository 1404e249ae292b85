"""Category inventories and activation vectors for the four-level flat analysis.

Four fixed inventories are shipped as defaults (13 basic syntactic, 8 abstract
syntactic, 20 basic semantic, 17 abstract semantic categories); alternate
inventories can be loaded from plain-text files so a new domain only needs new
configuration, not new code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

BASIC_SYNTACTIC = "basic-syntactic"
ABSTRACT_SYNTACTIC = "abstract-syntactic"
BASIC_SEMANTIC = "basic-semantic"
ABSTRACT_SEMANTIC = "abstract-semantic"

# (name, abbreviation) in index order; the order defines unit assignment.
_DEFAULT_LABELS = {
    BASIC_SYNTACTIC: (
        ("noun", "N"),
        ("verb", "V"),
        ("preposition", "R"),
        ("pronoun", "U"),
        ("numeral", "M"),
        ("participle", "P"),
        ("pause", "/"),
        ("adjective", "J"),
        ("adverb", "A"),
        ("conjunction", "C"),
        ("determiner", "D"),
        ("interjection", "I"),
        ("other", "O"),
    ),
    ABSTRACT_SYNTACTIC: (
        ("verb-group", "VG"),
        ("noun-group", "NG"),
        ("adverbial-group", "AG"),
        ("prepositional-group", "PG"),
        ("conjunction-group", "CG"),
        ("modus-group", "MG"),
        ("special-group", "SG"),
        ("interjection-group", "IG"),
    ),
    BASIC_SEMANTIC: (
        ("select", "SEL"),
        ("suggest", "SUG"),
        ("meet", "MEET"),
        ("utter", "UTTER"),
        ("is", "IS"),
        ("have", "HAVE"),
        ("move", "MOVE"),
        ("aux", "AUX"),
        ("question", "QUEST"),
        ("physical", "PHYS"),
        ("animate", "ANIM"),
        ("abstract", "ABS"),
        ("here", "HERE"),
        ("source", "SRC"),
        ("destination", "DEST"),
        ("location", "LOC"),
        ("time", "TIME"),
        ("negative-evaluation", "NO"),
        ("positive-evaluation", "YES"),
        ("nil", "NIL"),
    ),
    ABSTRACT_SEMANTIC: (
        ("action", "ACT"),
        ("aux-action", "AUX"),
        ("agent", "AGENT"),
        ("object", "OBJ"),
        ("recipient", "RECIP"),
        ("instrument", "INSTR"),
        ("manner", "MANNER"),
        ("time-at", "TM-AT"),
        ("time-from", "TM-FRM"),
        ("time-to", "TM-TO"),
        ("loc-at", "LC-AT"),
        ("loc-from", "LC-FRM"),
        ("loc-to", "LC-TO"),
        ("confirmation", "CONF"),
        ("negation", "NEG"),
        ("question", "QUEST"),
        ("misc", "MISC"),
    ),
}


@dataclass(frozen=True)
class Tagset:
    """An ordered, immutable category inventory.

    ``labels`` is a tuple of (name, abbreviation) pairs; the tuple order fixes
    the vector index of each category.
    """

    kind: str
    labels: tuple[tuple[str, str], ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = [n for n, _ in self.labels]
        abbrevs = [a for _, a in self.labels]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate label names in tagset {self.kind!r}")
        index = {}
        for i, (name, abbrev) in enumerate(self.labels):
            index[abbrev] = i
            index.setdefault(name, i)
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        """Index of a category given its abbreviation or full name."""
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown {self.kind} category {label!r}") from None

    def abbrev(self, i: int) -> str:
        return self.labels[i][1]

    def name(self, i: int) -> str:
        return self.labels[i][0]

    def one_hot(self, label: str) -> np.ndarray:
        v = np.zeros(self.size)
        v[self.index(label)] = 1.0
        return v

    def multi_hot(self, labels) -> np.ndarray:
        v = np.zeros(self.size)
        for label in labels:
            v[self.index(label)] = 1.0
        return v

    @classmethod
    def default(cls, kind: str) -> "Tagset":
        return cls(kind, _DEFAULT_LABELS[kind])

    @classmethod
    def from_file(cls, path, kind: str) -> "Tagset":
        """Load a tagset from a text file: one label per line, in index order.

        Each line is ``abbrev name``; blank lines and ``#`` comments are
        skipped.
        """
        labels = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split(None, 1)
                abbrev = parts[0]
                name = parts[1] if len(parts) > 1 else abbrev
                labels.append((name, abbrev))
        return cls(kind, tuple(labels))

    def to_file(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for name, abbrev in self.labels:
                fh.write(f"{abbrev} {name}\n")


@dataclass(frozen=True)
class TagsetBundle:
    """The four inventories used by one configured system."""

    syn_basic: Tagset
    syn_abstract: Tagset
    sem_basic: Tagset
    sem_abstract: Tagset

    @classmethod
    def default(cls) -> "TagsetBundle":
        return cls(
            Tagset.default(BASIC_SYNTACTIC),
            Tagset.default(ABSTRACT_SYNTACTIC),
            Tagset.default(BASIC_SEMANTIC),
            Tagset.default(ABSTRACT_SEMANTIC),
        )


class CategoryVector:
    """A vector of per-category activations in [0, 1] over one tagset."""

    __slots__ = ("tagset", "values")

    def __init__(self, tagset: Tagset, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (tagset.size,):
            raise ValueError(
                f"expected {tagset.size} activations for {tagset.kind}, "
                f"got {values.shape}"
            )
        if np.any(values < -1e-12) or np.any(values > 1.0 + 1e-12):
            raise ValueError("activations must lie in [0, 1]")
        self.tagset = tagset
        self.values = np.clip(values, 0.0, 1.0)

    def argmax(self) -> int:
        # np.argmax breaks ties toward the lowest index, which we rely on.
        return int(np.argmax(self.values))

    def top_label(self) -> str:
        return self.tagset.abbrev(self.argmax())

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        return f"CategoryVector({self.tagset.kind}, top={self.top_label()})"
