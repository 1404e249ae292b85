"""Word lexicon mapping surface strings to ambiguous category possibility vectors.

Entries are multi-hot over the basic syntactic and basic semantic inventories.
Unknown words fall back to frequency-normalized default vectors so lookup is
total: any string yields usable input vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tagsets import CategoryVector, Tagset, TagsetBundle


def normalize_word(word: str) -> str:
    return word.strip().lower()


@dataclass
class LexiconEntry:
    word: str
    syn: np.ndarray  # multi-hot over basic syntactic
    sem: np.ndarray  # multi-hot over basic semantic
    is_pause: bool = False
    is_interjection: bool = False

    def validate(self, syn_tagset: Tagset, sem_tagset: Tagset) -> None:
        if self.syn.shape != (syn_tagset.size,) or self.sem.shape != (sem_tagset.size,):
            raise ValueError(f"entry {self.word!r}: vector size mismatch")
        if not self.syn.any() or not self.sem.any():
            raise ValueError(f"entry {self.word!r}: needs at least one category per level")
        if self.is_pause and self.syn[syn_tagset.index("/")] == 0.0:
            raise ValueError(f"entry {self.word!r}: pause flag without pause category")
        if self.is_interjection and self.syn[syn_tagset.index("I")] == 0.0:
            raise ValueError(f"entry {self.word!r}: interjection flag without interjection category")


class Lexicon:
    """Immutable after construction; safe for concurrent reads.

    ``weighted=True`` normalizes ambiguous possibility vectors to sum 1 instead
    of the default binary multi-hot coding.
    """

    def __init__(self, entries, syn_tagset: Tagset, sem_tagset: Tagset, weighted: bool = False):
        self.syn_tagset = syn_tagset
        self.sem_tagset = sem_tagset
        self.weighted = weighted
        self.entries: dict[str, LexiconEntry] = {}
        for entry in entries:
            entry.validate(syn_tagset, sem_tagset)
            self.entries[normalize_word(entry.word)] = entry
        self.default_syn, self.default_sem = self._compute_defaults()

    def _compute_defaults(self):
        if not self.entries:
            raise ValueError("empty lexicon")
        syn = np.zeros(self.syn_tagset.size)
        sem = np.zeros(self.sem_tagset.size)
        for entry in self.entries.values():
            syn += entry.syn > 0
            sem += entry.sem > 0
        return syn / syn.sum(), sem / sem.sum()

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return normalize_word(word) in self.entries

    def lookup(self, word: str):
        """Return (syn vector, sem vector, known) for any string; never fails."""
        entry = self.entries.get(normalize_word(word))
        if entry is None:
            return (
                CategoryVector(self.syn_tagset, self.default_syn),
                CategoryVector(self.sem_tagset, self.default_sem),
                False,
            )
        syn, sem = entry.syn, entry.sem
        if self.weighted:
            syn = syn / syn.sum()
            sem = sem / sem.sum()
        return (
            CategoryVector(self.syn_tagset, syn),
            CategoryVector(self.sem_tagset, sem),
            True,
        )

    def flags(self, word: str):
        """(is_pause, is_interjection) for a word; unknown words are neither."""
        entry = self.entries.get(normalize_word(word))
        if entry is None:
            return False, False
        return entry.is_pause, entry.is_interjection

    def ablate(self, fraction: float, seed: int) -> "Lexicon":
        """Copy with floor(fraction * N) entries removed, chosen by ``seed``.

        Default vectors are recomputed from the survivors.
        """
        if not 0.0 <= fraction <= 1.0:
            raise ValueError("fraction must lie in [0, 1]")
        words = sorted(self.entries)
        n_remove = int(fraction * len(words))
        rng = np.random.default_rng(seed)
        removed = set(rng.choice(len(words), size=n_remove, replace=False).tolist())
        survivors = [self.entries[w] for i, w in enumerate(words) if i not in removed]
        return Lexicon(survivors, self.syn_tagset, self.sem_tagset, weighted=self.weighted)

    # ---- file format -------------------------------------------------------
    # One entry per line:  word | SYN: N,V | SEM: TIME | FLAGS: interjection
    # using the category abbreviations; '#' starts a comment line.

    @classmethod
    def from_file(cls, path, tagsets: TagsetBundle, weighted: bool = False) -> "Lexicon":
        entries = []
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    entries.append(_parse_entry(line, tagsets))
                except (KeyError, ValueError, IndexError) as exc:
                    raise ValueError(f"{path}:{lineno}: bad lexicon line: {exc}") from exc
        return cls(entries, tagsets.syn_basic, tagsets.sem_basic, weighted=weighted)

    def to_file(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# word | SYN: categories | SEM: categories [| FLAGS: ...]\n")
            for word in sorted(self.entries):
                entry = self.entries[word]
                syn = ",".join(
                    self.syn_tagset.abbrev(i) for i in np.flatnonzero(entry.syn)
                )
                sem = ",".join(
                    self.sem_tagset.abbrev(i) for i in np.flatnonzero(entry.sem)
                )
                flags = []
                if entry.is_pause:
                    flags.append("pause")
                if entry.is_interjection:
                    flags.append("interjection")
                line = f"{word} | SYN: {syn} | SEM: {sem}"
                if flags:
                    line += " | FLAGS: " + ",".join(flags)
                fh.write(line + "\n")


def _parse_entry(line: str, tagsets: TagsetBundle) -> LexiconEntry:
    fields = [f.strip() for f in line.split("|")]
    word = normalize_word(fields[0])
    if not word:
        raise ValueError("empty word")
    syn = sem = None
    is_pause = is_interjection = False
    for f in fields[1:]:
        key, _, value = f.partition(":")
        key = key.strip().upper()
        cats = [c.strip() for c in value.split(",") if c.strip()]
        if key == "SYN":
            syn = tagsets.syn_basic.multi_hot(cats)
        elif key == "SEM":
            sem = tagsets.sem_basic.multi_hot(cats)
        elif key == "FLAGS":
            for flag in cats:
                if flag == "pause":
                    is_pause = True
                elif flag == "interjection":
                    is_interjection = True
                else:
                    raise ValueError(f"unknown flag {flag!r}")
        else:
            raise ValueError(f"unknown field {key!r}")
    if syn is None or sem is None:
        raise ValueError("entry needs SYN and SEM fields")
    return LexiconEntry(word, syn, sem, is_pause, is_interjection)
