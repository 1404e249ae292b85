"""Beam decoding of word lattices into ranked analyzed sequences.

Word hypotheses arrive ordered by end time.  Each hypothesis either starts a
fresh sequence (if nothing in the lattice can precede it) or extends cloned
copies of the compatible active sequences.  Sequences that can never be
extended again are retired: a retired sequence that was never extended is a
maximal path through the lattice and enters the result list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .analysis import AnalyzerConfig, SequenceAnalyzer
from .models import ModelSet


@dataclass(frozen=True, order=True)
class WordHypothesis:
    """One scored word candidate on the time axis (times in centiseconds)."""

    start: int
    end: int
    word: str
    acoustic: float

    def __post_init__(self):
        if self.end <= self.start:
            raise ValueError(f"hypothesis {self.word!r}: end must exceed start")
        if self.acoustic <= 0.0:
            raise ValueError(f"hypothesis {self.word!r}: acoustic score must be positive")


def connects(first: WordHypothesis, second: WordHypothesis, max_gap: int = 1) -> bool:
    """Whether ``second`` may directly follow ``first`` in a sequence."""
    gap = second.start - first.end
    return 1 <= gap <= max_gap


def overlaps(a: WordHypothesis, b: WordHypothesis) -> bool:
    """Whether two hypotheses share at least one centisecond."""
    return a.start <= b.end and b.start <= a.end


class WordGraph:
    """An immutable lattice: hypotheses, adjacency, and normalized acoustics.

    Raw acoustic scores are comparable only among hypotheses covering the same
    stretch of signal, so each score is normalized by the maximum score among
    the hypotheses it overlaps (itself included), yielding values in (0, 1].
    """

    def __init__(self, hypotheses, max_gap: int = 1):
        if max_gap < 1:
            raise ValueError("max_gap must be at least 1")
        self.max_gap = max_gap
        self.hypotheses = sorted(hypotheses, key=lambda h: (h.end, h.start, h.word))
        if not self.hypotheses:
            raise ValueError("empty word graph")
        n = len(self.hypotheses)
        self.successors = [[] for _ in range(n)]
        has_predecessor = [False] * n
        for i, h1 in enumerate(self.hypotheses):
            for j, h2 in enumerate(self.hypotheses):
                if connects(h1, h2, max_gap):
                    self.successors[i].append(j)
                    has_predecessor[j] = True
        self.sources = [i for i in range(n) if not has_predecessor[i]]
        self.normalized = []
        for h in self.hypotheses:
            peak = max(o.acoustic for o in self.hypotheses if overlaps(h, o))
            self.normalized.append(h.acoustic / peak)
        # Earliest start time among hypotheses i..n-1; used to retire sequences.
        self.suffix_min_start = [0] * n
        running = self.hypotheses[-1].start
        for i in range(n - 1, -1, -1):
            running = min(running, self.hypotheses[i].start)
            self.suffix_min_start[i] = running

    def __len__(self) -> int:
        return len(self.hypotheses)


@dataclass(frozen=True)
class DecoderConfig:
    beam: int | None = 10  # None keeps every sequence alive
    analyzer: AnalyzerConfig = field(default_factory=AnalyzerConfig)

    def __post_init__(self):
        if self.beam is not None and self.beam < 1:
            raise ValueError("beam must be at least 1 (or None)")


@dataclass
class DecodedSequence:
    """One complete path through the lattice with its analysis."""

    path: list[int]  # hypothesis indices into WordGraph.hypotheses
    analyzer: SequenceAnalyzer
    extended: bool = False

    @property
    def score(self) -> float:
        return self.analyzer.score.combined

    def words(self, graph: WordGraph):
        return [graph.hypotheses[i].word for i in self.path]


class Decoder:
    """Incremental beam decoder over one word graph."""

    def __init__(self, models: ModelSet, graph: WordGraph, config: DecoderConfig | None = None):
        self.models = models
        self.graph = graph
        self.config = config if config is not None else DecoderConfig()
        self.active: list[DecodedSequence] = []
        self.finished: list[DecodedSequence] = []
        self._next = 0

    def step(self) -> bool:
        """Consume the next hypothesis; returns False when the graph is done."""
        if self._next >= len(self.graph):
            return False
        i = self._next
        hyp = self.graph.hypotheses[i]
        acoustic = self.graph.normalized[i]
        grown = []
        for seq in self.active:
            if connects(self.graph.hypotheses[seq.path[-1]], hyp, self.graph.max_gap):
                branch = seq.analyzer.clone()
                branch.feed(hyp.word, acoustic)
                grown.append(DecodedSequence(seq.path + [i], branch))
                seq.extended = True
        if i in set(self.graph.sources):
            fresh = SequenceAnalyzer(self.models, self.config.analyzer)
            fresh.feed(hyp.word, acoustic)
            grown.append(DecodedSequence([i], fresh))
        self.active.extend(grown)
        self._next += 1
        self._retire()
        self._prune()
        return True

    def _retire(self) -> None:
        """Move sequences that can never be extended out of the active set."""
        if self._next >= len(self.graph):
            horizon = None
        else:
            horizon = self.graph.suffix_min_start[self._next]
        still = []
        for seq in self.active:
            last = self.graph.hypotheses[seq.path[-1]]
            dead = horizon is None or last.end + self.graph.max_gap < horizon
            if not dead:
                still.append(seq)
            elif not seq.extended:
                seq.analyzer.finish()
                self.finished.append(seq)
        self.active = still

    def _prune(self) -> None:
        beam = self.config.beam
        if beam is not None and len(self.active) > beam:
            self.active.sort(key=lambda s: s.score, reverse=True)
            del self.active[beam:]

    def run(self):
        """Decode the whole graph and return sequences ranked best first."""
        while self.step():
            pass
        self._retire()
        self.finished.sort(key=lambda s: (-s.score, s.path))
        return self.finished


def decode(models: ModelSet, graph: WordGraph, config: DecoderConfig | None = None):
    return Decoder(models, graph, config).run()


# ---- lattice file format ---------------------------------------------------
# One hypothesis per line:  <start_cs> <end_cs> <word> <acoustic>
# with '#' comment lines; acoustic scores may use scientific notation.


def parse_lattice(lines, max_gap: int = 1, source: str = "<lattice>") -> WordGraph:
    hypotheses = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"{source}:{lineno}: expected 'start end word acoustic'")
        try:
            hypotheses.append(
                WordHypothesis(int(parts[0]), int(parts[1]), parts[2], float(parts[3]))
            )
        except ValueError as exc:
            raise ValueError(f"{source}:{lineno}: bad hypothesis line: {exc}") from exc
    if not hypotheses:
        raise ValueError(f"{source}: no hypotheses found")
    return WordGraph(hypotheses, max_gap=max_gap)


def load_lattice(path, max_gap: int = 1) -> WordGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_lattice(fh, max_gap=max_gap, source=str(path))


def results_to_dicts(results, graph: WordGraph, limit: int | None = None):
    """Ranked results as plain dicts, ready for JSON or CSV output."""
    rows = []
    for rank, seq in enumerate(results[:limit], 1):
        rows.append(
            {
                "rank": rank,
                "score": seq.score,
                "words": " ".join(seq.words(graph)),
                "live_words": " ".join(seq.analyzer.live_words()),
                "path": " ".join(str(i) for i in seq.path),
            }
        )
    return rows


def results_to_json(results, graph: WordGraph, limit: int | None = None) -> str:
    return json.dumps(results_to_dicts(results, graph, limit), indent=2, sort_keys=True)
