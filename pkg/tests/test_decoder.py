"""Lattice structure, adjacency, normalization and beam decoding."""

import numpy as np
import pytest

from flatspeech.decoder import (
    DecoderConfig,
    WordGraph,
    WordHypothesis,
    connects,
    decode,
    overlaps,
    parse_lattice,
    results_to_dicts,
)


def H(start, end, word, acoustic=1.0):
    return WordHypothesis(start, end, word, acoustic)


def test_hypothesis_validation():
    with pytest.raises(ValueError):
        H(10, 10, "x")
    with pytest.raises(ValueError):
        H(10, 5, "x")
    with pytest.raises(ValueError):
        H(0, 5, "x", acoustic=0.0)


def test_connects_gap_rule():
    a = H(0, 10, "a")
    assert connects(a, H(11, 20, "b"))           # gap 1
    assert not connects(a, H(10, 20, "b"))       # overlap at 10
    assert not connects(a, H(13, 20, "b"))       # gap 3 > max_gap 1
    assert connects(a, H(13, 20, "b"), max_gap=3)
    assert not connects(H(11, 20, "b"), a)       # order matters


def test_overlaps_shares_a_centisecond():
    a = H(0, 10, "a")
    assert overlaps(a, H(10, 20, "b"))
    assert overlaps(a, H(5, 7, "b"))
    assert not overlaps(a, H(11, 20, "b"))
    assert overlaps(a, a)


def test_graph_orders_and_finds_sources():
    hyps = [H(20, 30, "c"), H(0, 10, "a"), H(11, 19, "b"), H(0, 19, "ab")]
    graph = WordGraph(hyps)
    assert [h.word for h in graph.hypotheses] == ["a", "ab", "b", "c"]
    words = {i: h.word for i, h in enumerate(graph.hypotheses)}
    assert {words[i] for i in graph.sources} == {"a", "ab"}
    succ = {
        words[i]: {words[j] for j in graph.successors[i]}
        for i in range(len(graph))
    }
    assert succ == {"a": {"b"}, "b": {"c"}, "ab": {"c"}, "c": set()}


def test_acoustic_normalization_by_overlap_peak():
    graph = WordGraph([H(0, 10, "a", 0.5), H(5, 15, "b", 1.0), H(20, 30, "c", 0.25)])
    by_word = {h.word: graph.normalized[i] for i, h in enumerate(graph.hypotheses)}
    assert by_word["a"] == pytest.approx(0.5)  # peak among overlaps is b's 1.0
    assert by_word["b"] == pytest.approx(1.0)
    assert by_word["c"] == pytest.approx(1.0)  # alone on its stretch


def test_empty_graph_rejected():
    with pytest.raises(ValueError):
        WordGraph([])


def test_decoder_config_validation():
    with pytest.raises(ValueError):
        DecoderConfig(beam=0)
    DecoderConfig(beam=None)


def test_parse_lattice_roundtrip_and_comments():
    lines = ["# header", "", "0 10 hallo 0.9", "11 20 welt 1e-1"]
    graph = parse_lattice(lines)
    assert len(graph) == 2
    assert graph.hypotheses[1].acoustic == pytest.approx(0.1)


def test_parse_lattice_reports_line_numbers():
    with pytest.raises(ValueError, match=r"<lattice>:2"):
        parse_lattice(["0 10 a 0.9", "11 20 b"])
    with pytest.raises(ValueError, match=r"<lattice>:1"):
        parse_lattice(["x 10 a 0.9"])
    with pytest.raises(ValueError, match="no hypotheses"):
        parse_lattice(["# nothing"])


def _chain_lattice(words, rivals=()):
    hyps = []
    for i, word in enumerate(words):
        hyps.append(H(10 * i, 10 * i + 9, word, 0.9))
    for i, word in rivals:
        hyps.append(H(10 * i, 10 * i + 9, word, 0.8))
    return WordGraph(hyps)


def test_decode_single_chain(models):
    words = ["we", "could", "meet", "on", "friday"]
    graph = _chain_lattice(words)
    results = decode(models, graph)
    assert len(results) == 1
    assert results[0].words(graph) == words


def test_decode_ranks_all_full_paths(models):
    graph = _chain_lattice(
        ["we", "could", "meet"], rivals=[(1, "would"), (2, "say")]
    )
    results = decode(models, graph, DecoderConfig(beam=None))
    paths = {tuple(r.words(graph)) for r in results}
    assert len(results) == 4  # 2 choices at slot 1 x 2 at slot 2
    assert paths == {
        ("we", "could", "meet"),
        ("we", "could", "say"),
        ("we", "would", "meet"),
        ("we", "would", "say"),
    }
    scores = [r.score for r in results]
    assert scores == sorted(scores, reverse=True)


def test_beam_results_are_subset_of_exhaustive(models):
    graph = _chain_lattice(
        ["we", "could", "meet", "on", "friday"],
        rivals=[(1, "would"), (2, "say"), (3, "at")],
    )
    full = decode(models, graph, DecoderConfig(beam=None))
    pruned = decode(models, graph, DecoderConfig(beam=2))
    full_by_path = {tuple(r.path): r.score for r in full}
    for r in pruned:
        assert full_by_path[tuple(r.path)] == pytest.approx(r.score, rel=1e-12)


def test_results_are_maximal_paths(models):
    graph = _chain_lattice(["we", "could", "meet"], rivals=[(0, "ähm")])
    results = decode(models, graph, DecoderConfig(beam=None))
    paths = [tuple(r.path) for r in results]
    for p in paths:
        for q in paths:
            assert not (p != q and q[: len(p)] == p), "proper prefix reported as a result"
    for r in results:
        first = graph.hypotheses[r.path[0]]
        assert r.path[0] in graph.sources
        assert not graph.successors[r.path[-1]], "result does not reach a sink"
        for a, b in zip(r.path, r.path[1:]):
            assert b in graph.successors[a]


def test_results_to_dicts_shape(models):
    graph = _chain_lattice(["we", "could"])
    rows = results_to_dicts(decode(models, graph), graph)
    assert rows[0]["rank"] == 1
    assert rows[0]["words"] == "we could"
    assert set(rows[0]) == {"rank", "score", "words", "live_words", "path"}
