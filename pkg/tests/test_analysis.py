"""Incremental sequence analyzer: tagging, scoring, cloning, repairs."""

import pytest

from flatspeech.analysis import AnalyzerConfig, SequenceAnalyzer, analyze_words
from flatspeech.corpus import PAUSE_WORD

WORDS = ["we", "could", "meet", "on", "friday"]


def test_feed_produces_full_analysis(models):
    analyzer = SequenceAnalyzer(models)
    for word in WORDS:
        tok = analyzer.feed(word)
        assert tok.word == word
        for vec in (tok.syn_basic, tok.syn_abstract, tok.sem_basic, tok.sem_abstract):
            assert vec.values.min() >= 0.0 and vec.values.max() <= 1.0
        assert 0.0 <= tok.boundary <= 1.0
    assert len(analyzer) == len(WORDS)
    assert analyzer.words() == WORDS


def test_score_tracks_length_and_bounds(models):
    analyzer = SequenceAnalyzer(models)
    for word in WORDS:
        analyzer.feed(word, acoustic=0.9)
    score = analyzer.score
    assert len(score) == len(WORDS)
    assert all(a == 0.9 for a in score.acoustic)
    assert score.syntactic[0] == 1.0 and score.semantic[0] == 1.0
    assert 0.0 <= score.combined <= 1.0


def test_knowledge_source_toggles(models):
    plain = analyze_words(models, WORDS, AnalyzerConfig(use_syn=False, use_sem=False))
    assert all(v == 1.0 for v in plain.score.syntactic)
    assert all(v == 1.0 for v in plain.score.semantic)
    # acoustics all 1.0 and both sources off: combined score is exactly 1
    assert plain.score.combined == 1.0


def test_clone_is_independent(models):
    parent = SequenceAnalyzer(models)
    for word in WORDS[:2]:
        parent.feed(word)
    branch = parent.clone()
    branch.feed(WORDS[2])
    assert len(parent) == 2 and len(branch) == 3
    assert parent.score.combined != branch.score.combined
    # the parent can still be extended with a different word
    parent.feed("propose")
    assert parent.words()[-1] == "propose"


def test_clone_preserves_recurrent_context(models):
    parent = SequenceAnalyzer(models)
    for word in WORDS[:3]:
        parent.feed(word)
    a = parent.clone()
    b = parent.clone()
    ta = a.feed(WORDS[3])
    tb = b.feed(WORDS[3])
    assert ta.syn_basic.values.tolist() == tb.syn_basic.values.tolist()
    assert a.score.combined == b.score.combined


def test_finished_sequence_rejects_input(models):
    analyzer = analyze_words(models, WORDS)
    with pytest.raises(RuntimeError):
        analyzer.feed("termin")


def test_pause_is_marked_deleted(models):
    analyzer = analyze_words(models, ["we", "could", PAUSE_WORD, "meet"])
    assert analyzer.tokens[2].deleted
    assert analyzer.tokens[2].repair_kind == "pause"
    assert analyzer.live_words() == ["we", "could", "meet"]
    assert [d.kind for d in analyzer.repairs] == ["pause"]


def test_repairs_disabled_keeps_everything(models):
    analyzer = analyze_words(
        models, ["ähm", "we", "we", "could"], AnalyzerConfig(repairs=False)
    )
    assert not any(t.deleted for t in analyzer.tokens)
    assert analyzer.repairs == []


def test_phrases_cover_live_tokens(models):
    analyzer = analyze_words(models, ["ähm"] + WORDS)
    phrases = analyzer.phrases()
    assert phrases
    covered = []
    for p in phrases:
        assert p.start <= p.end
        covered.extend(
            i for i in range(p.start, p.end + 1) if not analyzer.tokens[i].deleted
        )
    live = [i for i, t in enumerate(analyzer.tokens) if not t.deleted]
    assert covered == live


def test_incremental_equals_batch(models):
    batch = analyze_words(models, WORDS)
    inc = SequenceAnalyzer(models)
    for word in WORDS:
        inc.feed(word)
    inc.finish()
    assert batch.score.combined == inc.score.combined
    for a, b in zip(batch.tokens, inc.tokens):
        assert a.syn_basic.values.tolist() == b.syn_basic.values.tolist()
        assert a.deleted == b.deleted
