"""Synthetic corpus generator, file format and the gold phrase reading."""

import numpy as np
import pytest

from flatspeech.corpus import (
    Corpus,
    GeneratorConfig,
    PAUSE_WORD,
    REPAIR_KINDS,
    build_lexicon,
    generate_corpus,
    gold_phrases,
    split_corpus,
)
from flatspeech.tagsets import TagsetBundle


@pytest.fixture(scope="module")
def corpus():
    return generate_corpus()


def test_default_corpus_size(corpus):
    assert len(corpus) >= 184
    assert corpus.n_tokens >= 2355


def test_generation_is_deterministic():
    a = generate_corpus(GeneratorConfig(n_turns=60, seed=5))
    b = generate_corpus(GeneratorConfig(n_turns=60, seed=5))
    assert a == b


def test_generation_varies_with_seed():
    a = generate_corpus(GeneratorConfig(n_turns=60, seed=5))
    b = generate_corpus(GeneratorConfig(n_turns=60, seed=6))
    assert a != b


def test_gold_tags_come_from_the_inventories(corpus):
    ts = TagsetBundle.default()
    for turn in corpus.turns:
        for tok in turn.tokens:
            ts.syn_basic.index(tok.syn)
            ts.syn_abstract.index(tok.syn_abs)
            ts.sem_basic.index(tok.sem)
            ts.sem_abstract.index(tok.sem_abs)
            assert tok.boundary in (0, 1)
            assert tok.repair is None or tok.repair in REPAIR_KINDS
            assert (tok.repair is not None) == tok.deleted


def test_every_turn_starts_a_phrase(corpus):
    for turn in corpus.turns:
        live = [t for t in turn.tokens if not t.deleted]
        assert live, "turn has no live tokens"
        assert live[0].boundary == 1


def test_deleted_tokens_mark_disfluencies(corpus):
    kinds = {t.repair for turn in corpus.turns for t in turn.tokens if t.deleted}
    # Every disfluency type occurs somewhere in a corpus of this size.
    assert kinds == set(REPAIR_KINDS)


def test_repetition_rate_tracks_config():
    cfg = GeneratorConfig(n_turns=600, seed=11, p_repetition=0.08)
    corpus = generate_corpus(cfg)
    events = opportunities = 0
    for turn in corpus.turns:
        for tok in turn.tokens:
            if tok.syn in ("/", "I"):
                continue
            opportunities += 1
            if tok.deleted and tok.repair == "word-repair":
                events += 1
    rate = events / opportunities
    # word repairs come from repetitions plus substitutions
    expected = cfg.p_repetition + cfg.p_substitution * 0.25  # substitutions hit nouns only
    assert abs(rate - expected) < 0.04


def test_pause_word_constant(corpus):
    pauses = [t for turn in corpus.turns for t in turn.tokens if t.syn == "/"]
    assert pauses
    assert all(t.word == PAUSE_WORD for t in pauses)


def test_file_roundtrip(corpus, tmp_path):
    path = tmp_path / "corpus.txt"
    corpus.save(path)
    assert Corpus.load(path) == corpus


def test_split_corpus(corpus):
    train, test = split_corpus(corpus, 1.0 / 3.0)
    assert len(train) + len(test) == len(corpus)
    assert len(train) == int(np.ceil(len(corpus) / 3))
    assert train.turns[0] == corpus.turns[0]
    assert test.turns[-1] == corpus.turns[-1]


def test_gold_phrases_cover_live_tokens(corpus):
    for turn in corpus.turns:
        phrases = gold_phrases(turn)
        live = [i for i, t in enumerate(turn.tokens) if not t.deleted]
        covered = []
        for start, end, syn_label, sem_label in phrases:
            assert turn.tokens[start].boundary == 1
            covered.extend(i for i in range(start, end + 1) if not turn.tokens[i].deleted)
        assert covered == live


def test_build_lexicon_covers_vocabulary(corpus):
    ts = TagsetBundle.default()
    lexicon = build_lexicon(corpus, ts)
    for turn in corpus.turns:
        for tok in turn.tokens:
            syn, sem, known = lexicon.lookup(tok.word)
            assert known
            # The gold tag is always among the word's listed possibilities.
            assert syn.values[ts.syn_basic.index(tok.syn)] == 1.0
            assert sem.values[ts.sem_basic.index(tok.sem)] == 1.0


def test_build_lexicon_flags(corpus):
    ts = TagsetBundle.default()
    lexicon = build_lexicon(corpus, ts)
    assert lexicon.flags(PAUSE_WORD) == (True, False)
    assert lexicon.flags("ähm") == (False, True)
