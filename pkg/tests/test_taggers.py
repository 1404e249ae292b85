"""Tagger bundles and phrase assembly."""

import numpy as np
import pytest

from flatspeech.tagsets import CategoryVector, TagsetBundle
from flatspeech.taggers import TokenAnalysis, assemble_phrases


def _token(ts: TagsetBundle, word, syn_abs, sem_abs, boundary, deleted=False):
    return TokenAnalysis(
        word=word,
        syn_basic=CategoryVector(ts.syn_basic, ts.syn_basic.one_hot("N")),
        syn_abstract=CategoryVector(ts.syn_abstract, ts.syn_abstract.one_hot(syn_abs)),
        sem_basic=CategoryVector(ts.sem_basic, ts.sem_basic.one_hot("NIL")),
        sem_abstract=CategoryVector(ts.sem_abstract, ts.sem_abstract.one_hot(sem_abs)),
        boundary=boundary,
        deleted=deleted,
    )


def test_assemble_phrases_splits_at_boundaries():
    ts = TagsetBundle.default()
    tokens = [
        _token(ts, "the", "NG", "MISC", 0.9),
        _token(ts, "meeting", "NG", "OBJ", 0.1),
        _token(ts, "on", "PG", "MISC", 0.8),
        _token(ts, "friday", "PG", "TM-AT", 0.2),
    ]
    phrases = assemble_phrases(tokens)
    assert [(p.start, p.end) for p in phrases] == [(0, 1), (2, 3)]
    # syntactic label from the first token, semantic from the last
    assert phrases[0].syn_label == "NG" and phrases[0].sem_label == "OBJ"
    assert phrases[1].syn_label == "PG" and phrases[1].sem_label == "TM-AT"


def test_assemble_phrases_first_token_always_opens():
    ts = TagsetBundle.default()
    tokens = [_token(ts, "a", "NG", "OBJ", 0.0), _token(ts, "b", "NG", "OBJ", 0.0)]
    assert [(p.start, p.end) for p in assemble_phrases(tokens)] == [(0, 1)]


def test_assemble_phrases_skips_deleted():
    ts = TagsetBundle.default()
    tokens = [
        _token(ts, "uh", "IG", "MISC", 0.9, deleted=True),
        _token(ts, "the", "NG", "MISC", 0.9),
        _token(ts, "meeting", "NG", "OBJ", 0.1),
    ]
    phrases = assemble_phrases(tokens)
    assert [(p.start, p.end) for p in phrases] == [(1, 2)]
    assert assemble_phrases([]) == []


def test_assemble_phrases_threshold():
    ts = TagsetBundle.default()
    tokens = [_token(ts, "a", "NG", "OBJ", 0.9), _token(ts, "b", "PG", "OBJ", 0.6)]
    assert len(assemble_phrases(tokens, threshold=0.5)) == 2
    assert len(assemble_phrases(tokens, threshold=0.7)) == 1


def test_bundle_states_are_isolated(models):
    taggers = models.taggers
    ts = models.tagsets
    amb = models.lexicon.lookup("may")[0]
    a = taggers.fresh_bundle()
    b = taggers.fresh_bundle()
    # advance a twice, b once: the recurrent context must differ afterwards
    a.disambiguate_syn(amb)
    out_a = a.disambiguate_syn(amb)
    out_b = b.disambiguate_syn(amb)
    assert not np.allclose(out_a.values, out_b.values)


def test_bundle_clone_continues_identically(models):
    amb = models.lexicon.lookup("may")[0]
    a = models.taggers.fresh_bundle()
    a.disambiguate_syn(amb)
    c = a.clone()
    assert np.allclose(
        a.disambiguate_syn(amb).values, c.disambiguate_syn(amb).values
    )


def test_bundle_reset(models):
    amb = models.lexicon.lookup("may")[0]
    a = models.taggers.fresh_bundle()
    first = a.disambiguate_syn(amb).values.copy()
    a.disambiguate_syn(amb)
    a.reset()
    assert np.allclose(a.disambiguate_syn(amb).values, first)


def test_disambiguation_resolves_ambiguity_in_context(models):
    # "may" is noun/verb ambiguous; context picks the month or auxiliary reading.
    def last_label(words):
        bundle = models.taggers.fresh_bundle()
        out = None
        for word in words:
            out = bundle.disambiguate_syn(models.lexicon.lookup(word)[0])
        return out.top_label()

    assert last_label(["we", "meet", "in", "may"]) == "N"
    assert last_label(["we", "may"]) == "V"
