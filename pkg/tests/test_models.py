"""Model set bundling and directory serialization."""

import numpy as np
import pytest

from flatspeech.models import (
    ALL_NET_NAMES,
    CORRECTION_NAMES,
    PREDICTOR_NAMES,
    TAGGER_NAMES,
    ModelSet,
)


def test_network_name_partition():
    assert len(ALL_NET_NAMES) == 13
    assert set(ALL_NET_NAMES) == set(TAGGER_NAMES) | set(PREDICTOR_NAMES) | set(CORRECTION_NAMES)
    assert len(set(ALL_NET_NAMES)) == 13


def test_networks_view(models):
    nets = models.networks()
    assert set(nets) == set(ALL_NET_NAMES)
    assert nets["bas-syn-dis"] is models.taggers.bas_syn_dis
    assert nets["word-error"] is models.correction.word_error


def test_save_load_roundtrip(models, models_dir):
    back = ModelSet.load(models_dir)
    assert set(back.lexicon.entries) == set(models.lexicon.entries)
    for ts_name in ("syn_basic", "syn_abstract", "sem_basic", "sem_abstract"):
        assert getattr(back.tagsets, ts_name) == getattr(models.tagsets, ts_name)
    orig = models.networks()
    for name, net in back.networks().items():
        assert np.array_equal(net.w1, orig[name].w1)
        assert np.array_equal(net.w2, orig[name].w2)
        assert net.spec == orig[name].spec


def test_loaded_models_analyze_identically(models, models_dir):
    from flatspeech.analysis import analyze_words

    back = ModelSet.load(models_dir)
    words = ["we", "could", "meet", "on", "friday"]
    a = analyze_words(models, words)
    b = analyze_words(back, words)
    assert a.score.combined == b.score.combined
    for ta, tb in zip(a.tokens, b.tokens):
        assert np.array_equal(ta.syn_basic.values, tb.syn_basic.values)


def test_load_missing_directory(tmp_path):
    with pytest.raises((FileNotFoundError, ValueError, OSError)):
        ModelSet.load(tmp_path / "nope")
