"""Shared fixtures: the reference corpus and one fully trained model set.

Training all thirteen networks takes a minute or two, so the trained models
are session-scoped and shared by every test that needs them.
"""

import pytest

from flatspeech.corpus import generate_corpus, split_corpus
from flatspeech.models import ModelSet
from flatspeech.tagsets import TagsetBundle
from flatspeech.training import TrainSetup, train_all


@pytest.fixture(scope="session")
def tagsets():
    return TagsetBundle.default()


@pytest.fixture(scope="session")
def reference_corpus():
    return generate_corpus()


@pytest.fixture(scope="session")
def reference_split(reference_corpus):
    return split_corpus(reference_corpus, TrainSetup.train_fraction)


@pytest.fixture(scope="session")
def trained(reference_corpus, tagsets):
    """(model set, final training errors) of the reference training run."""
    return train_all(reference_corpus, tagsets, TrainSetup())


@pytest.fixture(scope="session")
def models(trained):
    return trained[0]


@pytest.fixture(scope="session")
def models_dir(models, tmp_path_factory):
    """The trained models saved to disk, for CLI tests and load/save checks."""
    path = tmp_path_factory.mktemp("models")
    models.save(path)
    return path


@pytest.fixture(scope="session")
def corpus_file(reference_corpus, tmp_path_factory):
    path = tmp_path_factory.mktemp("corpus") / "corpus.txt"
    reference_corpus.save(path)
    return path


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running end-to-end test")
