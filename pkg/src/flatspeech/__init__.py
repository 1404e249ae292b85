"""Flat multi-level analysis of spoken-language word streams.

Incremental lattice decoding with learned syntactic/semantic plausibilities,
four-level flat tagging by simple recurrent networks, and learned repair of
spontaneous-speech disfluencies.
"""

from .analysis import AnalyzerConfig, SequenceAnalyzer, analyze_words
from .corpus import Corpus, GeneratorConfig, generate_corpus, split_corpus, build_lexicon
from .decoder import (
    DecoderConfig,
    WordGraph,
    WordHypothesis,
    decode,
    load_lattice,
    parse_lattice,
)
from .lexicon import Lexicon, LexiconEntry
from .models import ModelSet
from .nnet import Network, NetworkSpec, TrainConfig, train
from .tagsets import CategoryVector, Tagset, TagsetBundle
from .training import TrainSetup, train_all

__version__ = "0.1.0"

__all__ = [
    "AnalyzerConfig",
    "SequenceAnalyzer",
    "analyze_words",
    "Corpus",
    "GeneratorConfig",
    "generate_corpus",
    "split_corpus",
    "build_lexicon",
    "DecoderConfig",
    "WordGraph",
    "WordHypothesis",
    "decode",
    "load_lattice",
    "parse_lattice",
    "Lexicon",
    "LexiconEntry",
    "ModelSet",
    "Network",
    "NetworkSpec",
    "TrainConfig",
    "train",
    "CategoryVector",
    "Tagset",
    "TagsetBundle",
    "TrainSetup",
    "train_all",
]
