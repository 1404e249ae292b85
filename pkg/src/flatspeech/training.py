"""Dataset extraction and training for the full network ensemble.

Thirteen networks are trained from one annotated corpus: five recurrent
taggers, two recurrent next-category predictors, four feedforward equality
judges and two feedforward repair combiners.  The combiners consume features
produced by the already-trained equality judges, so they are trained last.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correction import CorrectionNets, category_eq, lex_word_eq, phrase_pair_features
from .corpus import Corpus, split_corpus, build_lexicon
from .lexicon import Lexicon
from .models import ALL_NET_NAMES, ModelSet
from .nnet import Network, NetworkSpec, TrainConfig, train
from .tagsets import CategoryVector, TagsetBundle
from .taggers import TaggerNets, TokenAnalysis


@dataclass(frozen=True)
class TrainSetup:
    train_fraction: float = 1.0 / 3.0
    epochs: int = 3000
    learning_rate: float = 0.001
    hidden: int = 14
    seed: int = 42
    unknown_rate: float = 0.05  # simulate out-of-lexicon words during training
    unknown_rate_downstream: float = 0.10  # same, for nets fed by the disambiguators
    eq_pairs: int = 2000  # balanced pairs per equality dataset


def _net_specs(tagsets: TagsetBundle, setup: TrainSetup):
    syn, sem = tagsets.syn_basic.size, tagsets.sem_basic.size
    asyn, asem = tagsets.syn_abstract.size, tagsets.sem_abstract.size
    h = setup.hidden
    layout = {
        "bas-syn-dis": (syn, syn, True),
        "bas-sem-dis": (sem, sem, True),
        "abs-syn-cat": (syn, asyn, True),
        "abs-sem-cat": (sem, asem, True),
        "phrase-start": (syn, 2, True),
        "bas-syn-pre": (syn, syn, True),
        "bas-sem-pre": (sem, sem, True),
        "bas-syn-eq": (2 * syn, 2, False),
        "bas-sem-eq": (2 * sem, 2, False),
        "abs-syn-eq": (2 * asyn, 2, False),
        "abs-sem-eq": (2 * asem, 2, False),
        "word-error": (3, 2, False),
        "phrase-error": (3, 2, False),
    }
    specs = {}
    for idx, name in enumerate(ALL_NET_NAMES):
        nin, nout, rec = layout[name]
        specs[name] = NetworkSpec(nin, h, nout, recurrent=rec, seed=setup.seed + idx)
    return specs


# ---- sequence datasets -------------------------------------------------


def tagger_datasets(turns, lexicon: Lexicon, tagsets: TagsetBundle, setup: TrainSetup, rng):
    """Training sequences for the disambiguators and next-category predictors.

    Disambiguator inputs come from the lexicon, occasionally replaced by the
    unknown-word default so the networks learn to lean on context; predictor
    sequences are gold one-hots.
    """
    syn_ts, sem_ts = tagsets.syn_basic, tagsets.sem_basic
    data = {name: [] for name in ("bas-syn-dis", "bas-sem-dis", "bas-syn-pre", "bas-sem-pre")}
    for turn in turns:
        syn_dis, sem_dis = [], []
        syn_hots, sem_hots = [], []
        for tok in turn.tokens:
            syn_in, sem_in, _ = lexicon.lookup(tok.word)
            if rng.random() < setup.unknown_rate:
                syn_in = CategoryVector(syn_ts, lexicon.default_syn)
                sem_in = CategoryVector(sem_ts, lexicon.default_sem)
            syn_hot = syn_ts.one_hot(tok.syn)
            sem_hot = sem_ts.one_hot(tok.sem)
            syn_hots.append(syn_hot)
            sem_hots.append(sem_hot)
            syn_dis.append((syn_in.values, syn_hot))
            sem_dis.append((sem_in.values, sem_hot))
        data["bas-syn-dis"].append(syn_dis)
        data["bas-sem-dis"].append(sem_dis)
        if len(turn.tokens) >= 2:
            data["bas-syn-pre"].append(
                [(syn_hots[i], syn_hots[i + 1]) for i in range(len(syn_hots) - 1)]
            )
            data["bas-sem-pre"].append(
                [(sem_hots[i], sem_hots[i + 1]) for i in range(len(sem_hots) - 1)]
            )
    return data


def downstream_datasets(turns, lexicon: Lexicon, tagsets: TagsetBundle, dis_nets, setup: TrainSetup, rng):
    """Training sequences for the abstraction and phrase-boundary networks.

    Inputs are gold one-hots except at simulated unknown-word positions, where
    they are the trained disambiguators' soft outputs for the unknown-word
    default — exactly what those networks receive at run time when a word is
    missing from the lexicon.
    """
    syn_ts, sem_ts = tagsets.syn_basic, tagsets.sem_basic
    data = {"abs-syn-cat": [], "abs-sem-cat": [], "phrase-start": []}
    for turn in turns:
        unknown = rng.random(len(turn.tokens)) < setup.unknown_rate_downstream
        syn_ins, sem_ins = [], []
        for tok, unk in zip(turn.tokens, unknown):
            if unk:
                syn_ins.append(lexicon.default_syn)
                sem_ins.append(lexicon.default_sem)
            else:
                syn_amb, sem_amb, _ = lexicon.lookup(tok.word)
                syn_ins.append(syn_amb.values)
                sem_ins.append(sem_amb.values)
        syn_soft = dis_nets["bas-syn-dis"].run_sequence(syn_ins)
        sem_soft = dis_nets["bas-sem-dis"].run_sequence(sem_ins)
        asyn, asem, bound = [], [], []
        for i, tok in enumerate(turn.tokens):
            syn_vec = syn_soft[i] if unknown[i] else syn_ts.one_hot(tok.syn)
            sem_vec = sem_soft[i] if unknown[i] else sem_ts.one_hot(tok.sem)
            asyn.append((syn_vec, tagsets.syn_abstract.one_hot(tok.syn_abs)))
            asem.append((sem_vec, tagsets.sem_abstract.one_hot(tok.sem_abs)))
            b = float(tok.boundary)
            bound.append((syn_vec, np.array([b, 1.0 - b])))
        data["abs-syn-cat"].append(asyn)
        data["abs-sem-cat"].append(asem)
        data["phrase-start"].append(bound)
    return data


def equality_dataset(pool, pairs: int, rng):
    """Balanced same/different pairs drawn from real activation vectors.

    ``pool`` is a list of (activation vector, gold category index); using the
    taggers' actual outputs keeps the equality judges calibrated to the
    activations they will compare at run time.
    """
    by_cat = {}
    for values, idx in pool:
        by_cat.setdefault(idx, []).append(values)
    cats = sorted(c for c in by_cat if len(by_cat[c]) >= 2)
    if len(cats) < 2:
        raise ValueError("equality dataset needs at least two populated categories")

    def draw(cat):
        members = by_cat[cat]
        return members[int(rng.integers(len(members)))]

    data = []
    for _ in range(pairs):
        same = cats[int(rng.integers(len(cats)))]
        data.append([(np.concatenate([draw(same), draw(same)]), np.array([1.0, 0.0]))])
        a, b = rng.choice(len(cats), size=2, replace=False)
        data.append(
            [(np.concatenate([draw(cats[int(a)]), draw(cats[int(b)])]), np.array([0.0, 1.0]))]
        )
    return data


def activation_pools(turns, analyses_by_turn, tagsets: TagsetBundle):
    """(vector, gold index) pools per level from soft analyses of the turns."""
    pools = {"bas-syn-eq": [], "bas-sem-eq": [], "abs-syn-eq": [], "abs-sem-eq": []}
    for turn, analyses in zip(turns, analyses_by_turn):
        for tok, ana in zip(turn.tokens, analyses):
            pools["bas-syn-eq"].append((ana.syn_basic.values, tagsets.syn_basic.index(tok.syn)))
            pools["bas-sem-eq"].append((ana.sem_basic.values, tagsets.sem_basic.index(tok.sem)))
            pools["abs-syn-eq"].append(
                (ana.syn_abstract.values, tagsets.syn_abstract.index(tok.syn_abs))
            )
            pools["abs-sem-eq"].append(
                (ana.sem_abstract.values, tagsets.sem_abstract.index(tok.sem_abs))
            )
    return pools


# ---- combiner feature extraction ---------------------------------------
# Pair indices refer to positions in the raw turn; features are computed on
# the trained taggers' soft analyses so the combiners train on exactly the
# activation patterns they will see at run time.


def word_error_pairs(turn):
    """((earlier index, later index), is_repair) over adjacent content words."""
    indices = [i for i, t in enumerate(turn.tokens) if t.syn not in ("/", "I")]
    pairs = []
    for a, b in zip(indices, indices[1:]):
        tok = turn.tokens[a]
        pairs.append(((a, b), tok.deleted and tok.repair == "word-repair"))
    return pairs


def phrase_error_pairs(turn):
    """((earlier index span, later index span), is_restart) phrase pairs."""
    stream = [i for i, t in enumerate(turn.tokens) if t.syn not in ("/", "I")]
    tokens = turn.tokens
    pairs = []
    # Positives: a run of phrase-restart tokens against the live phrase after it.
    i = 0
    while i < len(stream):
        if tokens[stream[i]].deleted and tokens[stream[i]].repair == "phrase-repair":
            j = i
            while j < len(stream) and tokens[stream[j]].deleted and tokens[stream[j]].repair == "phrase-repair":
                j += 1
            k = j
            while k + 1 < len(stream) and not tokens[stream[k + 1]].boundary:
                k += 1
            if j < len(stream):
                pairs.append(((stream[i:j], stream[j : k + 1]), True))
            i = j
        else:
            i += 1
    # Negatives: adjacent live phrases.
    live = [i for i in stream if not tokens[i].deleted]
    spans = []
    for i in live:
        if not spans or tokens[i].boundary:
            spans.append([i])
        else:
            spans[-1].append(i)
    for a, b in zip(spans, spans[1:]):
        pairs.append(((a, b), False))
    return pairs


def soft_analyses(turn, taggers, lexicon: Lexicon):
    """Run the trained taggers over a turn's raw word stream."""
    bundle = taggers.fresh_bundle()
    analyses = []
    for tok in turn.tokens:
        syn_amb, sem_amb, _ = lexicon.lookup(tok.word)
        syn = bundle.disambiguate_syn(syn_amb)
        sem = bundle.disambiguate_sem(sem_amb)
        analyses.append(
            TokenAnalysis(
                word=tok.word,
                syn_basic=syn,
                syn_abstract=bundle.abstract_syn(syn),
                sem_basic=sem,
                sem_abstract=bundle.abstract_sem(sem),
                boundary=bundle.phrase_start(syn),
            )
        )
    return analyses


def word_error_features(pair, analyses, eq_nets) -> np.ndarray:
    a, b = (analyses[i] for i in pair)
    return np.array(
        [
            lex_word_eq(a.word, b.word),
            category_eq(a.syn_basic, b.syn_basic, eq_nets["bas-syn-eq"]),
            category_eq(a.sem_basic, b.sem_basic, eq_nets["bas-sem-eq"]),
        ]
    )


def phrase_error_features(pair, analyses, correction: CorrectionNets) -> np.ndarray:
    first, second = ([analyses[i] for i in span] for span in pair)
    return np.array(phrase_pair_features(first, second, correction))


def _balanced(samples, rng):
    """Oversample the minority class to a 1:1 ratio (length-1 sequences)."""
    pos = [s for s, label in samples if label]
    neg = [s for s, label in samples if not label]
    if not pos or not neg:
        raise ValueError("combiner dataset needs both classes")
    minority, majority = (pos, neg) if len(pos) < len(neg) else (neg, pos)
    extra = [minority[int(rng.integers(len(minority)))] for _ in range(len(majority) - len(minority))]
    data = []
    for x, label in samples:
        data.append([(x, np.array([1.0, 0.0]) if label else np.array([0.0, 1.0]))])
    for x in extra:
        target = np.array([1.0, 0.0]) if minority is pos else np.array([0.0, 1.0])
        data.append([(x, target)])
    return data


# ---- full pipeline ------------------------------------------------------


def train_all(corpus: Corpus, tagsets: TagsetBundle, setup: TrainSetup | None = None):
    """Train every network; returns (model set, final mean squared errors)."""
    setup = setup if setup is not None else TrainSetup()
    train_part, _ = split_corpus(corpus, setup.train_fraction)
    lexicon = build_lexicon(corpus, tagsets)
    rng = np.random.default_rng(setup.seed)
    specs = _net_specs(tagsets, setup)

    def fit(name, data):
        idx = ALL_NET_NAMES.index(name)
        cfg = TrainConfig(setup.epochs, setup.learning_rate, seed=setup.seed + 100 + idx)
        net, errs = train(specs[name], data, cfg, meta={"name": name})
        nets[name] = net
        errors[name] = float(errs[-1])

    nets = {}
    errors = {}
    datasets = tagger_datasets(train_part.turns, lexicon, tagsets, setup, rng)
    for name in ("bas-syn-dis", "bas-sem-dis", "bas-syn-pre", "bas-sem-pre"):
        fit(name, datasets[name])
    downstream = downstream_datasets(train_part.turns, lexicon, tagsets, nets, setup, rng)
    for name in ("abs-syn-cat", "abs-sem-cat", "phrase-start"):
        fit(name, downstream[name])

    taggers = TaggerNets(
        nets["bas-syn-dis"],
        nets["bas-sem-dis"],
        nets["abs-syn-cat"],
        nets["abs-sem-cat"],
        nets["phrase-start"],
        tagsets,
    )
    analyses_by_turn = [soft_analyses(turn, taggers, lexicon) for turn in train_part.turns]
    pools = activation_pools(train_part.turns, analyses_by_turn, tagsets)
    rng_eq = np.random.default_rng(setup.seed + 1000)
    for name in ("bas-syn-eq", "bas-sem-eq", "abs-syn-eq", "abs-sem-eq"):
        fit(name, equality_dataset(pools[name], setup.eq_pairs, rng_eq))

    eq_probe = CorrectionNets(
        nets["bas-syn-eq"],
        nets["bas-sem-eq"],
        nets["abs-syn-eq"],
        nets["abs-sem-eq"],
        Network.initial(specs["word-error"]),
        Network.initial(specs["phrase-error"]),
        tagsets,
    )
    word_samples = []
    phrase_samples = []
    for turn, analyses in zip(train_part.turns, analyses_by_turn):
        word_samples.extend(
            (word_error_features(pair, analyses, nets), label)
            for pair, label in word_error_pairs(turn)
        )
        phrase_samples.extend(
            (phrase_error_features(pair, analyses, eq_probe), label)
            for pair, label in phrase_error_pairs(turn)
        )
    rng_combine = np.random.default_rng(setup.seed + 2000)
    fit("word-error", _balanced(word_samples, rng_combine))
    fit("phrase-error", _balanced(phrase_samples, rng_combine))

    return ModelSet.from_networks(tagsets, lexicon, nets), errors
