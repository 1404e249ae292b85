"""Delay prediction task and noisy-lattice construction."""

import numpy as np
import pytest

from flatspeech.experiments import (
    DelayTaskConfig,
    NoisyLatticeConfig,
    OptimalDelayPredictor,
    REFERENCE_LATTICE_BEST,
    make_delay_task,
    make_noisy_lattice,
    reference_lattice,
)


def test_delay_task_structure():
    cfg = DelayTaskConfig()
    task = make_delay_task(cfg)
    assert len(task.alphabet) == cfg.n_cues + cfg.n_fillers
    assert len(task.train) == cfg.n_train and len(task.test) == cfg.n_test
    cues = set(task.alphabet[: cfg.n_cues])
    fillers = set(task.alphabet[cfg.n_cues :])
    assert set(task.mapping) == cues and set(task.mapping.values()) <= cues
    for seq in task.train + task.test:
        assert len(seq) == 4 * cfg.frames_per_sequence
        for f in range(cfg.frames_per_sequence):
            cue, f1, f2, resolution = seq[4 * f : 4 * f + 4]
            assert cue in cues and f1 in fillers and f2 in fillers
            assert resolution == task.mapping[cue]


def test_delay_task_deterministic():
    assert make_delay_task().train == make_delay_task().train
    assert make_delay_task(DelayTaskConfig(seed=1)).train != make_delay_task().train


def test_optimal_predictor_knows_the_process():
    task = make_delay_task()
    cfg = task.config
    optimal = OptimalDelayPredictor(task)
    seq = task.test[0]
    index = {sym: i for i, sym in enumerate(task.alphabet)}
    # position 3: point mass on the resolution of the cue three steps back
    p = optimal.probs(seq[:3])
    assert p[index[task.mapping[seq[0]]]] == 1.0
    assert p.sum() == pytest.approx(1.0)
    # positions 1 and 2: uniform over fillers
    p = optimal.probs(seq[:1])
    fillers = task.alphabet[cfg.n_cues :]
    assert p[index[fillers[0]]] == pytest.approx(1.0 / len(fillers))
    assert p[index[seq[0]]] == 0.0
    # frame boundary: uniform over cues
    p = optimal.probs(seq[:4])
    assert p[index[task.alphabet[0]]] == pytest.approx(1.0 / cfg.n_cues)


def test_noisy_lattice_slots_and_rivals(models, reference_split):
    _, test = reference_split
    cfg = NoisyLatticeConfig(p_distractor=1.0, seed=3)
    rng = np.random.default_rng(cfg.seed)
    turn = next(t for t in test.turns if len([x for x in t.tokens if not x.deleted]) >= 4)
    live = [t for t in turn.tokens if not t.deleted]
    graph, reference = make_noisy_lattice(live, models.lexicon, cfg, rng)
    assert reference == [t.word for t in live]
    # every slot contains the reference word plus exactly one rival
    assert len(graph) == 2 * len(live)
    by_slot = {}
    for h in graph.hypotheses:
        by_slot.setdefault(h.start, []).append(h)
    assert len(by_slot) == len(live)
    syn_ts = models.lexicon.syn_tagset
    sem_ts = models.lexicon.sem_tagset
    for tok in live:
        slot = by_slot[cfg.slot_width * live.index(tok)]
        words = {h.word for h in slot}
        assert tok.word in words
        (rival,) = words - {tok.word}
        entry = models.lexicon.entries[rival]
        # a rival contradicts the reference word at some analysis level
        assert (
            not entry.syn[syn_ts.index(tok.syn)]
            or not entry.sem[sem_ts.index(tok.sem)]
        )


def test_reference_lattice_shape():
    graph = reference_lattice()
    assert len(graph) == 14
    assert len(REFERENCE_LATTICE_BEST) == 9
    words = {h.word for h in graph.hypotheses}
    assert set(REFERENCE_LATTICE_BEST) <= words
    assert len(graph.sources) >= 1
