"""Count-based n-gram baselines and the exclusion-accuracy metric.

The baselines predict the next symbol of a category sequence from a fixed
window, with additive smoothing and recursive backoff to shorter windows.
Exclusion accuracy measures how safely a predictor can rule categories out:
at level k, the k lowest-scored categories are excluded and a prediction
counts as correct when the true next category survives.
"""

from __future__ import annotations

import numpy as np

BOUNDARY = "<s>"


class NgramModel:
    """Additive-smoothed n-gram with backoff to the unigram distribution."""

    def __init__(self, n: int, alphabet, alpha: float = 0.1):
        if n < 1:
            raise ValueError("n must be at least 1")
        if alpha <= 0.0:
            raise ValueError("smoothing constant must be positive")
        self.n = n
        self.alphabet = tuple(alphabet)
        self.alpha = alpha
        self._index = {sym: i for i, sym in enumerate(self.alphabet)}
        if len(self._index) != len(self.alphabet):
            raise ValueError("alphabet contains duplicates")
        # counts[order][context tuple] -> count vector over the alphabet
        self._counts = {order: {} for order in range(1, n + 1)}
        self._fitted = False

    def fit(self, sequences) -> "NgramModel":
        pad = [BOUNDARY] * (self.n - 1)
        for seq in sequences:
            padded = pad + list(seq)
            for t, sym in enumerate(seq):
                target = self._index[sym]
                for order in range(1, self.n + 1):
                    history = padded[t + self.n - order : t + self.n - 1]
                    table = self._counts[order]
                    context = tuple(history)
                    if context not in table:
                        table[context] = np.zeros(len(self.alphabet))
                    table[context][target] += 1.0
        self._fitted = True
        return self

    def probs(self, prefix) -> np.ndarray:
        """Smoothed next-symbol distribution after ``prefix``.

        The longest observed context wins; unseen contexts back off one order
        at a time down to the unigram distribution.
        """
        if not self._fitted:
            raise RuntimeError("model has not been fitted")
        padded = [BOUNDARY] * (self.n - 1) + list(prefix)
        for order in range(self.n, 0, -1):
            context = tuple(padded[len(padded) - order + 1 :]) if order > 1 else ()
            counts = self._counts[order].get(context)
            if counts is not None:
                total = counts.sum() + self.alpha * len(self.alphabet)
                return (counts + self.alpha) / total
        raise RuntimeError("model was fitted on no data")


class RecurrentPredictor:
    """Adapter presenting a trained recurrent network as a sequence predictor.

    Scores are raw output activations; only their ranking matters for
    exclusion accuracy.
    """

    def __init__(self, net, alphabet):
        self.net = net
        self.alphabet = tuple(alphabet)
        self._index = {sym: i for i, sym in enumerate(self.alphabet)}
        if net.spec.input_size != len(self.alphabet) or net.spec.output_size != len(self.alphabet):
            raise ValueError("network sizes do not match the alphabet")

    def probs(self, prefix) -> np.ndarray:
        if not prefix:
            raise ValueError("recurrent predictor needs at least one context symbol")
        state = self.net.initial_state()
        out = None
        for sym in prefix:
            x = np.zeros(len(self.alphabet))
            x[self._index[sym]] = 1.0
            out, state = self.net.forward(x, state)
        return out


def excluded_categories(scores: np.ndarray, k: int) -> set:
    """Indices of the k lowest-scored categories (ties go to lower indices)."""
    if not 0 <= k < len(scores):
        raise ValueError("exclusion level must lie in [0, alphabet size)")
    order = np.argsort(scores, kind="stable")
    return set(int(i) for i in order[:k])


def exclusion_accuracy(predictor, sequences, k: int, index=None) -> float:
    """Fraction of next-symbol events whose target survives exclusion level k.

    Prediction events are all positions with at least one context symbol, so
    every predictor is scored on exactly the same events.
    """
    if index is None:
        index = {sym: i for i, sym in enumerate(predictor.alphabet)}
    hits = 0
    total = 0
    for seq in sequences:
        seq = list(seq)
        for t in range(1, len(seq)):
            scores = predictor.probs(seq[:t])
            if index[seq[t]] not in excluded_categories(scores, k):
                hits += 1
            total += 1
    if total == 0:
        raise ValueError("no prediction events in the evaluation sequences")
    return hits / total
