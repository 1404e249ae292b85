"""Feedforward and simple-recurrent network engine.

Logistic units on hidden and output layers, sum-of-squared-error loss, online
gradient descent with one weight update per training sequence. Recurrent
networks carry an Elman-style context layer (a copy of the previous hidden
activation); gradients are propagated back through the stored context chain of
each sequence.

The training inner loop is compiled with numba; everything else is plain
numpy.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

INIT_CONTEXT = 0.5  # neutral mid-range context at every sequence start
INIT_WEIGHT_RANGE = 0.1

_FORMAT_TAG = "flatspeech-net"
_FORMAT_VERSION = 1


@dataclass(frozen=True)
class NetworkSpec:
    input_size: int
    hidden_size: int
    output_size: int
    recurrent: bool = False
    seed: int = 0

    def __post_init__(self):
        for name in ("input_size", "hidden_size", "output_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")

    @property
    def context_size(self) -> int:
        return self.hidden_size if self.recurrent else 0


@dataclass
class SequenceState:
    """Per-decoding-context state: the copied previous hidden activation."""

    context: np.ndarray

    def copy(self) -> "SequenceState":
        return SequenceState(self.context.copy())


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 3000
    learning_rate: float = 0.001
    seed: int = 0
    shuffle: bool = True

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning-rate must be > 0")


class Network:
    """A trained weight set; immutable by convention after training."""

    def __init__(self, spec: NetworkSpec, w1: np.ndarray, w2: np.ndarray, meta=None):
        expect_w1 = (spec.hidden_size, spec.input_size + spec.context_size + 1)
        expect_w2 = (spec.output_size, spec.hidden_size + 1)
        if w1.shape != expect_w1:
            raise ValueError(f"w1 shape {w1.shape} != expected {expect_w1}")
        if w2.shape != expect_w2:
            raise ValueError(f"w2 shape {w2.shape} != expected {expect_w2}")
        self.spec = spec
        self.w1 = w1
        self.w2 = w2
        self.meta = dict(meta or {})

    @classmethod
    def initial(cls, spec: NetworkSpec, meta=None) -> "Network":
        rng = np.random.default_rng(spec.seed)
        w1 = rng.uniform(
            -INIT_WEIGHT_RANGE,
            INIT_WEIGHT_RANGE,
            (spec.hidden_size, spec.input_size + spec.context_size + 1),
        )
        w2 = rng.uniform(
            -INIT_WEIGHT_RANGE, INIT_WEIGHT_RANGE, (spec.output_size, spec.hidden_size + 1)
        )
        return cls(spec, w1, w2, meta)

    def initial_state(self) -> SequenceState:
        return SequenceState(np.full(self.spec.hidden_size, INIT_CONTEXT))

    def forward(self, x, state: SequenceState | None = None):
        """One step; returns (output, next state).

        Non-recurrent networks ignore and return the state unchanged.
        """
        x = np.asarray(x, dtype=float)
        spec = self.spec
        if x.shape != (spec.input_size,):
            raise ValueError(
                f"input size mismatch: expected {spec.input_size}, got {x.shape[0] if x.ndim == 1 else x.shape}"
            )
        if state is None:
            state = self.initial_state()
        if spec.recurrent:
            if state.context.shape != (spec.hidden_size,):
                raise ValueError(
                    f"context size mismatch: expected {spec.hidden_size}, "
                    f"got {state.context.shape[0]}"
                )
            a = np.concatenate([x, state.context, [1.0]])
        else:
            a = np.concatenate([x, [1.0]])
        h = _sigmoid(self.w1 @ a)
        o = _sigmoid(self.w2 @ np.concatenate([h, [1.0]]))
        return o, (SequenceState(h) if spec.recurrent else state)

    def run_sequence(self, xs) -> np.ndarray:
        """Forward a whole sequence from a fresh state; returns (L, out) outputs."""
        state = self.initial_state()
        outs = []
        for x in xs:
            o, state = self.forward(x, state)
            outs.append(o)
        return np.asarray(outs)

    # ---- serialization -----------------------------------------------------

    def to_bytes(self) -> bytes:
        buf = io.StringIO()
        spec = self.spec
        buf.write(f"{_FORMAT_TAG} {_FORMAT_VERSION}\n")
        buf.write(f"sizes {spec.input_size} {spec.hidden_size} {spec.output_size}\n")
        buf.write(f"recurrent {int(spec.recurrent)}\n")
        buf.write(f"seed {spec.seed}\n")
        for key in sorted(self.meta):
            buf.write(f"meta {key} {self.meta[key]}\n")
        for name, w in (("w1", self.w1), ("w2", self.w2)):
            buf.write(name + "\n")
            for row in w:
                buf.write(" ".join(f"{v:.17g}" for v in row) + "\n")
        buf.write("end\n")
        return buf.getvalue().encode("utf-8")

    @classmethod
    def from_bytes(cls, data: bytes, expect: NetworkSpec | None = None) -> "Network":
        try:
            lines = data.decode("utf-8").splitlines()
        except UnicodeDecodeError as exc:
            raise ValueError(f"malformed network data: {exc}") from exc
        it = iter(lines)

        def next_line():
            try:
                return next(it)
            except StopIteration:
                raise ValueError("truncated network data") from None

        header = next_line().split()
        if len(header) != 2 or header[0] != _FORMAT_TAG:
            raise ValueError("not a network file (missing format tag)")
        if int(header[1]) != _FORMAT_VERSION:
            raise ValueError(f"unsupported network format version {header[1]}")
        sizes = None
        recurrent = None
        seed = 0
        meta = {}
        line = next_line()
        while True:
            parts = line.split(None, 2)
            if parts[0] == "sizes":
                sizes = tuple(int(v) for v in line.split()[1:4])
            elif parts[0] == "recurrent":
                recurrent = bool(int(parts[1]))
            elif parts[0] == "seed":
                seed = int(parts[1])
            elif parts[0] == "meta":
                meta[parts[1]] = parts[2] if len(parts) > 2 else ""
            elif parts[0] == "w1":
                break
            else:
                raise ValueError(f"malformed network header line: {line!r}")
            line = next_line()
        if sizes is None or recurrent is None:
            raise ValueError("network header missing sizes/recurrent")
        spec = NetworkSpec(*sizes, recurrent=recurrent, seed=seed)
        if expect is not None and (
            sizes != (expect.input_size, expect.hidden_size, expect.output_size)
            or recurrent != expect.recurrent
        ):
            raise ValueError(
                f"network spec mismatch: file has sizes {sizes} recurrent={recurrent}, "
                f"expected sizes {(expect.input_size, expect.hidden_size, expect.output_size)} "
                f"recurrent={expect.recurrent}"
            )

        def read_matrix(rows, cols):
            w = np.empty((rows, cols))
            for i in range(rows):
                vals = next_line().split()
                if len(vals) != cols:
                    raise ValueError(
                        f"malformed weight row: expected {cols} values, got {len(vals)}"
                    )
                w[i] = [float(v) for v in vals]
            return w

        w1 = read_matrix(spec.hidden_size, spec.input_size + spec.context_size + 1)
        if next_line() != "w2":
            raise ValueError("malformed network data: missing w2 section")
        w2 = read_matrix(spec.output_size, spec.hidden_size + 1)
        if next_line() != "end":
            raise ValueError("truncated network data: missing end marker")
        return cls(spec, w1, w2, meta)

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path, expect: NetworkSpec | None = None) -> "Network":
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read(), expect)


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def _as_arrays(spec: NetworkSpec, data):
    """Flatten [(input, target), ...] sequences into packed arrays."""
    if not data:
        raise ValueError("empty training data")
    xs, ts, starts, ends = [], [], [], []
    pos = 0
    for seq in data:
        if len(seq) == 0:
            raise ValueError("empty training sequence")
        starts.append(pos)
        for x, t in seq:
            x = np.asarray(x, dtype=float)
            t = np.asarray(t, dtype=float)
            if x.shape != (spec.input_size,):
                raise ValueError(
                    f"input size mismatch: expected {spec.input_size}, got {x.shape}"
                )
            if t.shape != (spec.output_size,):
                raise ValueError(
                    f"target size mismatch: expected {spec.output_size}, got {t.shape}"
                )
            xs.append(x)
            ts.append(t)
            pos += 1
        ends.append(pos)
    return (
        np.asarray(xs),
        np.asarray(ts),
        np.asarray(starts, dtype=np.int64),
        np.asarray(ends, dtype=np.int64),
    )


def train(spec: NetworkSpec, data, cfg: TrainConfig, meta=None):
    """Train a network; deterministic in (spec.seed, cfg.seed, data order).

    ``data`` is a list of sequences, each a list of (input, target) pairs;
    feedforward training uses length-1 sequences. Returns (network, per-epoch
    mean squared errors).
    """
    x, t, starts, ends = _as_arrays(spec, data)
    net = Network.initial(spec, meta)
    nseq = len(starts)
    rng = np.random.default_rng(cfg.seed)
    orders = np.empty((cfg.epochs, nseq), dtype=np.int64)
    for ep in range(cfg.epochs):
        orders[ep] = rng.permutation(nseq) if cfg.shuffle else np.arange(nseq)
    errs = np.zeros(cfg.epochs)
    _bptt_kernel(
        net.w1,
        net.w2,
        x,
        t,
        starts,
        ends,
        orders,
        cfg.learning_rate,
        INIT_CONTEXT,
        spec.recurrent,
        errs,
    )
    return net, errs / len(x)


def sequence_gradients(net: Network, xs, ts):
    """Analytic loss gradients (w1, w2) and SSE for one sequence.

    Mirrors the compiled training kernel; used by the finite-difference check.
    """
    spec = net.spec
    hid = spec.hidden_size
    L = len(xs)
    A = np.zeros((L, spec.input_size + spec.context_size + 1))
    H = np.zeros((L, hid))
    O = np.zeros((L, spec.output_size))
    ctx = np.full(hid, INIT_CONTEXT)
    sse = 0.0
    for k in range(L):
        if spec.recurrent:
            A[k] = np.concatenate([xs[k], ctx, [1.0]])
        else:
            A[k] = np.concatenate([xs[k], [1.0]])
        H[k] = _sigmoid(net.w1 @ A[k])
        O[k] = _sigmoid(net.w2 @ np.concatenate([H[k], [1.0]]))
        sse += float(np.sum((O[k] - ts[k]) ** 2))
        ctx = H[k]
    g1 = np.zeros_like(net.w1)
    g2 = np.zeros_like(net.w2)
    dnext = np.zeros(hid)
    for k in range(L - 1, -1, -1):
        do = (O[k] - ts[k]) * O[k] * (1.0 - O[k])
        dh = (net.w2[:, :hid].T @ do + dnext) * H[k] * (1.0 - H[k])
        g2 += np.outer(do, np.concatenate([H[k], [1.0]]))
        g1 += np.outer(dh, A[k])
        if spec.recurrent:
            dnext = net.w1[:, spec.input_size : spec.input_size + hid].T @ dh
    # loss is 1/2 SSE under the delta rule convention used by the kernel
    return g1, g2, sse


def gradient_check(spec: NetworkSpec, samples: int, seed: int, step: float = 1e-5) -> float:
    """Worst relative error of analytic vs central finite-difference gradients."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        w1 = rng.uniform(-0.5, 0.5, (spec.hidden_size, spec.input_size + spec.context_size + 1))
        w2 = rng.uniform(-0.5, 0.5, (spec.output_size, spec.hidden_size + 1))
        net = Network(spec, w1, w2)
        L = int(rng.integers(1, 5))
        xs = rng.uniform(0.0, 1.0, (L, spec.input_size))
        ts = rng.uniform(0.0, 1.0, (L, spec.output_size))
        g1, g2, _ = sequence_gradients(net, xs, ts)

        def loss():
            outs = net.run_sequence(xs)
            return 0.5 * float(np.sum((outs - ts) ** 2))

        for w, g in ((net.w1, g1), (net.w2, g2)):
            for idx in np.ndindex(w.shape):
                orig = w[idx]
                w[idx] = orig + step
                plus = loss()
                w[idx] = orig - step
                minus = loss()
                w[idx] = orig
                numeric = (plus - minus) / (2.0 * step)
                analytic = g[idx]
                err = abs(analytic - numeric) / max(1e-3, abs(analytic), abs(numeric))
                if err > worst:
                    worst = err
    return worst


@njit(cache=True)
def _bptt_kernel(w1, w2, x, t, starts, ends, orders, lr, init_ctx, recurrent, errs):
    hid = w1.shape[0]
    ncols = w1.shape[1]
    nout = w2.shape[0]
    nin = x.shape[1]
    nseq = starts.shape[0]
    maxlen = 0
    for i in range(nseq):
        length = ends[i] - starts[i]
        if length > maxlen:
            maxlen = length
    A = np.zeros((maxlen, ncols))
    H = np.zeros((maxlen, hid))
    O = np.zeros((maxlen, nout))
    g1 = np.zeros((hid, ncols))
    g2 = np.zeros((nout, hid + 1))
    dh = np.zeros(hid)
    dnext = np.zeros(hid)
    epochs = orders.shape[0]
    for ep in range(epochs):
        sse = 0.0
        for oi in range(nseq):
            si = orders[ep, oi]
            s = starts[si]
            L = ends[si] - s
            # forward sweep, storing activations for the backward pass
            for k in range(L):
                for j in range(nin):
                    A[k, j] = x[s + k, j]
                if recurrent:
                    if k == 0:
                        for j in range(hid):
                            A[k, nin + j] = init_ctx
                    else:
                        for j in range(hid):
                            A[k, nin + j] = H[k - 1, j]
                A[k, ncols - 1] = 1.0
                for i in range(hid):
                    z = 0.0
                    for j in range(ncols):
                        z += w1[i, j] * A[k, j]
                    H[k, i] = 1.0 / (1.0 + math.exp(-z))
                for i in range(nout):
                    z = w2[i, hid]
                    for j in range(hid):
                        z += w2[i, j] * H[k, j]
                    o = 1.0 / (1.0 + math.exp(-z))
                    O[k, i] = o
                    d = o - t[s + k, i]
                    sse += d * d
            # backward through the stored context chain
            for i in range(hid):
                dnext[i] = 0.0
                for j in range(ncols):
                    g1[i, j] = 0.0
            for i in range(nout):
                for j in range(hid + 1):
                    g2[i, j] = 0.0
            for k in range(L - 1, -1, -1):
                for i in range(hid):
                    acc = dnext[i]
                    for oidx in range(nout):
                        do = (
                            (O[k, oidx] - t[s + k, oidx])
                            * O[k, oidx]
                            * (1.0 - O[k, oidx])
                        )
                        acc += w2[oidx, i] * do
                    dh[i] = acc * H[k, i] * (1.0 - H[k, i])
                for oidx in range(nout):
                    do = (
                        (O[k, oidx] - t[s + k, oidx])
                        * O[k, oidx]
                        * (1.0 - O[k, oidx])
                    )
                    for j in range(hid):
                        g2[oidx, j] += do * H[k, j]
                    g2[oidx, hid] += do
                for i in range(hid):
                    for j in range(ncols):
                        g1[i, j] += dh[i] * A[k, j]
                if recurrent:
                    for j in range(hid):
                        acc = 0.0
                        for i in range(hid):
                            acc += w1[i, nin + j] * dh[i]
                        dnext[j] = acc
            for i in range(hid):
                for j in range(ncols):
                    w1[i, j] -= lr * g1[i, j]
            for i in range(nout):
                for j in range(hid + 1):
                    w2[i, j] -= lr * g2[i, j]
        errs[ep] = sse
