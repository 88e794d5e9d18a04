"""Weighted bit-flipping decoders: single-bit, multi-bit, and block-parallel.

All three share the same per-bit metric: the sum over the checks containing
bit n of +/- w_{n,m} (positive when the check is unsatisfied), minus
alpha * |y_n|, where w_{n,m} is the smallest channel magnitude among the
*other* bits of check m.  They differ only in which bits get flipped each
iteration:

* imwbf  - flip the single bit with the largest metric;
* mlp    - flip the bits among the lam largest metrics (positive ones only,
           unless the threshold is disabled);
* fwbf   - split the metric vector into contiguous p-length blocks, padded
           with "null" (-inf) entries, and flip the per-block maximum in
           every block whose maximum is positive.

Metrics within an iteration are always computed from the iteration-start
syndrome; flips within an iteration are simultaneous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .matrix import ParityCheckMatrix

STALL_POLICIES = ("terminate", "flip-global-max")


@dataclass(frozen=True)
class DecoderConfig:
    """Knobs shared by the decoder family.

    alpha weights the received-magnitude term of the metric; k_max caps the
    number of flip passes; lam is the multi-bit flip count; block_len_p is
    the block length for block-parallel flipping.  stall_policy decides what
    happens when an iteration selects no bit to flip while the syndrome is
    still nonzero.  mlp_threshold controls whether multi-bit flipping skips
    selected bits with non-positive metrics.
    """

    alpha: float = 0.2
    k_max: int = 10
    lam: int = 1
    block_len_p: Optional[int] = None
    stall_policy: str = "flip-global-max"
    mlp_threshold: bool = True

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if self.k_max < 1:
            raise ValueError("k_max must be >= 1")
        if self.lam < 1:
            raise ValueError("lam must be >= 1")
        if self.block_len_p is not None and self.block_len_p < 1:
            raise ValueError("block_len_p must be >= 1")
        if self.stall_policy not in STALL_POLICIES:
            raise ValueError(f"stall_policy must be one of {STALL_POLICIES}")


@dataclass
class WeightTable:
    """Per-check minima of |y| over the check's bits.

    The weight of edge (n, m) is min1[m] unless n is the position holding
    that minimum, in which case it is min2[m] - i.e. the minimum of |y| over
    the other bits of the check.
    """

    min1: np.ndarray
    min2: np.ndarray
    argmin_col: np.ndarray

    def weight(self, m: int, n: int) -> float:
        return float(self.min2[m]) if n == self.argmin_col[m] else float(self.min1[m])

    def edge_weights(self, h: ParityCheckMatrix) -> np.ndarray:
        w = self.min1[h.edge_row]
        at_min = h.edge_col == self.argmin_col[h.edge_row]
        w[at_min] = self.min2[h.edge_row[at_min]]
        return w


def compute_weights(h: ParityCheckMatrix, y) -> WeightTable:
    """Build the weight table for a frame; depends only on |y|, not on z."""
    if h.n_rows and int(h.row_weights.min()) < 2:
        raise ValueError("every check must contain at least 2 bits")
    ay = np.abs(np.asarray(y, dtype=np.float64))
    if ay.shape != (h.n_cols,):
        raise ValueError(f"expected a length-{h.n_cols} frame")
    ay_ext = np.append(ay, np.inf)  # sentinel for the row padding
    a = ay_ext[h.row_pad]
    rows = np.arange(h.n_rows)
    pos = a.argmin(axis=1)
    min1 = a[rows, pos]
    argmin_col = h.row_pad[rows, pos]
    a2 = a.copy()
    a2[rows, pos] = np.inf
    min2 = a2.min(axis=1)
    return WeightTable(min1=min1, min2=min2, argmin_col=argmin_col)


def hard_decision(y) -> np.ndarray:
    """z = (1 - sgn(y)) / 2 with sgn(0) := +1, so zeros decide to 0."""
    return (np.asarray(y) < 0).astype(np.uint8)


@dataclass
class DecodeState:
    """Snapshot of the decode loop at the top of one iteration."""

    z: np.ndarray
    syndrome: np.ndarray
    iteration: int

    @property
    def syndrome_weight(self) -> int:
        return int(np.count_nonzero(self.syndrome))


@dataclass
class DecodeOutcome:
    z_final: np.ndarray
    iterations: int
    converged: bool
    flip_log: List[List[int]]
    stalled: bool
    trace: Optional[List[DecodeState]] = field(default=None, repr=False)

    @property
    def flips_total(self) -> int:
        return sum(len(f) for f in self.flip_log)


def bit_metric(h: ParityCheckMatrix, n: int, state: DecodeState,
               weights: WeightTable, y, alpha: float) -> float:
    """Metric of a single bit, straight from the definition."""
    total = -alpha * abs(float(y[n]))
    for m in h.col_adj[n]:
        w = weights.weight(int(m), n)
        total += w if state.syndrome[m] else -w
    return total


def all_metrics(h: ParityCheckMatrix, syndrome, edge_w: np.ndarray,
                abs_y: np.ndarray, alpha: float) -> np.ndarray:
    """Metric vector for all bits given the current syndrome."""
    sgn = 2.0 * syndrome[h.edge_row].astype(np.float64) - 1.0
    acc = np.bincount(h.edge_col, weights=sgn * edge_w, minlength=h.n_cols)
    return acc - alpha * abs_y


def block_argmax(values: np.ndarray, p: int) -> np.ndarray:
    """Index of the maximum of each contiguous p-length block.

    The vector is padded with -inf to a multiple of p; padded positions are
    never selected.  Ties resolve to the lowest index.
    """
    n = values.size
    n_pad = -(-n // p) * p
    padded = np.concatenate([values, np.full(n_pad - n, -np.inf)])
    grid = padded.reshape(-1, p)
    off = grid.argmax(axis=1)
    return off + np.arange(grid.shape[0]) * p


def _select_imwbf(e: np.ndarray, cfg: DecoderConfig) -> np.ndarray:
    return np.array([int(np.argmax(e))])


def _select_mlp(e: np.ndarray, cfg: DecoderConfig) -> np.ndarray:
    top = np.argsort(-e, kind="stable")[: cfg.lam]
    if cfg.mlp_threshold:
        top = top[e[top] > 0]
    return np.sort(top)


def _select_fwbf(e: np.ndarray, cfg: DecoderConfig) -> np.ndarray:
    cand = block_argmax(e, cfg.block_len_p)
    return cand[e[cand] > 0]


_SELECTORS = {"imwbf": _select_imwbf, "mlp": _select_mlp, "fwbf": _select_fwbf}


def _decode(h: ParityCheckMatrix, y, cfg: DecoderConfig, algorithm: str,
            trace: bool) -> DecodeOutcome:
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (h.n_cols,):
        raise ValueError(f"expected a length-{h.n_cols} frame")
    select = _SELECTORS[algorithm]
    abs_y = np.abs(y)
    z = hard_decision(y)
    synd = h.syndrome(z)
    edge_w = compute_weights(h, y).edge_weights(h)

    flip_log: List[List[int]] = []
    states: Optional[List[DecodeState]] = [] if trace else None
    stalled = False
    k = 0
    while True:
        if trace:
            states.append(DecodeState(z=z.copy(), syndrome=synd.copy(), iteration=k))
        if not synd.any():
            return DecodeOutcome(z, k, True, flip_log, stalled, states)
        if k >= cfg.k_max:
            return DecodeOutcome(z, k, False, flip_log, stalled, states)

        e = all_metrics(h, synd, edge_w, abs_y, cfg.alpha)
        flips = select(e, cfg)
        if flips.size == 0:
            stalled = True
            if cfg.stall_policy == "terminate":
                k += 1
                flip_log.append([])
                if trace:
                    states.append(DecodeState(z=z.copy(), syndrome=synd.copy(), iteration=k))
                return DecodeOutcome(z, k, False, flip_log, stalled, states)
            flips = np.array([int(np.argmax(e))])

        z[flips] ^= 1
        touched = np.concatenate([h.col_adj[int(i)] for i in flips])
        toggles = np.bincount(touched, minlength=h.n_rows)
        synd ^= (toggles & 1).astype(np.uint8)
        flip_log.append([int(i) for i in flips])
        k += 1


def decode_imwbf(h: ParityCheckMatrix, y, cfg: DecoderConfig = DecoderConfig(),
                 trace: bool = False) -> DecodeOutcome:
    """Flip the single largest-metric bit each iteration (ties: lowest index)."""
    return _decode(h, y, cfg, "imwbf", trace)


def decode_mlp_wbf(h: ParityCheckMatrix, y, cfg: DecoderConfig = DecoderConfig(),
                   trace: bool = False) -> DecodeOutcome:
    """Flip the bits holding the lam largest metrics each iteration.

    Selections are simultaneous over one metric vector; with the threshold
    enabled only selected bits with positive metrics actually flip.
    """
    if cfg.lam > h.n_cols:
        raise ValueError(f"lam={cfg.lam} exceeds block length {h.n_cols}")
    return _decode(h, y, cfg, "mlp", trace)


def decode_fwbf(h: ParityCheckMatrix, y, cfg: DecoderConfig = DecoderConfig(block_len_p=1),
                trace: bool = False) -> DecodeOutcome:
    """Flip at most one bit per contiguous p-length block each iteration.

    Each block flips its maximum-metric bit when that metric is positive;
    padded (null) positions never flip.
    """
    if cfg.block_len_p is None:
        raise ValueError("block_len_p is required for block-parallel decoding")
    return _decode(h, y, cfg, "fwbf", trace)
