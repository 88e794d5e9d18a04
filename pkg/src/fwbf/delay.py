"""Clock-cycle model of the partially parallel bit-choose hardware.

The bit-choose unit is a pipelined tree of two-input max comparators: q
comparators in the first stage reduce a block of 2q metric values, and
log2(2q) stages reduce the block to its maximum.  Blocks stream in one per
clock and move down one stage per clock, so all N/(2q) block maxima are out
after N/(2q) + log2(2q) clocks.  Selecting a *global* maximum additionally
reduces the block maxima through a log2(N/(2q))-level tree, and repeating
that lam times (multi-bit selection runs strictly one maximum after the
other) costs lam * (log2(2q) + N/(2q) + log2(N/(2q))) clocks.

Closed forms and the event simulation below must agree exactly; the
simulation exists to validate the arithmetic, not to replace it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

MODES = ("per-block-max", "global-max")


def _is_pow2(x: int) -> bool:
    return x >= 1 and (x & (x - 1)) == 0


@dataclass(frozen=True)
class PipelineParams:
    """Comparator-network geometry: q first-stage comparators, padded length."""

    q: int
    n_padded: int

    def __post_init__(self):
        if not _is_pow2(self.q):
            raise ValueError(f"q must be a power of two, got {self.q}")
        width = 2 * self.q
        if self.n_padded % width != 0:
            raise ValueError(f"n_padded={self.n_padded} is not a multiple of 2q={width}")
        if not _is_pow2(self.n_padded // width):
            raise ValueError(
                f"n_padded/(2q) = {self.n_padded // width} must be a power of two"
            )

    @property
    def stages(self) -> int:
        return (2 * self.q).bit_length() - 1  # log2(2q)

    @property
    def blocks(self) -> int:
        return self.n_padded // (2 * self.q)

    @classmethod
    def from_code_length(cls, n: int, q: int) -> "PipelineParams":
        """Pad a raw metric-vector length up to the next multiple of 2q.

        Configurations whose padded block count is still not a power of two
        are refused, since the delay logarithms would be fractional.
        """
        if n < 1:
            raise ValueError("n must be positive")
        width = 2 * q
        return cls(q=q, n_padded=-(-n // width) * width)


@dataclass(frozen=True)
class DelayReport:
    """Per-iteration clock counts for one decoding algorithm."""

    algorithm: str
    q: int
    n_padded: int
    lam: int
    metric_clocks: int
    choose_clocks: int
    total_per_iteration: int
    hardware_block_len: int  # the delay model always works on 2q-length blocks


def mlp_choose_delay(params: PipelineParams, lam: int) -> int:
    """Clocks to select the lam largest metrics, one global maximum at a time."""
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    if lam == 0:
        return 0
    b = params.blocks
    return lam * (params.stages + b + (b.bit_length() - 1))


def fwbf_choose_delay(params: PipelineParams) -> int:
    """Clocks until every block's maximum has left the comparator pipeline."""
    return params.stages + params.blocks


def pad_metrics(values, params: PipelineParams) -> np.ndarray:
    """Extend a metric vector with null (-inf) entries to the padded length."""
    values = np.asarray(values, dtype=np.float64)
    if values.size > params.n_padded:
        raise ValueError(f"vector longer than n_padded={params.n_padded}")
    return np.concatenate([values, np.full(params.n_padded - values.size, -np.inf)])


def _reduce_level(vals: np.ndarray, idxs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # One comparator level; the left (lower-index) input wins ties.
    left = vals[0::2] >= vals[1::2]
    return np.where(left, vals[0::2], vals[1::2]), np.where(left, idxs[0::2], idxs[1::2])


def _stream_block_maxima(values: np.ndarray, params: PipelineParams,
                         start_clock: int) -> Tuple[List[Tuple[float, int]], int]:
    """Clock the comparator pipeline and collect every block's (max, argmax).

    Block b is latched into the input register at clock start+b+1 and is
    processed by stage s at clock start+b+s+1, so its maximum is registered
    at clock start+b+1+stages.
    """
    width = 2 * params.q
    stages = params.stages
    blocks = [
        (values[b * width:(b + 1) * width], np.arange(b * width, (b + 1) * width))
        for b in range(params.blocks)
    ]
    regs: List[object] = [None] * (stages + 1)  # regs[0] input latch, regs[s] after stage s
    out: List[Tuple[float, int]] = []
    clock = start_clock
    feed = 0
    while len(out) < params.blocks:
        clock += 1
        prev = list(regs)
        for s in range(1, stages + 1):
            regs[s] = _reduce_level(*prev[s - 1]) if prev[s - 1] is not None else None
        if regs[stages] is not None:
            vals, idxs = regs[stages]
            out.append((float(vals[0]), int(idxs[0])))
        regs[0] = blocks[feed] if feed < params.blocks else None
        feed += 1
    return out, clock


def simulate_pipeline(params: PipelineParams, metric_vector, mode: str,
                      lam: int = 1) -> Tuple[List[int], int]:
    """Event simulation of the comparator network.

    ``per-block-max`` returns every block's argmax (the block-parallel flip
    candidates); ``global-max`` returns the lam successive global argmaxes,
    re-streaming the vector with previous winners masked out for each one.
    Returns (selected indices, total clock count).
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    values = np.asarray(metric_vector, dtype=np.float64)
    if values.size != params.n_padded:
        raise ValueError(f"expected a length-{params.n_padded} metric vector")

    if mode == "per-block-max":
        maxima, clock = _stream_block_maxima(values, params, 0)
        return [idx for _, idx in maxima], clock

    if lam < 1:
        raise ValueError("lam must be >= 1 for global selection")
    work = values.copy()
    selected: List[int] = []
    clock = 0
    for _ in range(lam):
        maxima, clock = _stream_block_maxima(work, params, clock)
        vals = np.array([v for v, _ in maxima])
        idxs = np.array([i for _, i in maxima])
        while vals.size > 1:  # reduction tree over block maxima, one level per clock
            clock += 1
            vals, idxs = _reduce_level(vals, idxs)
        winner = int(idxs[0])
        selected.append(winner)
        work[winner] = -np.inf
    return selected, clock


def iteration_delay(params: PipelineParams, algorithm: str, lam: int = 1) -> DelayReport:
    """Total per-iteration clocks, metric phase included.

    2q metric units produce one block per clock, so metrics take N/(2q)
    clocks.  Block-parallel choosing overlaps the metric phase completely
    except for draining the last block through the comparator stages; global
    selection cannot start its reduction tree until all block maxima exist,
    so its choose phase is serial after the metric phase.
    """
    metric = params.blocks
    if algorithm == "fwbf":
        choose = fwbf_choose_delay(params)
        total = metric + params.stages
    elif algorithm == "mlp":
        choose = mlp_choose_delay(params, lam)
        total = metric + choose
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return DelayReport(
        algorithm=algorithm,
        q=params.q,
        n_padded=params.n_padded,
        lam=lam if algorithm == "mlp" else 1,
        metric_clocks=metric,
        choose_clocks=choose,
        total_per_iteration=total,
        hardware_block_len=2 * params.q,
    )


def throughput_estimate(report: DelayReport, avg_iterations: float,
                        clock_hz: float, k_info_bits: int) -> float:
    """Information bits per second at a given clock and mean iteration count."""
    if avg_iterations <= 0 or clock_hz <= 0 or k_info_bits <= 0:
        raise ValueError("avg_iterations, clock_hz and k_info_bits must be positive")
    denom = report.total_per_iteration * avg_iterations
    if denom == 0:
        raise ZeroDivisionError("zero total delay")
    return k_info_bits * clock_hz / denom
