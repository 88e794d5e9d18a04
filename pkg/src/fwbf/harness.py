"""Monte Carlo BER/FER experiments over SNR grids, with CSV output.

Frames are generated from per-frame random streams keyed by (master seed,
frame index) and processed in fixed-size batches; the stopping rule is
evaluated only at batch boundaries, in batch order.  Aggregation is pure
integer accumulation, so results are bit-identical whether batches run
serially or on a worker pool, and for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .channel import awgn_apply, bpsk_modulate, ebn0_to_sigma, frame_rng
from .decoders import DecoderConfig, decode_fwbf, decode_imwbf, decode_mlp_wbf
from .matrix import ParityCheckMatrix, gf2_rank

BATCH_FRAMES = 128

CSV_HEADER = ("snr_db,frames,bit_errors,word_errors,ber,fer,"
              "ber_stderr,fer_stderr,mean_iters,mean_flips,stalls,capped")

_DECODERS = {"imwbf": decode_imwbf, "mlp": decode_mlp_wbf, "fwbf": decode_fwbf}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one experiment needs besides the decoder internals."""

    h: ParityCheckMatrix
    decoder: str
    decoder_cfg: DecoderConfig
    ebn0_db: Tuple[float, ...]
    rate: Optional[float] = None  # derived from H when not given
    sigma_override: Optional[float] = None
    target_word_errors: int = 100
    max_frames: int = 10_000_000
    master_seed: int = 1
    codeword: Optional[np.ndarray] = None  # all-zero when not given
    workers: int = 1
    out_path: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "ebn0_db", tuple(float(x) for x in self.ebn0_db))
        if self.decoder not in _DECODERS:
            raise ValueError(f"unknown decoder {self.decoder!r}")
        if self.target_word_errors < 1 or self.max_frames < 1:
            raise ValueError("target_word_errors and max_frames must be >= 1")
        if not self.ebn0_db:
            raise ValueError("SNR grid must be non-empty")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.decoder == "mlp" and self.decoder_cfg.lam > self.h.n_cols:
            raise ValueError(f"lam={self.decoder_cfg.lam} exceeds N={self.h.n_cols}")
        if self.codeword is not None:
            cw = np.asarray(self.codeword, dtype=np.uint8)
            if cw.shape != (self.h.n_cols,):
                raise ValueError(f"codeword must have length {self.h.n_cols}")
            if self.h.syndrome(cw).any():
                raise ValueError("supplied word is not a codeword of H")
            object.__setattr__(self, "codeword", cw)

    def resolve_rate(self) -> float:
        if self.rate is not None:
            return self.rate
        k = self.h.n_cols - gf2_rank(self.h)
        return k / self.h.n_cols


@dataclass(frozen=True)
class PointStats:
    """Aggregates for one SNR point."""

    snr_db: float
    frames: int
    bit_errors: int
    word_errors: int
    ber: float
    fer: float
    ber_stderr: float
    fer_stderr: float
    mean_iters: float
    mean_flips: float
    stalls: int
    capped: bool


def _binomial_stderr(p: float, trials: int) -> float:
    return math.sqrt(p * (1.0 - p) / trials) if trials else 0.0


def _run_batch(h: ParityCheckMatrix, decoder: str, cfg: DecoderConfig, sigma: float,
               seed: int, start: int, count: int,
               codeword: Optional[np.ndarray]) -> Tuple[int, int, int, int, int, int]:
    decode = _DECODERS[decoder]
    c = np.zeros(h.n_cols, dtype=np.uint8) if codeword is None else codeword
    s = bpsk_modulate(c)
    bit_err = word_err = iter_sum = flip_sum = stall_cnt = 0
    for i in range(start, start + count):
        y = awgn_apply(s, sigma, frame_rng(seed, i))
        out = decode(h, y, cfg)
        errs = int(np.count_nonzero(out.z_final != c))
        if errs:
            word_err += 1
            bit_err += errs
        iter_sum += out.iterations
        flip_sum += out.flips_total
        stall_cnt += int(out.stalled)
    return count, bit_err, word_err, iter_sum, flip_sum, stall_cnt


def run_point(config: ExperimentConfig, snr_db: float) -> PointStats:
    """Accumulate frames at one SNR until the word-error target or frame cap."""
    sigma = (config.sigma_override if config.sigma_override is not None
             else ebn0_to_sigma(snr_db, config.resolve_rate()))
    starts = list(range(0, config.max_frames, BATCH_FRAMES))
    sizes = [min(BATCH_FRAMES, config.max_frames - s) for s in starts]

    frames = bit_err = word_err = iter_sum = flip_sum = stalls = 0

    def batch_args(i):
        return (config.h, config.decoder, config.decoder_cfg, sigma,
                config.master_seed, starts[i], sizes[i], config.codeword)

    if config.workers == 1:
        for i in range(len(starts)):
            res = _run_batch(*batch_args(i))
            frames += res[0]; bit_err += res[1]; word_err += res[2]
            iter_sum += res[3]; flip_sum += res[4]; stalls += res[5]
            if word_err >= config.target_word_errors:
                break
    else:
        # Batches complete out of order on the pool, but results are folded in
        # strictly by batch index and scheduling stops at the same batch the
        # serial path would stop at, so worker count cannot change the result.
        window = config.workers + 2
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = {}
            next_submit = 0
            for i in range(len(starts)):
                while next_submit < min(i + window, len(starts)):
                    futures[next_submit] = pool.submit(_run_batch, *batch_args(next_submit))
                    next_submit += 1
                res = futures.pop(i).result()
                frames += res[0]; bit_err += res[1]; word_err += res[2]
                iter_sum += res[3]; flip_sum += res[4]; stalls += res[5]
                if word_err >= config.target_word_errors:
                    for f in futures.values():
                        f.cancel()
                    break

    ber = bit_err / (frames * config.h.n_cols)
    fer = word_err / frames
    return PointStats(
        snr_db=snr_db,
        frames=frames,
        bit_errors=bit_err,
        word_errors=word_err,
        ber=ber,
        fer=fer,
        ber_stderr=_binomial_stderr(ber, frames * config.h.n_cols),
        fer_stderr=_binomial_stderr(fer, frames),
        mean_iters=iter_sum / frames,
        mean_flips=flip_sum / frames,
        stalls=stalls,
        capped=word_err < config.target_word_errors,
    )


def write_csv(stats: Sequence[PointStats], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as f:
        f.write(CSV_HEADER + "\n")
        for p in stats:
            f.write(",".join([
                repr(float(p.snr_db)), str(p.frames), str(p.bit_errors),
                str(p.word_errors), repr(float(p.ber)), repr(float(p.fer)),
                repr(float(p.ber_stderr)), repr(float(p.fer_stderr)),
                repr(float(p.mean_iters)), repr(float(p.mean_flips)),
                str(p.stalls), str(int(p.capped)),
            ]) + "\n")


def format_summary(stats: Sequence[PointStats]) -> str:
    lines = [f"{'snr_db':>7} {'frames':>9} {'fer':>11} {'ber':>11} "
             f"{'mean_iters':>10} {'stalls':>7} {'capped':>6}"]
    for p in stats:
        lines.append(f"{p.snr_db:>7.2f} {p.frames:>9d} {p.fer:>11.4e} {p.ber:>11.4e} "
                     f"{p.mean_iters:>10.3f} {p.stalls:>7d} {p.capped:>6d}")
    return "\n".join(lines)


def run_experiment(config: ExperimentConfig) -> List[PointStats]:
    """Run every SNR point, write the CSV if configured, print a summary."""
    stats = [run_point(config, snr) for snr in config.ebn0_db]
    if config.out_path is not None:
        write_csv(stats, config.out_path)
    print(format_summary(stats))
    return stats


@dataclass(frozen=True)
class SweepResult:
    entries: Tuple[Tuple[float, PointStats], ...]
    best_alpha: float  # argmin FER; ties go to the smaller alpha


def sweep_alpha(config: ExperimentConfig, alpha_grid: Sequence[float],
                snr_db: Optional[float] = None) -> SweepResult:
    """Re-run one SNR point across an alpha grid with a shared seed.

    The caller sizes the per-alpha budget through the config's word-error
    target and frame cap.
    """
    if not alpha_grid:
        raise ValueError("alpha grid must be non-empty")
    if snr_db is None:
        snr_db = config.ebn0_db[0]
    entries = []
    best = None
    for alpha in alpha_grid:
        cfg = replace(config, decoder_cfg=replace(config.decoder_cfg, alpha=float(alpha)))
        stats = run_point(cfg, snr_db)
        entries.append((float(alpha), stats))
        if best is None or stats.fer < best[1].fer:
            best = (float(alpha), stats)
    return SweepResult(entries=tuple(entries), best_alpha=best[0])
