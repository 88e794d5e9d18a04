"""BPSK over AWGN with reproducible per-frame random streams."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def bpsk_modulate(c) -> np.ndarray:
    """Map bits to antipodal symbols, s_n = 1 - 2 c_n."""
    c = np.asarray(c)
    if c.size and (c.min() < 0 or c.max() > 1):
        raise ValueError("codeword entries must be 0 or 1")
    return 1.0 - 2.0 * c.astype(np.float64)


def ebn0_to_sigma(ebn0_db: float, rate: float) -> float:
    """Noise standard deviation per dimension for unit symbol energy.

    sigma = sqrt(1 / (2 * rate * 10^(ebn0_db / 10))).
    """
    if not 0.0 < rate < 1.0:
        raise ValueError(f"code rate must be in (0, 1), got {rate}")
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def awgn_apply(s, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Add zero-mean Gaussian noise with standard deviation sigma."""
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    s = np.asarray(s, dtype=np.float64)
    if sigma == 0:
        return s.copy()
    return s + sigma * rng.standard_normal(s.size)


def frame_rng(master_seed: int, frame_index: int) -> np.random.Generator:
    """Independent stream for one frame.

    Philox keyed by the master seed, with the 256-bit counter offset by
    frame_index * 2^128: frames own disjoint counter blocks, so streams for
    different frame indices can never share a position regardless of how
    many values each frame draws.
    """
    if master_seed < 0 or frame_index < 0:
        raise ValueError("seed and frame index must be nonnegative")
    bg = np.random.Philox(key=master_seed, counter=frame_index << 128)
    return np.random.Generator(bg)


@dataclass(frozen=True)
class ChannelParams:
    """Eb/N0 operating point and the sigma it implies at a given code rate."""

    ebn0_db: float
    rate: float
    sigma: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.sigma is None:
            object.__setattr__(self, "sigma", ebn0_to_sigma(self.ebn0_db, self.rate))


@dataclass
class ReceivedFrame:
    """Channel output y together with the codeword that produced it."""

    y: np.ndarray
    source_codeword: np.ndarray

    def __post_init__(self):
        if len(self.y) != len(self.source_codeword):
            raise ValueError("y and source codeword lengths differ")


def transmit(codeword, sigma: float, rng: np.random.Generator) -> ReceivedFrame:
    """Modulate a codeword and pass it through the AWGN channel."""
    c = np.asarray(codeword, dtype=np.uint8)
    y = awgn_apply(bpsk_modulate(c), sigma, rng)
    return ReceivedFrame(y=y, source_codeword=c)
