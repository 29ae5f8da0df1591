"""Noisy d-deletion channel: BPSK, uniform deletion of d symbols, then AWGN."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelParams",
    "DeletionPattern",
    "apply_deletions",
    "esn0_db_to_sigma2",
    "modulate",
    "sample_deletion_pattern",
    "transmit",
    "trial_rng",
    "trial_seed",
]


def esn0_db_to_sigma2(esn0_db: float) -> float:
    """Noise variance per real dimension for unit-energy BPSK at Es/N0 (dB)."""
    return 1.0 / (2.0 * 10.0 ** (esn0_db / 10.0))


def trial_seed(seed: int, trial: int) -> int:
    """64-bit seed of Monte Carlo trial ``trial`` under master ``seed``."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one Monte Carlo trial.

    Streams depend only on ``(seed, trial)``, so trials can be farmed out in
    any order or across processes and still reproduce a serial run.
    """
    return np.random.default_rng(trial_seed(seed, trial))


@dataclass(frozen=True)
class ChannelParams:
    d: int
    sigma2: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.d < 0:
            raise ValueError(f"d must be non-negative, got {self.d}")
        if not self.sigma2 > 0:
            raise ValueError(f"sigma2 must be positive, got {self.sigma2}")


@dataclass(frozen=True)
class DeletionPattern:
    """Sorted, distinct 0-based positions of the deleted symbols."""

    positions: tuple[int, ...]
    N: int

    def __post_init__(self) -> None:
        pos = tuple(int(p) for p in self.positions)
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("deletion positions must be strictly increasing")
        if pos and (pos[0] < 0 or pos[-1] >= self.N):
            raise ValueError(f"deletion position out of range for N={self.N}")
        object.__setattr__(self, "positions", pos)

    @property
    def d(self) -> int:
        return len(self.positions)


def modulate(x: np.ndarray) -> np.ndarray:
    """BPSK: bit 0 -> +1.0, bit 1 -> -1.0."""
    x = np.asarray(x)
    if x.size and (x.min() < 0 or x.max() > 1):
        raise ValueError("modulate expects bits")
    return 1.0 - 2.0 * x.astype(float)


def sample_deletion_pattern(N: int, d: int, rng: np.random.Generator) -> DeletionPattern:
    """Draw a size-d subset of ``range(N)`` uniformly at random."""
    if not 0 <= d <= N:
        raise ValueError(f"need 0 <= d <= N, got d={d}, N={N}")
    picked = rng.choice(N, size=d, replace=False)
    return DeletionPattern(tuple(np.sort(picked).tolist()), N)


def apply_deletions(symbols: np.ndarray, pattern: DeletionPattern) -> np.ndarray:
    symbols = np.asarray(symbols)
    if symbols.shape[0] != pattern.N:
        raise ValueError(f"pattern built for N={pattern.N}, got {symbols.shape[0]} symbols")
    return np.delete(symbols, list(pattern.positions), axis=0)


def transmit(
    x: np.ndarray,
    params: ChannelParams,
    rng: np.random.Generator,
    return_pattern: bool = False,
):
    """Send ``x`` through the noisy d-deletion channel.

    Returns the length ``N - d`` observation, and the deletion pattern as a
    second value when ``return_pattern`` is set.  The pattern is diagnostic
    only; decoders never see it.
    """
    x = np.asarray(x)
    N = x.size
    if params.d > N:
        raise ValueError(f"cannot delete {params.d} of {N} symbols")
    pattern = sample_deletion_pattern(N, params.d, rng)
    kept = apply_deletions(modulate(x), pattern)
    y = kept + rng.normal(0.0, np.sqrt(params.sigma2), size=kept.size)
    if return_pattern:
        return y, pattern
    return y
