"""Monte Carlo frame/bit error simulation over the noisy d-deletion channel."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, transmit, trial_seed
from .decoder import DecodeDegenerateError, DeletionSCDecoder
from .polar import CodeConfig, encode
from .scenarios import PrunePolicy, ThresholdTable

__all__ = ["SimulationSummary", "TrialRecord", "run_simulation", "summarize"]


@dataclass(frozen=True)
class TrialRecord:
    trial_seed: int
    frame_error: int
    bit_errors: int
    scenarios_evaluated: int
    elapsed_us: int
    degenerate: int = 0

    FIELDS = ("trial_seed", "frame_error", "bit_errors", "scenarios_evaluated", "elapsed_us", "degenerate")

    def as_row(self) -> tuple:
        return tuple(getattr(self, f) for f in self.FIELDS)


@dataclass(frozen=True)
class SimulationSummary:
    trials: int
    frame_errors: int
    bit_errors: int
    info_bits: int
    degenerate: int
    mean_scenarios: float
    elapsed_s: float

    @property
    def fer(self) -> float:
        return self.frame_errors / self.trials if self.trials else float("nan")

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.trials * self.info_bits) if self.trials else float("nan")


def _run_chunk(args) -> list[TrialRecord]:
    config, d, sigma2, policy, table, seed, trials = args
    decoder = DeletionSCDecoder(config, d, policy, table)
    info = config.info
    out = []
    for t in trials:
        ts = trial_seed(seed, t)
        rng = np.random.default_rng(ts)
        u = config.embed(rng.integers(0, 2, config.K, dtype=np.uint8))
        y = transmit(encode(u), ChannelParams(d, sigma2, ts), rng)
        start = time.perf_counter()
        try:
            res = decoder.decode(y, sigma2)
        except DecodeDegenerateError:
            # no decision possible: the whole frame counts as lost
            elapsed = int((time.perf_counter() - start) * 1e6)
            out.append(TrialRecord(ts, 1, config.K, 0, elapsed, 1))
            continue
        elapsed = int((time.perf_counter() - start) * 1e6)
        errs = int(np.count_nonzero(res.u_hat[info] != u[info]))
        out.append(TrialRecord(ts, int(errs > 0), errs, res.counters.scenarios_evaluated, elapsed))
    return out


def run_simulation(
    config: CodeConfig,
    d: int,
    sigma2: float,
    policy: PrunePolicy | None = None,
    trials: int = 1000,
    seed: int = 0,
    table: ThresholdTable | None = None,
    workers: int = 1,
) -> list[TrialRecord]:
    """Encode random frames, send them through the channel and decode.

    Trial ``t`` draws everything from ``trial_seed(seed, t)``; records come
    back in trial order whatever ``workers`` is.
    """
    policy = policy or PrunePolicy.none()
    if trials < 0:
        raise ValueError("trials must be non-negative")
    if trials == 0:
        return []
    if workers <= 1:
        return _run_chunk((config, d, sigma2, policy, table, seed, range(trials)))
    chunks = [range(i, trials, workers) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_chunk, [(config, d, sigma2, policy, table, seed, c) for c in chunks]))
    by_trial = {}
    for c, part in zip(chunks, parts):
        by_trial.update(zip(c, part))
    return [by_trial[t] for t in range(trials)]


def summarize(records: list[TrialRecord], info_bits: int, elapsed_s: float = 0.0) -> SimulationSummary:
    n = len(records)
    return SimulationSummary(
        trials=n,
        frame_errors=sum(r.frame_error for r in records),
        bit_errors=sum(r.bit_errors for r in records),
        info_bits=info_bits,
        degenerate=sum(r.degenerate for r in records),
        mean_scenarios=(sum(r.scenarios_evaluated for r in records) / n) if n else 0.0,
        elapsed_s=elapsed_s,
    )
