"""Exhaustive deletion-pattern decoder used as an exactness oracle.

Every size-d deletion pattern is expanded into a length-N observation in
which the deleted positions are erasures.  Plain SC bit-channel likelihoods
are computed for each pattern and averaged with uniform weight.  Decisions
are taken on the averaged pairs and fed back to every pattern, so the result
is the mixture decoder the scenario recursion computes in closed form.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .decoder import Counters, DecodeResult
from .polar import CodeConfig

__all__ = ["MAX_PATTERNS", "bit_channel", "brute_force_decode"]

MAX_PATTERNS = 10**6


def bit_channel(leaves: list[tuple[float, float]], u_prev: list[int], i: int) -> tuple[float, float]:
    """``(W(0), W(1))`` of bit-channel ``i`` given decisions ``u_prev[:i]``.

    Straight from the two-step Arikan recursion on contiguous halves, without
    the 1/2 factors.  Costs O(len(leaves)) per call.
    """
    M = len(leaves)
    if M == 1:
        return leaves[0]
    h = M // 2
    psi = i // 2
    pairs = 2 * psi
    upper = [u_prev[k] ^ u_prev[k + 1] for k in range(0, pairs, 2)]
    lower = [u_prev[k + 1] for k in range(0, pairs, 2)]
    l0, l1 = bit_channel(leaves[:h], upper, psi)
    r0, r1 = bit_channel(leaves[h:], lower, psi)
    if i % 2 == 0:
        return l0 * r0 + l1 * r1, l1 * r0 + l0 * r1
    prev = u_prev[i - 1]
    if prev == 0:
        return l0 * r0, l1 * r1
    return l1 * r0, l0 * r1


def brute_force_decode(y: np.ndarray, config: CodeConfig, d: int, sigma2: float) -> DecodeResult:
    """Decode by averaging SC likelihoods over all ``C(N, d)`` deletion patterns."""
    N = config.N
    y = np.asarray(y, dtype=float).ravel()
    if y.size != N - d:
        raise ValueError(f"expected {N - d} received symbols, got {y.size}")
    total = math.comb(N, d)
    if total > MAX_PATTERNS:
        raise ValueError(f"C({N}, {d}) = {total} patterns exceeds the oracle limit {MAX_PATTERNS}")

    # same per-symbol scaling as the decoder: each received pair sums to 1
    def received(v: float) -> tuple[float, float]:
        L = 2.0 * v / sigma2
        if L >= 0:
            e = math.exp(-L)
            return 1.0 / (1.0 + e), e / (1.0 + e)
        e = math.exp(L)
        return e / (1.0 + e), 1.0 / (1.0 + e)

    obs = [received(v) for v in y]
    patterns = []
    for deleted in itertools.combinations(range(N), d):
        gone = set(deleted)
        it = iter(obs)
        patterns.append([(1.0, 1.0) if j in gone else next(it) for j in range(N)])

    frozen = config.frozen_mask
    fixed = config.frozen_value_vector()
    u: list[int] = []
    mant = np.zeros((N, 2))
    metric = []
    for i in range(N):
        s0 = s1 = 0.0
        for leaves in patterns:
            w0, w1 = bit_channel(leaves, u, i)
            s0 += w0
            s1 += w1
        w0, w1 = s0 / total, s1 / total
        mant[i] = w0, w1
        if frozen[i]:
            bit = int(fixed[i])
        else:
            bit = 0 if w0 >= w1 else 1
            metric.append(math.log(w0 / w1) if w0 > 0 and w1 > 0 else math.copysign(math.inf, w0 - w1))
        u.append(bit)
    return DecodeResult(np.array(u, dtype=np.uint8), np.array(metric), Counters(), mant)
