"""Scenario-indexed successive-cancellation decoding over the d-deletion channel.

Each factor-graph node ``(lam, phi, beta)`` keeps one likelihood pair per
scenario ``(d1, d2)``: ``d1`` deletions before the node's segment and ``d2``
inside it.  The segment's observation is then the slice
``y[beta*2**lam - d1 : (beta+1)*2**lam - d1 - d2]``.  A parent scenario
``(d1, d2)`` is assembled from the left child's ``(d1, t)`` and the right
child's ``(d1 + t, d2 - t)``, each split ``t`` weighted by the probability
that ``t`` of the ``d2`` deletions land in the left half.

Likelihoods are linear-domain floats.  All scenarios of a node share one
power-of-two exponent (scenarios are summed against each other, so they must
never be normalised independently).  Pruned scenarios are exact zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .polar import CodeConfig
from .scenarios import (
    PrunePolicy,
    ThresholdTable,
    build_threshold_table,
    surviving_scenarios,
)

__all__ = [
    "Counters",
    "DecodeDegenerateError",
    "DecodeResult",
    "DeletionSCDecoder",
    "ScenarioLikelihoods",
    "combine_pair",
    "decode",
    "leaf_likelihood",
    "split_weight",
]


class DecodeDegenerateError(RuntimeError):
    """Every scenario of a node vanished, so no decision can be made."""

    def __init__(self, lam: int, phi: int, beta: int):
        super().__init__(f"all scenarios of node (lam={lam}, phi={phi}, beta={beta}) are zero")
        self.node = (lam, phi, beta)


@dataclass
class Counters:
    scenarios_evaluated: int = 0
    scenarios_pruned: int = 0
    nodes_visited: int = 0
    weight_evals: int = 0


@dataclass
class ScenarioLikelihoods:
    """Likelihood pairs of one node keyed by ``(d1, d2)``.

    True values are ``entries[key] * 2**scale_exp``; the exponent is shared by
    every entry.
    """

    entries: dict[tuple[int, int], tuple[float, float]]
    scale_exp: int = 0


@dataclass
class DecodeResult:
    u_hat: np.ndarray
    per_bit_metric: np.ndarray
    counters: Counters
    root_mantissa: np.ndarray
    root_exponent: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.root_exponent is None:
            self.root_exponent = np.zeros(len(self.root_mantissa), dtype=np.int64)

    @property
    def root_likelihoods(self) -> np.ndarray:
        """``(N, 2)`` array of ``(W0, W1)`` per phase, unscaled."""
        return np.ldexp(self.root_mantissa, self.root_exponent[:, None])


def split_weight(h: int, d2: int, t: int) -> Fraction:
    """P(t of d2 uniform deletions fall in the left half of a 2h segment)."""
    if t < 0 or t > h or d2 - t < 0 or d2 - t > h:
        return Fraction(0)
    return Fraction(math.comb(h, t) * math.comb(h, d2 - t), math.comb(2 * h, d2))


def _gauss_pair(y: np.ndarray, sigma2: float) -> tuple[np.ndarray, np.ndarray]:
    # g(y; +1), g(y; -1) scaled by a per-symbol constant so the pair sums to 1
    L = 2.0 * np.asarray(y, dtype=float) / sigma2
    e = np.exp(-np.abs(L))
    big, small = 1.0 / (1.0 + e), e / (1.0 + e)
    pos = L >= 0
    return np.where(pos, big, small), np.where(pos, small, big)


def leaf_likelihood(y: np.ndarray, beta: int, d1: int, d2: int, sigma2: float) -> tuple[float, float]:
    """Channel likelihood pair of coded symbol ``beta`` under scenario ``(d1, d2)``.

    A deleted symbol (``d2 == 1``) observes nothing and gives ``(1, 1)``;
    otherwise the symbol was received as ``y[beta - d1]``.
    """
    if d2 == 1:
        return 1.0, 1.0
    if d2 != 0:
        raise ValueError(f"a leaf holds at most one deletion, got d2={d2}")
    j = beta - d1
    if not 0 <= j < len(y):
        raise IndexError(f"scenario (d1={d1}) maps leaf {beta} to y[{j}], outside the observation")
    w0, w1 = _gauss_pair(np.array([y[j]]), sigma2)
    return float(w0[0]), float(w1[0])


def _combine(terms, L0, L1, R0, R1, odd: bool, known: int):
    """Apply one SC update to every parent scenario described by ``terms``.

    ``terms[p]`` lists ``(w, li, ri)``: split weight and child entry indices.
    """
    W0, W1 = [], []
    if not odd:
        for row in terms:
            a = b = 0.0
            for w, li, ri in row:
                l0, l1, r0, r1 = L0[li], L1[li], R0[ri], R1[ri]
                a += w * (l0 * r0 + l1 * r1)
                b += w * (l1 * r0 + l0 * r1)
            W0.append(a)
            W1.append(b)
    else:
        # known bit decides which left entry pairs with each hypothesis
        La, Lb = (L0, L1) if known == 0 else (L1, L0)
        for row in terms:
            a = b = 0.0
            for w, li, ri in row:
                a += w * La[li] * R0[ri]
                b += w * Lb[li] * R1[ri]
            W0.append(a)
            W1.append(b)
    return W0, W1


def combine_pair(
    left: ScenarioLikelihoods,
    right: ScenarioLikelihoods,
    d1: int,
    d2: int,
    half: int,
    odd_phase: bool,
    known_bit: int | None = None,
) -> tuple[float, float]:
    """Likelihood pair of parent scenario ``(d1, d2)`` from its two children.

    ``half`` is the children's segment length.  ``odd_phase`` selects the
    second update of a pair, which needs ``known_bit`` (the decision taken at
    the preceding phase).  Missing child entries count as zero.  The result
    is scaled by ``2**(left.scale_exp + right.scale_exp)``.
    """
    if odd_phase and known_bit is None:
        raise ValueError("the second update of a pair needs the known bit")
    lkeys, rkeys = list(left.entries), list(right.entries)
    row = []
    for t in range(max(0, d2 - half), min(half, d2) + 1):
        lk, rk = (d1, t), (d1 + t, d2 - t)
        if lk in left.entries and rk in right.entries:
            row.append((float(split_weight(half, d2, t)), lkeys.index(lk), rkeys.index(rk)))
    L0 = [v[0] for v in left.entries.values()]
    L1 = [v[1] for v in left.entries.values()]
    R0 = [v[0] for v in right.entries.values()]
    R1 = [v[1] for v in right.entries.values()]
    W0, W1 = _combine([row], L0, L1, R0, R1, odd_phase, known_bit or 0)
    return W0[0], W1[0]


class DeletionSCDecoder:
    """SC decoder for a fixed code, deletion count and pruning policy.

    The pruning plan (surviving scenarios and split terms per node) is built
    once; :meth:`decode` can then be called for any number of observations.
    Decode state is local to each call, so one instance can serve many
    codewords; the plan itself is never mutated.
    """

    def __init__(
        self,
        config: CodeConfig,
        d: int,
        policy: PrunePolicy | None = None,
        table: ThresholdTable | None = None,
    ):
        policy = policy or PrunePolicy.none()
        N, n = config.N, config.n
        if not 0 <= d <= N:
            raise ValueError(f"need 0 <= d <= N, got d={d}")
        if policy.needs_table and table is None:
            table = build_threshold_table(N, d, policy)
        self.config, self.d, self.policy, self.table = config, d, policy, table
        self._frozen = config.frozen_mask
        self._fixed = config.frozen_value_vector()

        surv, n_feasible, n_evaluated, n_pruned = [], [], 0, 0
        for lam in range(n + 1):
            layer, counts = [], []
            for beta in range(2 ** (n - lam)):
                feasible, keep = surviving_scenarios(N, d, lam, beta, policy, table)
                layer.append([(s.d1, s.d2) for s in keep])
                counts.append(len(feasible))
                # each node of layer lam is computed once per phase
                n_evaluated += len(keep) << lam
                n_pruned += (len(feasible) - len(keep)) << lam
            surv.append(layer)
            n_feasible.append(counts)
        self._surv, self._n_feasible = surv, n_feasible
        self.static_evaluated, self.static_pruned = n_evaluated, n_pruned

        weights = {}
        terms = [None]
        for lam in range(1, n + 1):
            half = 1 << (lam - 1)
            layer_terms = []
            for beta in range(2 ** (n - lam)):
                lidx = {k: i for i, k in enumerate(surv[lam - 1][2 * beta])}
                ridx = {k: i for i, k in enumerate(surv[lam - 1][2 * beta + 1])}
                node_terms = []
                for d1, d2 in surv[lam][beta]:
                    row = []
                    for t in range(max(0, d2 - half), min(half, d2) + 1):
                        li, ri = lidx.get((d1, t)), ridx.get((d1 + t, d2 - t))
                        if li is None or ri is None:
                            continue
                        key = (half, d2, t)
                        if key not in weights:
                            weights[key] = float(split_weight(half, d2, t))
                        row.append((weights[key], li, ri))
                    node_terms.append(tuple(row))
                layer_terms.append(node_terms)
            terms.append(layer_terms)
        self._terms = terms

    def decode(
        self,
        y: np.ndarray,
        sigma2: float,
        scale_hook: Callable[[int, int, int], float] | None = None,
    ) -> DecodeResult:
        """Decode one received sequence of length ``N - d``.

        ``scale_hook(lam, phi, beta)``, when given, returns a positive factor
        applied to every entry of that node right after it is computed.  It
        exists to check that decisions are invariant to per-node scaling.
        """
        N, n, d = self.config.N, self.config.n, self.d
        y = np.asarray(y, dtype=float).ravel()
        if y.size != N - d:
            raise ValueError(f"expected {N - d} received symbols, got {y.size}")
        if not sigma2 > 0:
            raise ValueError("sigma2 must be positive")

        counters = Counters(weight_evals=self.table.total_weight_evals if self.table else 0)
        g0, g1 = _gauss_pair(y, sigma2)
        g0, g1 = g0.tolist(), g1.tolist()

        P0 = [[None] * (2 ** (n - lam)) for lam in range(n + 1)]
        P1 = [[None] * (2 ** (n - lam)) for lam in range(n + 1)]
        E = [[0] * (2 ** (n - lam)) for lam in range(n + 1)]
        C = [[[0, 0] for _ in range(2 ** (n - lam))] for lam in range(n + 1)]

        for beta, scen in enumerate(self._surv[0]):
            w0 = [1.0 if d2 else g0[beta - d1] for d1, d2 in scen]
            w1 = [1.0 if d2 else g1[beta - d1] for d1, d2 in scen]
            if scale_hook is not None:
                f = scale_hook(0, 0, beta)
                w0, w1 = [v * f for v in w0], [v * f for v in w1]
            P0[0][beta], P1[0][beta] = w0, w1
            counters.nodes_visited += 1
            counters.scenarios_evaluated += len(scen)
            counters.scenarios_pruned += self._n_feasible[0][beta] - len(scen)

        ldexp, frexp = math.ldexp, math.frexp

        def calc(lam: int, phi: int) -> None:
            if lam == 0:
                return
            if phi % 2 == 0:
                calc(lam - 1, phi >> 1)
            odd = phi % 2 == 1
            L0s, L1s, Es = P0[lam - 1], P1[lam - 1], E[lam - 1]
            for beta, node_terms in enumerate(self._terms[lam]):
                W0, W1 = _combine(
                    node_terms,
                    L0s[2 * beta], L1s[2 * beta],
                    L0s[2 * beta + 1], L1s[2 * beta + 1],
                    odd, C[lam][beta][0],
                )
                if scale_hook is not None:
                    f = scale_hook(lam, phi, beta)
                    W0, W1 = [v * f for v in W0], [v * f for v in W1]
                m = max(max(W0, default=0.0), max(W1, default=0.0))
                if not m > 0.0:
                    raise DecodeDegenerateError(lam, phi, beta)
                e = frexp(m)[1]
                P0[lam][beta] = [ldexp(v, -e) for v in W0]
                P1[lam][beta] = [ldexp(v, -e) for v in W1]
                E[lam][beta] = Es[2 * beta] + Es[2 * beta + 1] + e
                counters.nodes_visited += 1
                counters.scenarios_evaluated += len(node_terms)
                counters.scenarios_pruned += self._n_feasible[lam][beta] - len(node_terms)

        def update_bits(lam: int, phi: int) -> None:
            psi = phi >> 1
            for beta in range(2 ** (n - lam)):
                a, b = C[lam][beta]
                C[lam - 1][2 * beta][psi % 2] = a ^ b
                C[lam - 1][2 * beta + 1][psi % 2] = b
            if psi % 2 == 1:
                update_bits(lam - 1, psi)

        u_hat = np.zeros(N, dtype=np.uint8)
        mant = np.zeros((N, 2))
        expo = np.zeros(N, dtype=np.int64)
        metric = []
        for phi in range(N):
            calc(n, phi)
            w0, w1 = P0[n][0][0], P1[n][0][0]
            mant[phi] = w0, w1
            expo[phi] = E[n][0]
            if self._frozen[phi]:
                bit = int(self._fixed[phi])
            else:
                bit = 0 if w0 >= w1 else 1
                metric.append(_log_ratio(w0, w1))
            u_hat[phi] = bit
            C[n][0][phi % 2] = bit
            if phi % 2 == 1:
                update_bits(n, phi)
        return DecodeResult(u_hat, np.array(metric), counters, mant, expo)


def _log_ratio(w0: float, w1: float) -> float:
    if w0 == 0.0 and w1 == 0.0:
        return 0.0
    if w1 == 0.0:
        return math.inf
    if w0 == 0.0:
        return -math.inf
    return math.log(w0) - math.log(w1)


def decode(
    y: np.ndarray,
    config: CodeConfig,
    d: int,
    sigma2: float,
    policy: PrunePolicy | None = None,
    table: ThresholdTable | None = None,
) -> DecodeResult:
    """One-shot convenience wrapper around :class:`DeletionSCDecoder`."""
    return DeletionSCDecoder(config, d, policy, table).decode(y, sigma2)
