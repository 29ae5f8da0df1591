"""Deletion scenarios, joint weights and the pruning policies built on them.

A factor-graph node ``(lam, phi, beta)`` covers the transmitted symbols
``[beta * 2**lam, (beta + 1) * 2**lam)``.  The block splits into a prefix of
``N1`` symbols, the node segment of ``N2`` and a suffix of ``N3``.  A
*scenario* ``(d1, d2, d3)`` allocates the ``d`` deletions across these three
parts; its *joint weight*

    J = C(N1, d1) C(N2, d2) C(N3, d3) / C(N, d)

is the probability of that allocation under uniformly placed deletions.
Weights depend on ``(lam, beta)`` only, never on the phase ``phi``.

All weights and thresholds are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "NodeCoord",
    "PeakSet",
    "PruneKind",
    "PrunePolicy",
    "Scenario",
    "SegmentSplit",
    "ThresholdTable",
    "as_fraction",
    "build_threshold_table",
    "enumerate_scenarios",
    "feasible_subgroups",
    "hypergeom_mode",
    "hypergeom_pdf",
    "joint_weight",
    "node_prune_error",
    "node_weights",
    "ceil_peak_location",
    "peak_set",
    "pspc_prune",
    "pspc_threshold",
    "scenario_survives",
    "segment_split",
    "spspc_threshold",
    "spspc_threshold_from_peaks",
    "subgroup_peak",
    "surviving_scenarios",
    "table_nodes",
]


class NodeCoord(NamedTuple):
    lam: int
    phi: int
    beta: int

    def validate(self, N: int) -> None:
        n = N.bit_length() - 1
        if not 0 <= self.lam <= n:
            raise ValueError(f"layer {self.lam} outside [0, {n}]")
        if not 0 <= self.phi < 2**self.lam:
            raise ValueError(f"phase {self.phi} outside [0, {2**self.lam})")
        if not 0 <= self.beta < 2 ** (n - self.lam):
            raise ValueError(f"branch {self.beta} outside [0, {2 ** (n - self.lam)})")


class SegmentSplit(NamedTuple):
    N1: int
    N2: int
    N3: int

    @property
    def N(self) -> int:
        return self.N1 + self.N2 + self.N3


class Scenario(NamedTuple):
    d1: int
    d2: int
    d3: int


def as_fraction(value) -> Fraction:
    """Exact rational from a float, int, str or Fraction.

    Floats go through their shortest ``repr`` so ``1e-6`` becomes exactly
    ``1/1000000`` rather than the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def _split(lam: int, beta: int, N: int) -> SegmentSplit:
    size = 1 << lam
    return SegmentSplit(beta * size, size, N - (beta + 1) * size)


def segment_split(node: NodeCoord, N: int) -> SegmentSplit:
    node = NodeCoord(*node)
    node.validate(N)
    return _split(node.lam, node.beta, N)


def enumerate_scenarios(split: SegmentSplit, d: int) -> list[Scenario]:
    """Feasible scenarios ordered by ascending ``d3``, then ascending ``d1``."""
    N1, N2, N3 = split
    out = []
    for d3 in range(min(d, N3) + 1):
        rest = d - d3
        for d1 in range(max(0, rest - N2), min(N1, rest) + 1):
            out.append(Scenario(d1, rest - d1, d3))
    return out


def joint_weight(split: SegmentSplit, s: Scenario) -> Fraction:
    """Occurrence probability of scenario ``s``; zero when infeasible."""
    N1, N2, N3 = split
    d1, d2, d3 = s
    if min(d1, d2, d3) < 0:
        return Fraction(0)
    num = math.comb(N1, d1) * math.comb(N2, d2) * math.comb(N3, d3)
    return Fraction(num, math.comb(N1 + N2 + N3, d1 + d2 + d3))


@lru_cache(maxsize=65536)
def node_weights(split: SegmentSplit, d: int) -> tuple[tuple[Scenario, Fraction], ...]:
    """All feasible scenarios of a node paired with their joint weights."""
    return tuple((s, joint_weight(split, s)) for s in enumerate_scenarios(split, d))


def node_prune_error(weights: Iterable[Fraction]) -> Fraction:
    return sum(weights, Fraction(0))


def hypergeom_pdf(k: int, p: int, m: int, n: int) -> Fraction:
    """P(X = k) for X ~ H(p, m, n): p draws, m marked items, population n."""
    if k < 0 or k > p or p > n or m > n:
        return Fraction(0)
    return Fraction(math.comb(m, k) * math.comb(n - m, p - k), math.comb(n, p))


def _support(p: int, m: int, n: int) -> tuple[int, int]:
    return max(0, p - (n - m)), min(m, p)


def hypergeom_mode(p: int, m: int, n: int) -> int:
    """Smallest argmax of the hypergeometric pmf.

    The mode is ``floor((m + 1)(p + 1) / (n + 2))``; when that ratio is an
    integer the value below it ties and is returned instead.
    """
    lo, hi = _support(p, m, n)
    num, den = (m + 1) * (p + 1), n + 2
    k = num // den
    if num % den == 0 and k - 1 >= lo:
        k -= 1
    return min(max(k, lo), hi)


def ceil_peak_location(p: int, m: int, n: int) -> int:
    """``ceil(m p / n)`` clamped to the support; not always the true mode."""
    lo, hi = _support(p, m, n)
    k = -((-m * p) // n) if n else 0
    return min(max(k, lo), hi)


def feasible_subgroups(split: SegmentSplit, d: int) -> range:
    """Values of ``d3`` for which some ``(d1, d2)`` is feasible."""
    N1, N2, N3 = split
    return range(max(0, d - (N1 + N2)), min(d, N3) + 1)


def subgroup_peak(
    split: SegmentSplit, d: int, d3: int, ceil_peak: bool = False
) -> tuple[Fraction, int, int]:
    """Largest joint weight among scenarios sharing ``d3``.

    Within a subgroup the weight is proportional to a hypergeometric pmf in
    ``d1`` with ``d - d3`` draws from ``N1 + N2`` symbols, ``N1`` of them
    marked, so the peak sits at its mode.  Returns ``(gamma, d1m, d2m)``.
    """
    if d3 not in feasible_subgroups(split, d):
        raise ValueError(f"subgroup d3={d3} infeasible for split {tuple(split)}, d={d}")
    p = d - d3
    locate = ceil_peak_location if ceil_peak else hypergeom_mode
    d1m = locate(p, split.N1, split.N1 + split.N2)
    d2m = p - d1m
    return joint_weight(split, Scenario(d1m, d2m, d3)), d1m, d2m


@dataclass(frozen=True)
class PeakSet:
    """Subgroup peaks of one node and their ascending prefix sums.

    ``gamma``, ``d1m`` and ``d2m`` are keyed by ``d3``; ``delta`` holds the
    peaks sorted ascending and ``eta[c]`` the sum of the first ``c + 1``.
    ``theta`` is the node's total feasible scenario count.
    """

    gamma: dict[int, Fraction]
    d1m: dict[int, int]
    d2m: dict[int, int]
    delta: tuple[Fraction, ...]
    eta: tuple[Fraction, ...]
    theta: int
    k: int = 0


def peak_set(split: SegmentSplit, d: int, ceil_peak: bool = False) -> PeakSet:
    gamma, d1m, d2m = {}, {}, {}
    for d3 in feasible_subgroups(split, d):
        gamma[d3], d1m[d3], d2m[d3] = subgroup_peak(split, d, d3, ceil_peak)
    delta = tuple(sorted(gamma.values()))
    eta, acc = [], Fraction(0)
    for v in delta:
        acc += v
        eta.append(acc)
    theta = len(enumerate_scenarios(split, d))
    return PeakSet(gamma, d1m, d2m, delta, tuple(eta), theta)


def pspc_threshold(weights: Sequence[Fraction], pe_bound) -> tuple[Fraction, int]:
    """Per-node threshold from ascending joint weights.

    ``k`` is the longest prefix whose sum stays within ``pe_bound``, capped
    so that at least one scenario survives.  Returns ``(tau2, k)`` with
    ``tau2 = weights[k - 1]``, or 0 when nothing can be pruned.  The pruned
    scenarios are the first ``k`` of ``weights``.
    """
    if not weights:
        raise ValueError("node has no scenarios")
    bound = as_fraction(pe_bound)
    k, acc = 0, Fraction(0)
    for w in weights[:-1]:
        acc += w
        if acc > bound:
            break
        k += 1
    return (weights[k - 1] if k else Fraction(0)), k


def pspc_prune(
    scenarios: Sequence[tuple[Scenario, Fraction]], pe_bound
) -> tuple[Fraction, frozenset[Scenario]]:
    """Sort a node's scenarios by weight (stable) and apply :func:`pspc_threshold`."""
    ranked = sorted(scenarios, key=lambda sw: sw[1])
    tau, k = pspc_threshold([w for _, w in ranked], pe_bound)
    return tau, frozenset(s for s, _ in ranked[:k])


def spspc_threshold_from_peaks(peaks: Iterable[Fraction], pe_bound) -> tuple[Fraction, int]:
    """Threshold from subgroup peaks alone.

    With ``delta`` the ascending peaks and ``eta`` their prefix sums, ``k`` is
    the largest index with ``eta[k] <= pe_bound * eta[-1]`` and the threshold
    is ``delta[k]``.  If even the smallest peak exceeds that budget the
    threshold is the budget itself.  Returns ``(tau2, k)`` with 1-based ``k``
    (0 in the fallback case).
    """
    delta = sorted(peaks)
    if not delta:
        raise ValueError("node has no feasible subgroups")
    budget = as_fraction(pe_bound) * sum(delta, Fraction(0))
    k, acc = 0, Fraction(0)
    for v in delta:
        acc += v
        if acc > budget:
            break
        k += 1
    if k == 0:
        return budget, 0
    return delta[k - 1], k


def spspc_threshold(split: SegmentSplit, d: int, pe_bound, ceil_peak: bool = False) -> Fraction:
    ps = peak_set(split, d, ceil_peak)
    return spspc_threshold_from_peaks(ps.delta, pe_bound)[0]


class PruneKind(enum.Enum):
    NONE = "none"
    SSSC = "sssc"
    PSPC = "pspc"
    SPSPC = "spspc"


@dataclass(frozen=True)
class PrunePolicy:
    """Which scenarios a decoder may skip.

    ``tau1`` is the global weight threshold of SSSC; ``pe_bound`` the
    per-node pruning-error budget of PSPC and SPSPC.  ``literal_leq`` makes
    PSPC prune every scenario with weight at most its threshold instead of
    exactly the first ``k``; ``ceil_peak`` locates SPSPC peaks with
    ``ceil(m p / n)`` instead of the exact mode.
    """

    kind: PruneKind = PruneKind.NONE
    tau1: Fraction = Fraction(0)
    pe_bound: Fraction = Fraction(0)
    ceil_peak: bool = False
    literal_leq: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", PruneKind(self.kind))
        tau1, pe = as_fraction(self.tau1), as_fraction(self.pe_bound)
        if tau1 < 0:
            raise ValueError(f"tau1 must be non-negative, got {self.tau1}")
        if not 0 <= pe < 1:
            raise ValueError(f"pe_bound must lie in [0, 1), got {self.pe_bound}")
        object.__setattr__(self, "tau1", tau1)
        object.__setattr__(self, "pe_bound", pe)

    @classmethod
    def none(cls) -> "PrunePolicy":
        return cls(PruneKind.NONE)

    @classmethod
    def sssc(cls, tau1) -> "PrunePolicy":
        return cls(PruneKind.SSSC, tau1=tau1)

    @classmethod
    def pspc(cls, pe_bound, literal_leq: bool = False) -> "PrunePolicy":
        return cls(PruneKind.PSPC, pe_bound=pe_bound, literal_leq=literal_leq)

    @classmethod
    def spspc(cls, pe_bound, ceil_peak: bool = False) -> "PrunePolicy":
        return cls(PruneKind.SPSPC, pe_bound=pe_bound, ceil_peak=ceil_peak)

    @property
    def needs_table(self) -> bool:
        return self.kind in (PruneKind.PSPC, PruneKind.SPSPC)


def scenario_survives(
    s: Scenario,
    J: Fraction,
    policy: PrunePolicy,
    tau: Fraction | None = None,
    pruned: frozenset[Scenario] = frozenset(),
) -> bool:
    kind = policy.kind
    if kind is PruneKind.NONE:
        return True
    if kind is PruneKind.SSSC:
        return J > policy.tau1
    if kind is PruneKind.PSPC and not policy.literal_leq:
        return s not in pruned
    if tau is None:
        raise ValueError(f"{kind.value} needs the node threshold")
    return J > tau


def table_nodes(N: int) -> list[tuple[int, int]]:
    """``(lam, beta)`` pairs that carry a threshold, lam-major order."""
    n = N.bit_length() - 1
    return [(lam, beta) for lam in range(1, n) for beta in range(2 ** (n - lam))]


@dataclass(frozen=True)
class ThresholdTable:
    """Offline per-``(lam, beta)`` thresholds for layers ``1 .. n-1``.

    Every phase of a layer shares the entry of its branch.  ``pruned`` lists
    the scenarios PSPC drops at each node; ``weight_evals`` the number of
    joint weights evaluated to produce each entry.
    """

    N: int
    d: int
    policy: PrunePolicy
    thresholds: dict[tuple[int, int], Fraction]
    pruned: dict[tuple[int, int], frozenset[Scenario]] = field(default_factory=dict)
    weight_evals: dict[tuple[int, int], int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.thresholds)

    def threshold(self, lam: int, beta: int) -> Fraction:
        return self.thresholds[(lam, beta)]

    @property
    def total_weight_evals(self) -> int:
        return sum(self.weight_evals.values())

    def rows(self):
        """``(lam, beta, numerator, denominator, float, weight_evals)`` rows."""
        for (lam, beta), tau in self.thresholds.items():
            yield lam, beta, tau.numerator, tau.denominator, float(tau), self.weight_evals[(lam, beta)]


def build_threshold_table(config, d: int, policy: PrunePolicy) -> ThresholdTable:
    """Compute one threshold per ``(lam, beta)`` of layers ``1 .. n-1``.

    ``config`` is a :class:`~polar_deletion.polar.CodeConfig` or a bare code
    length.
    """
    N = int(getattr(config, "N", config))
    if not policy.needs_table:
        raise ValueError(f"policy {policy.kind.value} does not use a threshold table")
    thresholds, pruned, evals = {}, {}, {}
    for lam, beta in table_nodes(N):
        split = _split(lam, beta, N)
        key = (lam, beta)
        if policy.kind is PruneKind.PSPC:
            scen = [(s, joint_weight(split, s)) for s in enumerate_scenarios(split, d)]
            evals[key] = len(scen)
            thresholds[key], pruned[key] = pspc_prune(scen, policy.pe_bound)
        else:
            ps = peak_set(split, d, policy.ceil_peak)
            evals[key] = len(ps.gamma)
            thresholds[key] = spspc_threshold_from_peaks(ps.delta, policy.pe_bound)[0]
    return ThresholdTable(N, d, policy, thresholds, pruned, evals)


def surviving_scenarios(
    N: int,
    d: int,
    lam: int,
    beta: int,
    policy: PrunePolicy,
    table: ThresholdTable | None = None,
) -> tuple[list[Scenario], list[Scenario]]:
    """``(feasible, survivors)`` for node ``(lam, *, beta)``.

    Layer 0 (channel observations) and the root layer are never pruned.
    """
    n = N.bit_length() - 1
    split = _split(lam, beta, N)
    weighted = node_weights(split, d)
    feasible = [s for s, _ in weighted]
    if policy.kind is PruneKind.NONE or lam == 0 or lam == n:
        return feasible, feasible
    tau, pruned = None, frozenset()
    if policy.needs_table:
        if table is None:
            raise ValueError(f"policy {policy.kind.value} needs a threshold table")
        if table.N != N or table.d != d or table.policy != policy:
            raise ValueError("threshold table was built for a different code, d or policy")
        tau = table.thresholds[(lam, beta)]
        pruned = table.pruned.get((lam, beta), frozenset())
    keep = [s for s, J in weighted if scenario_survives(s, J, policy, tau, pruned)]
    return feasible, keep
