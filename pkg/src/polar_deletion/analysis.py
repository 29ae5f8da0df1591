"""Static complexity accounting: scenario counts and per-node pruning error."""

from __future__ import annotations

from fractions import Fraction

from .scenarios import (
    PruneKind,
    PrunePolicy,
    ThresholdTable,
    build_threshold_table,
    node_weights,
    segment_split,
    surviving_scenarios,
    table_nodes,
)

__all__ = ["count_scenarios", "feasible_scenario_total", "profile_prune_error"]


def _length(config) -> int:
    return int(getattr(config, "N", config))


def _table_for(N: int, d: int, policy: PrunePolicy, table: ThresholdTable | None):
    if policy.needs_table and table is None:
        table = build_threshold_table(N, d, policy)
    return table


def count_scenarios(config, d: int, policy: PrunePolicy | None = None, table: ThresholdTable | None = None) -> int:
    """Scenario likelihoods an SC pass computes, independent of the input.

    Every node of layer ``lam`` is visited once per phase, i.e. ``2**lam``
    times per branch.  With ``d = 0`` this is ``N (1 + log2 N)``.
    """
    N = _length(config)
    n = N.bit_length() - 1
    policy = policy or PrunePolicy.none()
    table = _table_for(N, d, policy, table)
    total = 0
    for lam in range(n + 1):
        for beta in range(2 ** (n - lam)):
            total += len(surviving_scenarios(N, d, lam, beta, policy, table)[1]) << lam
    return total


def feasible_scenario_total(config, d: int) -> int:
    """Scenario likelihoods of an unpruned pass (all feasible scenarios)."""
    return count_scenarios(config, d, PrunePolicy.none())


def profile_prune_error(
    config, d: int, policy: PrunePolicy, table: ThresholdTable | None = None
) -> list[tuple[tuple[int, int], Fraction]]:
    """Exact pruning error of every thresholded node, lam-major then beta.

    The error of a node is the total joint weight of the scenarios it drops.
    """
    N = _length(config)
    table = _table_for(N, d, policy, table)
    out = []
    for lam, beta in table_nodes(N):
        weights = dict(node_weights(segment_split((lam, 0, beta), N), d))
        if policy.kind is PruneKind.NONE:
            out.append(((lam, beta), Fraction(0)))
            continue
        _, keep = surviving_scenarios(N, d, lam, beta, policy, table)
        kept = set(keep)
        pe = sum((J for s, J in weights.items() if s not in kept), Fraction(0))
        out.append(((lam, beta), pe))
    return out
