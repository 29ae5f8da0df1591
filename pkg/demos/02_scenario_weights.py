"""Scenario weights of one factor-graph node, and how each policy prunes them.

Node (lam=1, phi=1, beta=2) of a length-16 code with 3 deletions splits the
codeword into 4 symbols before the node, 2 inside and 10 after.
"""

from polar_deletion.scenarios import (
    NodeCoord,
    PrunePolicy,
    node_weights,
    peak_set,
    pspc_prune,
    scenario_survives,
    segment_split,
    spspc_threshold,
)

N, d = 16, 3
split = segment_split(NodeCoord(1, 1, 2), N)
print("split (N1, N2, N3):", tuple(split))

weights = node_weights(split, d)
print("\n d1 d2 d3   weight")
for s, w in weights:
    print(f"{s.d1:3d}{s.d2:3d}{s.d3:3d}   {w.numerator * 560 // w.denominator:4d}/560")
print("total:", sum(w for _, w in weights))

# %% One hypergeometric peak per d3 subgroup
ps = peak_set(split, d)
print("\nsubgroup peaks (exact mode):")
for d3 in sorted(ps.gamma):
    print(f"  d3={d3}: peak at d1={ps.d1m[d3]}, d2={ps.d2m[d3]}, weight {ps.gamma[d3] * 560}/560")
lit = peak_set(split, d, ceil_peak=True)
print(f"ceil(mp/n) location for d3=1: d1={lit.d1m[1]}, weight {lit.gamma[1] * 560}/560")

# %% Pruning the same node three ways
tau, pruned = pspc_prune(list(weights), 0.02)
print("\nPSPC pe_bound=0.02 drops", sorted(tuple(s) for s in pruned), "tau2 =", tau)
tau = spspc_threshold(split, d, 0.05)
keep = [s for s, w in weights if scenario_survives(s, w, PrunePolicy.spspc(0.05), tau)]
print("SPSPC pe_bound=0.05: tau2 =", tau, "->", len(keep), "survivors")
keep = [s for s, w in weights if scenario_survives(s, w, PrunePolicy.sssc(1e-6))]
print("SSSC tau1=1e-6:", len(keep), "survivors")
