"""Per-node pruning error of the three policies on a (512, 256) code with d=5.

A single global threshold gives wildly uneven error across nodes; the
per-node budget keeps every node under the same ceiling.
"""

import numpy as np

from polar_deletion import CodeConfig, PrunePolicy, profile_prune_error

cfg, d = CodeConfig.build(512, 256), 5
policies = {
    "SSSC tau1=1e-6": PrunePolicy.sssc(1e-6),
    "PSPC pe=1e-6": PrunePolicy.pspc(1e-6),
    "SPSPC pe=1e-4": PrunePolicy.spspc(1e-4),
}
for name, policy in policies.items():
    pe = np.array([float(v) for _, v in profile_prune_error(cfg, d, policy)])
    nz = pe[pe > 0]
    print(f"{name:16s} nodes={pe.size} nonzero={nz.size:3d} "
          f"min={nz.min() if nz.size else 0:.2e} median={np.median(pe):.2e} max={pe.max():.2e}")

# the profile is an ordinary list; dump a few layer-1 entries
prof = profile_prune_error(cfg, d, PrunePolicy.sssc(1e-6))
print("\nfirst layer-1 nodes under SSSC:")
for (lam, beta), v in prof[:5]:
    print(f"  lam={lam} beta={beta} Pe={float(v):.3e}")
