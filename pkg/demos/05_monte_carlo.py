"""Frame error rate of SC decoding over the deletion channel, with and without pruning."""

import time

from polar_deletion import CodeConfig, PrunePolicy, esn0_db_to_sigma2, run_simulation
from polar_deletion.simulate import summarize

cfg, d, trials = CodeConfig.build(64, 32), 2, 500
policies = {
    "none": PrunePolicy.none(),
    "sssc 1e-3": PrunePolicy.sssc(1e-3),
    "pspc 1e-6": PrunePolicy.pspc(1e-6),
    "pspc 1e-2": PrunePolicy.pspc(1e-2),
    "spspc 1e-4": PrunePolicy.spspc(1e-4),
}
for esn0 in (4.0, 6.0):
    sigma2 = esn0_db_to_sigma2(esn0)
    print(f"Es/N0 = {esn0} dB (sigma2 = {sigma2:.4f})")
    for name, policy in policies.items():
        t0 = time.perf_counter()
        recs = run_simulation(cfg, d, sigma2, policy, trials, seed=1)
        s = summarize(recs, cfg.K, time.perf_counter() - t0)
        print(f"  {name:11s} FER={s.fer:.3f} BER={s.ber:.4f} "
              f"scenarios/frame={s.mean_scenarios:.0f} time={s.elapsed_s:.1f}s")
