"""Acceptance criteria, one test (or parametrized family) per criterion.

A PASS/FAIL line per criterion is printed in the pytest terminal summary.
"""

import csv
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from polar_deletion.analysis import count_scenarios, profile_prune_error
from polar_deletion.channel import ChannelParams, esn0_db_to_sigma2, transmit, trial_rng
from polar_deletion.cli import COUNT_HEADER, main
from polar_deletion.decoder import DeletionSCDecoder
from polar_deletion.oracle import brute_force_decode
from polar_deletion.polar import CodeConfig, encode, sc_decode_reference
from polar_deletion.scenarios import (
    NodeCoord,
    PrunePolicy,
    Scenario,
    build_threshold_table,
    enumerate_scenarios,
    joint_weight,
    node_weights,
    peak_set,
    segment_split,
    table_nodes,
)

criterion = pytest.mark.criterion

# node (1, 1, 2) of N=16 with d=3; all (d3, d1) rows including the infeasible one
WORKED_WEIGHTS = [
    ((0, 3, 0), 0),
    ((1, 2, 0), 4),
    ((2, 1, 0), 12),
    ((3, 0, 0), 4),
    ((0, 2, 1), 10),
    ((1, 1, 1), 80),
    ((2, 0, 1), 60),
    ((0, 1, 2), 90),
    ((1, 0, 2), 180),
    ((0, 0, 3), 120),
]
# subgroup peaks of that node: d3 -> ((d1, d2) at the peak, numerator over 560)
WORKED_PEAKS = {0: ((2, 1), 12), 1: ((1, 1), 80), 2: ((1, 0), 180), 3: ((0, 0), 120)}
# reference scenario counts: N -> (SC, SSSC, SC-SPSPC)
REFERENCE_COUNTS = {
    512: (82944, 63074, 54514),
    1024: (1003904, 572500, 537052),
    2048: (2834432, 1203772, 1180508),
}


def frame(cfg, d, sigma2, seed, trial):
    rng = trial_rng(seed, trial)
    u = cfg.embed(rng.integers(0, 2, cfg.K))
    return u, transmit(encode(u), ChannelParams(d, sigma2), rng)


@criterion("criterion 1", "worked-node joint weights exact over 560")
def test_worked_node_weights(record_property):
    start = time.perf_counter()
    split = segment_split(NodeCoord(1, 1, 2), 16)
    assert split == (4, 2, 10)
    for s, num in WORKED_WEIGHTS:
        assert joint_weight(split, Scenario(*s)) == Fraction(num, 560)
    assert [tuple(s) for s in enumerate_scenarios(split, 3)] == [s for s, num in WORKED_WEIGHTS if num]
    assert time.perf_counter() - start < 1.0


@criterion("criterion 2", "worked-node subgroup peaks exact (exact-mode location)")
def test_worked_node_peaks(record_property):
    start = time.perf_counter()
    split = segment_split(NodeCoord(1, 1, 2), 16)
    ps = peak_set(split, 3)
    for d3, (loc, num) in WORKED_PEAKS.items():
        assert (ps.d1m[d3], ps.d2m[d3]) == loc
        assert ps.gamma[d3] == Fraction(num, 560)
    literal = peak_set(split, 3, ceil_peak=True)
    record_property("note", f"ceil(mp/n) puts group d3=1 at {(literal.d1m[1], literal.d2m[1])}"
                            f" with {literal.gamma[1] * 560}/560")
    assert (literal.d1m[1], literal.d2m[1]) != WORKED_PEAKS[1][0]
    assert time.perf_counter() - start < 1.0


@criterion("criterion 3", "every node's joint weights sum to exactly 1")
def test_normalization():
    start = time.perf_counter()
    for N in (16, 64, 512):
        n = N.bit_length() - 1
        for d in range(1, 9):
            for lam in range(n + 1):
                for beta in range(2 ** (n - lam)):
                    split = segment_split(NodeCoord(lam, 0, beta), N)
                    assert sum(w for _, w in node_weights(split, d)) == 1
    assert time.perf_counter() - start < 30.0


@criterion("criterion 4", "decoder equals brute-force pattern oracle")
@pytest.mark.parametrize("N,d", [(4, 1), (4, 2), (8, 1), (8, 2)])
def test_oracle_equivalence(N, d, record_property):
    start = time.perf_counter()
    sigma2 = 0.5
    cfg = CodeConfig.build(N, N // 2)
    dec = DeletionSCDecoder(cfg, d)
    worst = 0.0
    for t in range(100):
        _, y = frame(cfg, d, sigma2, 4000 + 10 * N + d, t)
        a = dec.decode(y, sigma2)
        b = brute_force_decode(y, cfg, d, sigma2)
        np.testing.assert_array_equal(a.u_hat, b.u_hat)
        got, want = a.root_likelihoods, b.root_mantissa
        rel = np.abs(got - want) / np.maximum(np.abs(want), np.finfo(float).tiny)
        worst = max(worst, float(rel.max()))
    record_property("note", f"(N={N}, d={d}) max relative error {worst:.2e}")
    assert worst <= 1e-9
    assert time.perf_counter() - start < 120.0


@criterion("criterion 5", "d=0 decoding identical to textbook SC")
@pytest.mark.parametrize("N", [64, 256])
def test_d0_reduction(N):
    start = time.perf_counter()
    sigma2 = 0.5
    cfg = CodeConfig.build(N, N // 2)
    dec = DeletionSCDecoder(cfg, 0)
    for t in range(1000):
        _, y = frame(cfg, 0, sigma2, 5000 + N, t)
        ref = sc_decode_reference(2.0 * y / sigma2, cfg)
        np.testing.assert_array_equal(dec.decode(y, sigma2).u_hat, ref)
    assert time.perf_counter() - start < 60.0


@criterion("criterion 6", "SSSC per-node Pe spans < 1e-8 to > 1e-6 at (512,256), d=5")
def test_sssc_profile(record_property):
    start = time.perf_counter()
    prof = profile_prune_error(CodeConfig.build(512, 256), 5, PrunePolicy.sssc(Fraction(1, 10**6)))
    vals = [pe for _, pe in prof]
    nonzero = [v for v in vals if v > 0]
    lo, hi = min(nonzero), max(vals)
    record_property("note", f"min nonzero Pe {float(lo):.3e}, max Pe {float(hi):.3e}, "
                            f"{len(nonzero)} of {len(vals)} nodes nonzero")
    assert lo < Fraction(1, 10**8)
    assert hi > Fraction(1, 10**6)
    assert time.perf_counter() - start < 60.0


@criterion("criterion 7", "PSPC realized Pe within the bound at every node")
@pytest.mark.parametrize("bound", [Fraction(1, 10**2), Fraction(1, 10**4), Fraction(1, 10**6)])
def test_pspc_guarantee(bound):
    start = time.perf_counter()
    cfg = CodeConfig.build(512, 256)
    prof = profile_prune_error(cfg, 5, PrunePolicy.pspc(bound))
    assert len(prof) == 510
    assert all(pe <= bound for _, pe in prof)
    assert time.perf_counter() - start < 60.0


@criterion("criterion 8", "SPSPC uses at most d+1 weight evaluations per entry")
@pytest.mark.parametrize("d", [1, 3, 5, 8])
def test_spspc_work_bound(d, record_property):
    start = time.perf_counter()
    N = 512
    spspc = build_threshold_table(N, d, PrunePolicy.spspc(1e-6))
    pspc = build_threshold_table(N, d, PrunePolicy.pspc(1e-6))
    for key in table_nodes(N):
        assert spspc.weight_evals[key] <= d + 1
        assert pspc.weight_evals[key] <= (d + 1) * (d + 2) // 2
    record_property("note", f"d={d}: SPSPC {spspc.total_weight_evals} vs PSPC "
                            f"{pspc.total_weight_evals} weight evaluations")
    assert spspc.total_weight_evals <= pspc.total_weight_evals
    assert time.perf_counter() - start < 60.0


@criterion("criterion 9", "threshold table holds N-2 entries")
@pytest.mark.parametrize("N", [8, 512, 2048])
def test_table_storage(N):
    start = time.perf_counter()
    for policy in (PrunePolicy.pspc(1e-6), PrunePolicy.spspc(1e-6)):
        assert len(build_threshold_table(N, 5, policy)) == N - 2
    assert time.perf_counter() - start < 60.0


def _match_score(row, target):
    return sum(abs(math.log(a / b)) for a, b in zip(row, target))


@criterion("criterion 10", "scenario-count ordering SC > SSSC > SC-SPSPC")
def test_scenario_count_ordering(tmp_path, record_property):
    start = time.perf_counter()
    out = tmp_path / "count.csv"
    # pe_bound 1e-4 gives the SSSC -> SC-SPSPC reduction closest to the
    # reference one at N=512 among the swept values below
    assert main(["count", "--n", "512", "1024", "2048", "--d", "5",
                 "--tau1", "1e-6", "--pe-bound", "1e-4", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == COUNT_HEADER
    for r in rows[1:]:
        N, sc, sssc, spspc = int(r[0]), int(r[2]), int(r[3]), int(r[5])
        record_property("note", f"N={N} d=5: SC {sc} SSSC {sssc} SC-SPSPC {spspc} "
                                f"(reference {REFERENCE_COUNTS[N][0]} {REFERENCE_COUNTS[N][1]} {REFERENCE_COUNTS[N][2]})")
        assert sc > sssc > spspc

    # exact-match attempt: d in 1..6, tau1 = 1e-6, swept pe_bound
    tau1 = Fraction(1, 10**6)
    sweep = [Fraction(1, 10**6), Fraction(1, 10**5), Fraction(1, 10**4), Fraction(1, 10**3),
             Fraction(3, 10**3), Fraction(1, 10**2), Fraction(3, 10**2), Fraction(1, 10)]
    best = None
    exact = 0
    for d in range(1, 7):
        base = {N: (count_scenarios(N, d), count_scenarios(N, d, PrunePolicy.sssc(tau1))) for N in REFERENCE_COUNTS}
        for pe in sweep:
            score = 0.0
            for N, target in REFERENCE_COUNTS.items():
                row = (*base[N], count_scenarios(N, d, PrunePolicy.spspc(pe)))
                exact += sum(a == b for a, b in zip(row, target))
                score += _match_score(row, target)
            if best is None or score < best[0]:
                best = (score, d, pe)
    score, d, pe = best
    record_property("note", f"best match over the sweep: d={d}, tau1=1e-6, pe_bound={float(pe):g}, "
                            f"mean |log ratio| {score / 9:.3f}; exact cell matches: {exact}")
    assert time.perf_counter() - start < 600.0


@criterion("criterion 11", "PSPC at pe_bound 1e-6 does not degrade FER")
def test_pspc_fer(record_property):
    start = time.perf_counter()
    from polar_deletion.simulate import run_simulation, summarize

    cfg, d, trials = CodeConfig.build(64, 32), 2, 2000
    sigma2 = esn0_db_to_sigma2(6.0)
    fer = {}
    for name, policy in (("none", PrunePolicy.none()), ("pspc", PrunePolicy.pspc(1e-6))):
        recs = run_simulation(cfg, d, sigma2, policy, trials, seed=2024)
        fer[name] = summarize(recs, cfg.K).fer
    record_property("note", f"FER none {fer['none']:.4f}, PSPC {fer['pspc']:.4f} over {trials} frames")
    assert fer["pspc"] <= fer["none"] + 0.01
    assert time.perf_counter() - start < 600.0
