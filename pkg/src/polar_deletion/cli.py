"""Batch command-line harness: ``simulate``, ``count``, ``profile``, ``thresholds``.

Options may also come from a plain ``key=value`` file given with
``--config``; keys are the long option names without the leading dashes
(``pe-bound`` or ``pe_bound``).  Command-line flags win over the file.

Exit status is 0 on success, 2 on a usage error and 1 on a runtime error.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .analysis import count_scenarios, profile_prune_error
from .channel import esn0_db_to_sigma2
from .polar import CodeConfig
from .scenarios import PruneKind, PrunePolicy, build_threshold_table
from .simulate import TrialRecord, run_simulation, summarize

__all__ = ["RunConfig", "UsageError", "main"]

# name -> (type, built-in default)
_OPTIONS = {
    "n": (int, None),
    "k": (int, None),
    "d": (int, 0),
    "sigma2": (float, None),
    "esn0_db": (float, None),
    "policy": (str, "none"),
    "tau1": (float, 1e-6),
    "pe_bound": (float, 1e-6),
    "trials": (int, 1000),
    "seed": (int, 0),
    "out": (str, None),
    "design_param": (float, 0.5),
    "paper_peak_formula": (bool, False),
    "literal_leq_pruning": (bool, False),
    "workers": (int, 1),
}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    N: tuple[int, ...]
    K: int | None
    d: int
    sigma2: float | None
    policy: PrunePolicy
    tau1: float
    pe_bound: float
    trials: int
    seed: int
    out: Path | None
    design_param: float
    workers: int

    def code(self, N: int | None = None) -> CodeConfig:
        N = N or self.N[0]
        return CodeConfig.build(N, self.K if self.K is not None else N // 2, self.design_param)


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"not a boolean: {text!r}")


def read_config_file(path: str | Path) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key == "literal_leq":
            key = "literal_leq_pruning"
        if key not in _OPTIONS:
            raise UsageError(f"{path}:{lineno}: unknown option {key!r}")
        values[key] = value
    return values


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file with defaults for any option")
    common.add_argument("--n", type=int, nargs="+", help="code length(s); count accepts several")
    common.add_argument("--k", type=int, help="information length (default N/2)")
    common.add_argument("--d", type=int, help="number of deletions")
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("--sigma2", type=float, help="noise variance per real dimension")
    noise.add_argument("--esn0-db", dest="esn0_db", type=float, help="Es/N0 in dB (sigma2 = 1/(2 Es/N0))")
    common.add_argument("--policy", choices=[k.value for k in PruneKind])
    common.add_argument("--tau1", type=float, help="SSSC weight threshold")
    common.add_argument("--pe-bound", dest="pe_bound", type=float, help="PSPC/SPSPC per-node error budget")
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="CSV output path")
    common.add_argument("--design-param", dest="design_param", type=float, help="BEC design erasure probability")
    common.add_argument("--paper-peak-formula", dest="paper_peak_formula", action="store_const", const=True)
    common.add_argument("--literal-leq-pruning", dest="literal_leq_pruning", action="store_const", const=True)
    common.add_argument("--workers", type=int)

    parser = argparse.ArgumentParser(
        prog="polar-deletion",
        description="SC decoding of polar codes over the noisy d-deletion channel",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common], help="Monte Carlo FER/BER run")
    sub.add_parser("count", parents=[common], help="scenario counts per pruning policy")
    sub.add_parser("profile", parents=[common], help="per-node pruning error probabilities")
    sub.add_parser("thresholds", parents=[common], help="export the per-node threshold table")
    return parser


def _resolve(ns: argparse.Namespace) -> RunConfig:
    from_file = read_config_file(ns.config) if ns.config else {}
    values = {}
    for key, (typ, default) in _OPTIONS.items():
        cli = getattr(ns, key, None)
        if cli is not None:
            values[key] = cli
        elif key in from_file:
            text = from_file[key]
            try:
                if key == "n":
                    values[key] = [int(v) for v in text.replace(",", " ").split()]
                elif typ is bool:
                    values[key] = _parse_bool(text)
                else:
                    values[key] = typ(text)
            except ValueError as exc:
                raise UsageError(f"invalid value for {key}: {text!r}") from exc
        else:
            values[key] = default
    if getattr(ns, "esn0_db", None) is not None:
        values["sigma2"] = None  # an explicit flag beats a file value

    Ns = values["n"]
    if not Ns:
        raise UsageError("n: code length is required (--n)")
    for N in Ns:
        if N < 2 or N & (N - 1):
            raise UsageError(f"n: code length must be a power of two >= 2, got {N}")
    if ns.command != "count" and len(Ns) != 1:
        raise UsageError("n: only the count command accepts several code lengths")
    K = values["k"]
    if K is not None and not all(1 <= K <= N for N in Ns):
        raise UsageError(f"k: must lie in [1, N], got {K}")
    d = values["d"]
    if not all(0 <= d <= N for N in Ns):
        raise UsageError(f"d: must lie in [0, N], got {d}")
    sigma2 = values["sigma2"]
    if sigma2 is None and values["esn0_db"] is not None:
        sigma2 = esn0_db_to_sigma2(values["esn0_db"])
    if sigma2 is not None and not sigma2 > 0:
        raise UsageError(f"sigma2: must be positive, got {sigma2}")
    if ns.command == "simulate" and sigma2 is None:
        raise UsageError("sigma2: simulate needs --sigma2 or --esn0-db")
    if values["trials"] < 0:
        raise UsageError("trials: must be non-negative")
    if values["workers"] < 1:
        raise UsageError("workers: must be at least 1")
    if not 0 < values["design_param"] < 1:
        raise UsageError("design_param: must lie in (0, 1)")
    if values["tau1"] < 0:
        raise UsageError("tau1: must be non-negative")
    if not 0 <= values["pe_bound"] < 1:
        raise UsageError("pe_bound: must lie in [0, 1)")
    if values["seed"] < 0 or values["seed"] >= 2**64:
        raise UsageError("seed: must be an unsigned 64-bit integer")
    try:
        kind = PruneKind(values["policy"])
    except ValueError as exc:
        raise UsageError(f"policy: unknown policy {values['policy']!r}") from exc
    policy = PrunePolicy(
        kind,
        tau1=values["tau1"] if kind is PruneKind.SSSC else 0,
        pe_bound=values["pe_bound"] if kind in (PruneKind.PSPC, PruneKind.SPSPC) else 0,
        ceil_peak=values["paper_peak_formula"] and kind is PruneKind.SPSPC,
        literal_leq=values["literal_leq_pruning"] and kind is PruneKind.PSPC,
    )
    if ns.command == "profile" and kind is PruneKind.NONE:
        raise UsageError("policy: profile needs sssc, pspc or spspc")
    if ns.command == "thresholds" and not policy.needs_table:
        raise UsageError("policy: thresholds needs pspc or spspc")
    out = Path(values["out"]) if values["out"] else None
    return RunConfig(
        ns.command, tuple(Ns), K, d, sigma2, policy, values["tau1"], values["pe_bound"],
        values["trials"], values["seed"], out, values["design_param"], values["workers"],
    )


def _write_csv(path: Path | None, header, rows) -> None:
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def cmd_simulate(cfg: RunConfig, stream=None) -> list[TrialRecord]:
    stream = stream or sys.stdout
    code = cfg.code()
    table = build_threshold_table(code, cfg.d, cfg.policy) if cfg.policy.needs_table else None
    start = time.perf_counter()
    records = run_simulation(code, cfg.d, cfg.sigma2, cfg.policy, cfg.trials, cfg.seed, table, cfg.workers)
    summary = summarize(records, code.K, time.perf_counter() - start)
    _write_csv(cfg.out, TrialRecord.FIELDS, [r.as_row() for r in records])
    if cfg.out is not None:
        _write_csv(
            cfg.out.with_name(cfg.out.stem + "_summary.csv"),
            ("trials", "frame_errors", "fer", "bit_errors", "ber", "degenerate", "mean_scenarios", "elapsed_s"),
            [(summary.trials, summary.frame_errors, summary.fer, summary.bit_errors, summary.ber,
              summary.degenerate, summary.mean_scenarios, round(summary.elapsed_s, 3))],
        )
    print(
        f"N={code.N} K={code.K} d={cfg.d} sigma2={cfg.sigma2:.6g} policy={cfg.policy.kind.value} "
        f"trials={summary.trials} FER={summary.fer:.6g} BER={summary.ber:.6g} "
        f"degenerate={summary.degenerate} mean_scenarios={summary.mean_scenarios:.1f} "
        f"elapsed_s={summary.elapsed_s:.2f}",
        file=stream,
    )
    return records


COUNT_HEADER = ("N", "d", "SC", "SSSC", "PSPC", "SC-SPSPC", "Reduction")


def count_row(N: int, d: int, tau1, pe_bound, ceil_peak: bool = False) -> tuple:
    """One row of scenario counts per policy; reduction is SSSC minus SC-SPSPC."""
    none = count_scenarios(N, d, PrunePolicy.none())
    sssc = count_scenarios(N, d, PrunePolicy.sssc(tau1))
    pspc = count_scenarios(N, d, PrunePolicy.pspc(pe_bound))
    spspc = count_scenarios(N, d, PrunePolicy.spspc(pe_bound, ceil_peak))
    return N, d, none, sssc, pspc, spspc, sssc - spspc


def cmd_count(cfg: RunConfig, stream=None) -> list[tuple]:
    stream = stream or sys.stdout
    rows = [count_row(N, cfg.d, cfg.tau1, cfg.pe_bound, cfg.policy.ceil_peak) for N in cfg.N]
    _write_csv(cfg.out, COUNT_HEADER, rows)
    print(f"tau1={cfg.tau1:g} pe_bound={cfg.pe_bound:g}", file=stream)
    print("".join(f"{h:>11}" for h in COUNT_HEADER), file=stream)
    for r in rows:
        print("".join(f"{v:>11}" for v in r), file=stream)
    return rows


def cmd_profile(cfg: RunConfig, stream=None):
    stream = stream or sys.stdout
    prof = profile_prune_error(cfg.N[0], cfg.d, cfg.policy)
    rows = [(lam, beta, pe.numerator, pe.denominator, float(pe)) for (lam, beta), pe in prof]
    _write_csv(cfg.out, ("lambda", "beta", "pe_numerator", "pe_denominator", "pe_float"), rows)
    vals = [float(pe) for _, pe in prof]
    nonzero = [v for v in vals if v > 0]
    print(
        f"nodes={len(vals)} nonzero={len(nonzero)} "
        f"min_nonzero={min(nonzero) if nonzero else 0.0:.6g} "
        f"max={max(vals):.6g} median={statistics.median(vals):.6g}",
        file=stream,
    )
    return prof


def cmd_thresholds(cfg: RunConfig, stream=None):
    stream = stream or sys.stdout
    N = cfg.N[0]
    table = build_threshold_table(N, cfg.d, cfg.policy)
    _write_csv(
        cfg.out,
        ("lambda", "beta", "tau_numerator", "tau_denominator", "tau_float", "weight_evals"),
        list(table.rows()),
    )
    print(
        f"entries={len(table)} weight_evals={table.total_weight_evals} "
        f"max_per_entry={max(table.weight_evals.values(), default=0)} "
        f"(d+1)(N-2)={(cfg.d + 1) * (N - 2)}",
        file=stream,
    )
    return table


COMMANDS = {
    "simulate": cmd_simulate,
    "count": cmd_count,
    "profile": cmd_profile,
    "thresholds": cmd_thresholds,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _resolve(ns)
    except (UsageError, OSError) as exc:
        print(f"{parser.prog} {ns.command}: error: {exc}", file=sys.stderr)
        return 2
    try:
        COMMANDS[cfg.command](cfg)
    except Exception as exc:  # noqa: BLE001 - report and exit non-zero
        print(f"{parser.prog} {cfg.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
