"""Command line front end.

Subcommands: solve one instance (best of several seeded runs), verify a
packing file, bench a range of n against the bundled reference table, and
plotdata to dump coordinates for external plotting. Anything timing-related
goes to stderr so stdout stays deterministic for a fixed seed.

Exit codes: 0 success / certificate valid, 1 solve or verification failure,
2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .geometry import KINDS
from .local_solver import SolverSettings
from .radius_search import DEFAULT_EPSILON, UpperBoundInfeasible, solve_instance
from .records import (
    NotInTable,
    RunReport,
    bundled_records,
    load_packing,
    save_packing,
    save_report,
)
from .relocation import DEFAULT_SCAN_LIMIT
from .verification import compare_to_record, verify_exact, verify_fake

WORKERS_ENV = "SPHEREPACK_WORKERS"


def _solve_job(job):
    n, kind, r0, seed, scan_limit, eps = job
    return solve_instance(n, kind, r0, seed, scan_limit=scan_limit, epsilon=eps)


def _run_seeds(n, kind, r0, seeds, scan_limit, eps):
    """Independent runs, optionally fanned out over a process pool."""
    jobs = [(n, kind, r0, s, scan_limit, eps) for s in seeds]
    workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_solve_job, jobs))
    return [_solve_job(j) for j in jobs]


def _best_outcome(outcomes):
    # largest ratio wins; earliest seed on exact ties
    best = outcomes[0]
    for o in outcomes[1:]:
        if o.ratio > best.ratio:
            best = o
    return best


def _delta_text(n, kind, ratio):
    try:
        return f"{compare_to_record(n, kind, ratio):+.8f}"
    except NotInTable:
        return "n/a"


def cmd_solve(args) -> int:
    r0 = args.r0
    if r0 is None:
        r0 = bundled_records().estimate_r0(args.n, args.kind)
    seeds = [args.seed + k for k in range(args.runs)]
    t0 = time.perf_counter()
    try:
        outcomes = _run_seeds(args.n, args.kind, r0, seeds, args.scan_limit, args.eps)
    except UpperBoundInfeasible as exc:
        print(f"solve failed: {exc}", file=sys.stderr)
        return 1
    best = _best_outcome(outcomes)

    cert = verify_exact(best.dense_packing, best.r0_min, best.container_kind)
    fake_ok, fake_energy = verify_fake(best.dense_packing, best.r0_min,
                                       best.container_kind)
    if not (cert.valid and fake_ok):
        print(f"internal check failed: valid={cert.valid} "
              f"energy={fake_energy:.3e}", file=sys.stderr)
        return 1

    delta = _delta_text(args.n, args.kind, best.ratio)
    print(f"{args.n} {args.kind} {best.ratio:.8f} {best.r0_min:.17g} {delta}")
    print(f"wall clock: {time.perf_counter() - t0:.3f}s", file=sys.stderr)

    if args.out:
        save_packing(best, args.out)
        seed = best.run_metadata.get("seed", args.seed)
        # snapshot the exploration profile the run actually used
        used = SolverSettings(initial_step=0.5 * r0)
        report = RunReport.from_outcome(best, seed, used)
        save_report(report, f"{args.out}.report.json")
    return 0


def cmd_verify(args) -> int:
    try:
        payload = load_packing(args.path)
    except (OSError, ValueError) as exc:
        print(f"cannot read packing: {exc}", file=sys.stderr)
        return 2
    cert = verify_exact(payload.dense_packing, payload.r0_min,
                        payload.container_kind)
    fake_ok, energy = verify_fake(payload.dense_packing, payload.r0_min,
                                  payload.container_kind)
    print(f"valid: {'yes' if cert.valid else 'no'}")
    print(f"wall margin: {cert.worst_wall_margin:.17g} "
          f"(safe {cert.safe_wall_margin:.17g})")
    print(f"pair margin: {cert.worst_pair_margin:.17g} "
          f"(safe {cert.safe_pair_margin:.17g})")
    print(f"inflated-radius energy: {energy:.6e} "
          f"({'certifies' if fake_ok else 'does not certify'})")
    for v in cert.violations:
        spheres = ",".join(str(i + 1) for i in v.indices)
        print(f"violation {v.kind} [{spheres}]: {v.magnitude:.17g}")
    return 0 if cert.valid else 1


def cmd_bench(args) -> int:
    if args.n_min > args.n_max:
        print("bench: n-min must not exceed n-max", file=sys.stderr)
        return 2
    table = bundled_records()
    rows = []
    print(f"{'n':>4} {'best':>12} {'record':>12} {'delta':>12} {'mean_s':>8}")
    for n in range(args.n_min, args.n_max + 1):
        r0 = args.r0 if args.r0 is not None else table.estimate_r0(n, args.kind)
        seeds = [args.seed + k for k in range(args.runs)]
        t0 = time.perf_counter()
        try:
            outcomes = _run_seeds(n, args.kind, r0, seeds, args.scan_limit, args.eps)
        except UpperBoundInfeasible as exc:
            print(f"{n:>4} {'failed':>12} {exc}")
            rows.append({"kind": args.kind, "n": n, "ratio": "", "record": "",
                         "delta": "", "mean_seconds": ""})
            continue
        mean_s = (time.perf_counter() - t0) / len(outcomes)
        best = _best_outcome(outcomes)
        try:
            record = f"{table.lookup(n, args.kind):.8f}"
            delta = f"{compare_to_record(n, args.kind, best.ratio, table):+.8f}"
        except NotInTable:
            record, delta = "n/a", "n/a"
        print(f"{n:>4} {best.ratio:>12.8f} {record:>12} {delta:>12} {mean_s:>8.2f}")
        rows.append({"kind": args.kind, "n": n, "ratio": f"{best.ratio:.8f}",
                     "record": record, "delta": delta,
                     "mean_seconds": f"{mean_s:.3f}"})
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=["kind", "n", "ratio", "record",
                                                    "delta", "mean_seconds"])
            writer.writeheader()
            writer.writerows(rows)
    return 0


def cmd_plotdata(args) -> int:
    try:
        payload = load_packing(args.path)
    except (OSError, ValueError) as exc:
        print(f"cannot read packing: {exc}", file=sys.stderr)
        return 2
    config = payload.dense_packing
    if args.format == "json":
        doc = {
            "kind": payload.container_kind,
            "r0": payload.r0_min,
            "r": config.radius,
            "centers": [list(row) for row in config.centers],
        }
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"# kind={payload.container_kind} r0={payload.r0_min:.17g} "
                 f"r={config.radius:.17g}", "x,y,z"]
        for x, y, z in config.centers:
            lines.append(f"{x:.17g},{y:.17g},{z:.17g}")
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spherepack",
        description="Pack equal spheres densely into spherical or cubic containers.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance, best of several runs")
    s.add_argument("--n", type=int, required=True, help="number of spheres")
    s.add_argument("--kind", choices=sorted(KINDS), default="sphere")
    s.add_argument("--r0", type=float, default=None,
                   help="container radius estimate (default: from record table)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--runs", type=int, default=5)
    s.add_argument("--scan-limit", type=int, default=DEFAULT_SCAN_LIMIT)
    s.add_argument("--eps", type=float, default=DEFAULT_EPSILON,
                   help="radius search precision")
    s.add_argument("--out", default=None,
                   help="write packing here plus <out>.report.json")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="certify a packing file")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="sweep a range of n against the record table")
    b.add_argument("--kind", choices=sorted(KINDS), default="sphere")
    b.add_argument("--n-min", type=int, required=True)
    b.add_argument("--n-max", type=int, required=True)
    b.add_argument("--runs", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--scan-limit", type=int, default=DEFAULT_SCAN_LIMIT)
    b.add_argument("--eps", type=float, default=DEFAULT_EPSILON)
    b.add_argument("--r0", type=float, default=None)
    b.add_argument("--out", default=None, help="CSV mirror of the table")
    b.set_defaults(func=cmd_bench)

    d = sub.add_parser("plotdata", help="dump packing geometry for plotting")
    d.add_argument("path")
    d.add_argument("--format", choices=["csv", "json"], default="csv")
    d.add_argument("--out", default=None, help="output file (default stdout)")
    d.set_defaults(func=cmd_plotdata)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    return args.func(args)


def run() -> None:
    raise SystemExit(main())
