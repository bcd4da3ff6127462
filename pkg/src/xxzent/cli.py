"""Command-line interface.

Subcommands: ed (single ground-state report), scan (C(delta) curves from
either engine), spinwave (single thermodynamic-limit evaluation), verify
(run the machine-check suites).

Exit codes: 0 success, 2 usage error, 3 infeasible sector size,
4 solver failure, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, analysis, ed, spinwave, verify
from .lattice import LatticeSpec, build_lattice

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_SOLVER = 4
EXIT_VERIFY = 5

DEFAULT_BASIS_CAP = 20_000_000

CSV_HEADER = "delta,concurrence,energy_per_bond,gzz,engine"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xxzent",
        description="Nearest-neighbor concurrence of the spin-1/2 XXZ antiferromagnet",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_lattice_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--dim", type=int, choices=(1, 2, 3), default=1)
        p.add_argument("--size", type=int, default=8, help="linear size L")
        p.add_argument("--boundary", choices=("periodic", "open"), default="periodic")

    def add_solver_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=ed.DEFAULT_TOL)
        p.add_argument("--max-iter", type=int, default=ed.DEFAULT_MAX_ITER)
        p.add_argument("--seed", type=int, default=ed.DEFAULT_SEED)
        p.add_argument("--max-basis", type=int, default=DEFAULT_BASIS_CAP,
                       help="refuse sectors larger than this")

    p_ed = sub.add_parser("ed", help="exact diagonalization at a single delta")
    add_lattice_args(p_ed)
    add_solver_args(p_ed)
    p_ed.add_argument("--delta", type=float, default=1.0)

    p_scan = sub.add_parser("scan", help="C(delta) over a uniform grid")
    p_scan.add_argument("--engine", choices=("ed", "spinwave"), default="ed")
    add_lattice_args(p_scan)
    add_solver_args(p_scan)
    p_scan.add_argument("--from", dest="delta_from", type=float, default=0.0)
    p_scan.add_argument("--to", dest="delta_to", type=float, default=2.0)
    p_scan.add_argument("--step", type=float, default=0.05)
    p_scan.add_argument("--kgrid", type=int, default=None,
                        help="spin-wave quadrature points per direction")
    p_scan.add_argument("--spin", type=float, default=0.5)
    p_scan.add_argument("--format", choices=("csv", "json"), default="csv")
    p_scan.add_argument("--out", type=str, default=None, help="output path (default stdout)")

    p_sw = sub.add_parser("spinwave", help="spin-wave evaluation at a single delta")
    p_sw.add_argument("--dim", type=int, choices=(2, 3), default=2)
    p_sw.add_argument("--delta", type=float, default=1.0)
    p_sw.add_argument("--kgrid", type=int, default=None)
    p_sw.add_argument("--spin", type=float, default=0.5)

    p_ver = sub.add_parser("verify", help="run the machine-check suites")
    p_ver.add_argument("--suite", choices=("all",) + tuple(verify.SUITES),
                       default="all")
    p_ver.add_argument("--kgrid", type=int, default=None,
                       help="override spin-wave grid for faster runs")
    return parser


def _check_feasible(spec: LatticeSpec, cap: int) -> int | None:
    dim = ed.sector_dimension(spec.n_sites, 0.0)
    if dim > cap:
        print(
            f"refusing {spec.dimension}D L={spec.linear_size}: M=0 sector has "
            f"{dim} states (~{dim:.2e}), above the cap {cap} "
            f"(~{cap:.0e}); not desk-feasible",
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    return None


def cmd_ed(args: argparse.Namespace) -> int:
    spec = LatticeSpec(args.dim, args.size, periodic=args.boundary == "periodic")
    bad = _check_feasible(spec, args.max_basis)
    if bad is not None:
        return bad
    lattice = build_lattice(spec)
    from .entanglement import concurrence_corr, mean_bond_correlators

    try:
        basis, gs = ed.solve_ground(
            lattice, args.delta, tol=args.tol, max_iter=args.max_iter, seed=args.seed
        )
        gap_info = ed.ground_state_gap(
            lattice, args.delta, tol=args.tol, max_iter=args.max_iter, seed=args.seed
        ) if len(basis) > 1 else None
    except ed.LanczosError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    g = mean_bond_correlators(gs, basis, lattice)
    c = concurrence_corr(g)
    rows = [
        ("dimension", args.dim),
        ("linear_size", args.size),
        ("boundary", args.boundary),
        ("delta", _fmt(args.delta)),
        ("sector_m", _fmt(gs.m)),
        ("sector_dimension", len(basis)),
        ("energy", _fmt(gs.energy)),
        ("energy_per_bond", _fmt(gs.energy / lattice.n_bonds)),
        ("gxx", _fmt(g.gxx)),
        ("gyy", _fmt(g.gyy)),
        ("gzz", _fmt(g.gzz)),
        ("concurrence", _fmt(c)),
        ("gap", _fmt(gap_info[2]) if gap_info else "undefined"),
        ("solver", gs.method),
        ("iterations", gs.iterations),
        ("residual", _fmt(gs.residual)),
        ("seed", gs.seed),
    ]
    for key, val in rows:
        print(f"{key}: {val}")
    return EXIT_OK


def _curve_metadata(args: argparse.Namespace, curve: analysis.ConcurrenceCurve) -> list[tuple[str, str]]:
    meta = [
        ("engine", curve.engine),
        ("model", curve.provenance),
        ("grid", f"from={_fmt(args.delta_from)} to={_fmt(args.delta_to)} step={_fmt(args.step)}"),
        ("version", __version__),
    ]
    return meta


def _write_csv(curve: analysis.ConcurrenceCurve, meta, stream) -> None:
    for key, val in meta:
        stream.write(f"# {key}: {val}\n")
    stream.write(CSV_HEADER + "\n")
    for s in curve.samples:
        engine = curve.engine if s.ok else f"{curve.engine}:failed"
        stream.write(
            f"{_fmt(s.delta)},{_fmt(s.concurrence)},{_fmt(s.energy_per_bond)},"
            f"{_fmt(s.gzz)},{engine}\n"
        )


def _write_json(curve: analysis.ConcurrenceCurve, meta, stream) -> None:
    payload = {
        "metadata": {k: v for k, v in meta},
        "samples": [
            {
                "delta": float(s.delta),
                "concurrence": float(s.concurrence),
                "energy_per_bond": float(s.energy_per_bond),
                "gzz": float(s.gzz),
                "energy_total": float(s.energy_total),
                "ok": s.ok,
                "error": s.error,
                "iterations": s.iterations,
            }
            for s in curve.samples
        ],
    }
    json.dump(payload, stream, indent=2, sort_keys=True)
    stream.write("\n")


def cmd_scan(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.step <= 0:
        parser.error("--step must be positive")
    if args.delta_to < args.delta_from:
        parser.error("--to must be >= --from")
    grid = analysis.delta_grid(args.delta_from, args.delta_to, args.step)
    if args.engine == "ed":
        spec = LatticeSpec(args.dim, args.size, periodic=args.boundary == "periodic")
        bad = _check_feasible(spec, args.max_basis)
        if bad is not None:
            return bad
        curve = analysis.scan_ed(
            spec, grid, tol=args.tol, max_iter=args.max_iter, seed=args.seed
        )
    else:
        if args.dim < 2:
            parser.error("spin-wave engine needs --dim 2 or 3")
        curve = analysis.scan_spinwave(
            args.dim, grid, k_points=args.kgrid, spin=args.spin
        )
    meta = _curve_metadata(args, curve)
    writer = _write_csv if args.format == "csv" else _write_json
    if args.out:
        with open(args.out, "w") as fh:
            writer(curve, meta, fh)
    else:
        writer(curve, meta, sys.stdout)
    if not curve.all_ok():
        failed = sum(1 for s in curve.samples if not s.ok)
        print(f"warning: {failed} of {len(curve.samples)} points failed", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def cmd_spinwave(args: argparse.Namespace) -> int:
    model = spinwave.SpinWaveModel(args.dim, args.delta, spin=args.spin, k_points=args.kgrid)
    n_k = model.resolved_k_points
    e_site = spinwave.energy_per_site(args.delta, args.dim, n_k, args.spin)
    eps = e_site / args.dim
    g = spinwave.gzz_per_bond(args.delta, args.dim, n_k, spin=args.spin)
    c = spinwave.concurrence(args.delta, args.dim, n_k, spin=args.spin)
    for key, val in (
        ("dimension", args.dim),
        ("delta", _fmt(args.delta)),
        ("branch", model.branch),
        ("kgrid", n_k),
        ("spin", _fmt(args.spin)),
        ("energy_per_site", _fmt(e_site)),
        ("energy_per_bond", _fmt(eps)),
        ("gzz", _fmt(g)),
        ("concurrence", _fmt(c)),
    ):
        print(f"{key}: {val}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    kwargs = {}
    if args.kgrid is not None:
        kwargs["spinwave"] = {"k_points": args.kgrid}
    results = verify.run_suites(args.suite, **kwargs)
    failed = 0
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        failed += not r.passed
        print(f"[{tag}] {r.name}: measured={_fmt(r.measured)} tol={_fmt(r.tolerance)} ({r.detail})")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "ed":
            return cmd_ed(args)
        if args.command == "scan":
            return cmd_scan(args, parser)
        if args.command == "spinwave":
            return cmd_spinwave(args)
        if args.command == "verify":
            return cmd_verify(args)
    except ed.SectorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError("unreachable")


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
