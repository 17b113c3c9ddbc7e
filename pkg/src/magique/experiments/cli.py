"""Command-line front end: ``magique <subcommand> ...``.

Exit status is 0 on success, 1 on invalid input, 2 when a computation fails.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from ..spinchain import EigensolverError, SpinChainModel
from ..sre import sre, sre_w_analytic, w_sum_components
from ..statevec import make_w_state
from .plot import emit_plot
from .scan import CSV_COLUMNS, ScanSpec, compute_cell, run_scan, verify_circuit

EXIT_OK, EXIT_INVALID, EXIT_COMPUTE = 0, 1, 2


def _parse_J(text: str) -> tuple[int, ...]:
    if text.lower() == "both":
        return (1, -1)
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            val = int(part)
        except ValueError:
            raise argparse.ArgumentTypeError(f"J must be +1, -1 or 'both', got {part!r}") from None
        if val not in (1, -1):
            raise argparse.ArgumentTypeError(f"J must be +1 or -1, got {part!r}")
        out.append(val)
    return tuple(out)


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _require_odd(L: int) -> None:
    if L < 1 or L % 2 == 0:
        raise ValueError(f"--L must be a positive odd integer, got {L}")


def cmd_sre_w(args) -> int:
    _require_odd(args.L)
    analytic = sre_w_analytic(args.L).value
    print(f"L={args.L}")
    print(f"analytic={analytic:.12g}")
    if args.method in ("naive", "both"):
        print(f"naive={sre(make_w_state(args.L), 'naive').value:.12g}")
    if args.method in ("fast", "both"):
        print(f"fast={sre(make_w_state(args.L), 'fast').value:.12g}")
    return EXIT_OK


def cmd_w_components(args) -> int:
    if args.L < 1:
        raise ValueError(f"--L must be positive, got {args.L}")
    comp = w_sum_components(args.L)
    print(f"O_eq={comp.O_eq} ({float(comp.O_eq):.12g})")
    print(f"O_neq={comp.O_neq} ({float(comp.O_neq):.12g})")
    print(f"M2={comp.M2:.12g}")
    print(f"analytic={sre_w_analytic(args.L).value:.12g}")
    return EXIT_OK


def cmd_sre_state(args) -> int:
    J = _parse_J(args.J)
    if len(J) != 1:
        raise ValueError("sre-state takes a single J")
    _require_odd(args.L)
    SpinChainModel(args.model, J[0], args.lam, args.L)
    row = compute_cell(args.model, J[0], args.lam, args.L, args.method)
    print(",".join(CSV_COLUMNS))
    print(",".join(row[c] for c in CSV_COLUMNS))
    return EXIT_OK


def cmd_scan(args) -> int:
    cache_dir = args.cache_dir or os.environ.get("MAGIQUE_CACHE") or None
    spec = ScanSpec(
        model=args.model,
        J=_parse_J(args.J),
        lambdas=_float_list(args.lambdas),
        Ls=_int_list(args.Ls),
        method=args.method,
        out=args.out,
        plot=args.plot,
        cache_dir=cache_dir,
        workers=args.workers,
        record_timing=not args.no_timing,
    )
    result = run_scan(spec)
    for msg in result.failures:
        print(f"failed: {msg}", file=sys.stderr)
    print(f"wrote {len(result.rows)} rows to {args.out} ({result.cache_hits} from cache)")
    return EXIT_COMPUTE if result.failures else EXIT_OK


def cmd_verify_circuit(args) -> int:
    rep = verify_circuit(args.L)
    counts = ", ".join(f"{k}={v}" for k, v in sorted(rep.gate_counts.items()))
    print(f"L={rep.L} {'PASS' if rep.passed else 'FAIL'}")
    print(f"overlap={rep.overlap:.15f}")
    print(f"sre_before={rep.sre_before:.12g} sre_after={rep.sre_after:.12g} diff={rep.sre_difference:.3e}")
    print(f"gates: {counts}")
    return EXIT_OK if rep.passed else EXIT_COMPUTE


def cmd_plot(args) -> int:
    series = [s for s in args.series.split(",") if s] if args.series else []
    emit_plot(args.csv, args.x, args.y, args.out, series=series, title=args.title or "")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="magique", description="Exact stabilizer-entropy tools for spin chains.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sre-w", help="W-state SRE: closed form and brute force")
    s.add_argument("--L", type=int, required=True)
    s.add_argument("--method", choices=("naive", "fast", "both"), default="both")
    s.set_defaults(func=cmd_sre_w)

    s = sub.add_parser("w-components", help="diagonal/off-diagonal Pauli sums of the W state")
    s.add_argument("--L", type=int, required=True)
    s.set_defaults(func=cmd_w_components)

    s = sub.add_parser("sre-state", help="ground-state SRE of one chain")
    s.add_argument("--model", choices=("tfim", "cim"), required=True)
    s.add_argument("--J", required=True)
    s.add_argument("--lambda", dest="lam", type=float, required=True)
    s.add_argument("--L", type=int, required=True)
    s.add_argument("--method", choices=("naive", "fast"), default="fast")
    s.set_defaults(func=cmd_sre_state)

    s = sub.add_parser("scan", help="(lambda, L) scan to CSV")
    s.add_argument("--model", choices=("tfim", "cim"), required=True)
    s.add_argument("--J", required=True, help="+1, -1, '+1,-1' or 'both'")
    s.add_argument("--lambdas", default="0.4,1.0,2.0")
    s.add_argument("--Ls", required=True)
    s.add_argument("--method", choices=("naive", "fast"), default="fast")
    s.add_argument("--out", required=True)
    s.add_argument("--plot")
    s.add_argument("--cache-dir")
    s.add_argument("--workers", type=int)
    s.add_argument("--no-timing", action="store_true", help="write 0 in the seconds column")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("verify-circuit", help="check the W -> kink-superposition circuit")
    s.add_argument("--L", type=int, required=True)
    s.set_defaults(func=cmd_verify_circuit)

    s = sub.add_parser("plot", help="SVG line plot from a scan CSV")
    s.add_argument("--csv", required=True)
    s.add_argument("--x", default="L")
    s.add_argument("--y", default="sre")
    s.add_argument("--series", default="J,lambda")
    s.add_argument("--out", required=True)
    s.add_argument("--title")
    s.set_defaults(func=cmd_plot)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (EigensolverError, ArithmeticError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ValueError, KeyError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
