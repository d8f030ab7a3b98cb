"""Command-line front end.

Subcommands wrap the library one-to-one and emit machine-readable data
on stdout (or to ``--output``): ``coeffs`` for exact series, ``verify``
for the cross-route identity reports, ``conjecture`` for the bcc
perfect-square scan, ``oracle`` for raw walk tallies, ``appendix-b`` for
the complex-hopping checks.  Exit codes: 0 all checks pass, 1 a
verification failed, 2 usage error.  Diagnostics go to stderr.

Everything is deterministic: there is no randomness anywhere, so a
repeated invocation produces byte-identical output.  ``--threads`` caps
the worker pool used by ``verify --all``; the environment variables
``LATTICEWALKS_THREADS`` and ``LATTICEWALKS_OUTDIR`` override the
default thread count and the base directory for relative output paths.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .lattices import BUILTIN_NAMES, builtin
from .oracle import enumerate_walks
from .series import expand
from .verify import (
    Tolerances,
    appendix_b_report,
    check_square_conjecture,
    verify_identity,
    verify_recurrence,
)

FORMATS = ("json", "csv", "pretty")


def _default_threads() -> int:
    env = os.environ.get("LATTICEWALKS_THREADS")
    return max(1, int(env)) if env else 1


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    outdir = os.environ.get("LATTICEWALKS_OUTDIR")
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(f"wrote {path}", file=sys.stderr)


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _csv_text(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _pretty_text(rows: list[dict]) -> str:
    if not rows:
        return "(empty)\n"
    headers = list(rows[0].keys())
    table = [[str(row[h]) for h in headers] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in table)) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in table]
    return "\n".join(lines) + "\n"


def _rational_str(num: str, den: str) -> str:
    return num if den == "1" else f"{num}/{den}"


def _resolve_pbc(name: str, args) -> int | None:
    return args.pbc if name == "chain-nn-finite" else None


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def cmd_coeffs(args) -> int:
    table = expand(args.lattice, args.max_order, _resolve_pbc(args.lattice, args))
    if args.format == "json":
        text = _json_text(table.to_json_dict())
    else:
        rows = [
            {
                "lattice": table.lattice,
                "index": " ".join(str(m) for m in index),
                "num": str(c.numerator),
                "den": str(c.denominator),
            }
            for index, c in table.items()
        ]
        if args.format == "csv":
            text = _csv_text(rows)
        else:
            for row in rows:
                row["coefficient"] = _rational_str(row.pop("num"), row.pop("den"))
            text = _pretty_text(rows)
    _emit(text, args.output)
    return 0


def cmd_lattice(args) -> int:
    spec = builtin(args.lattice, _resolve_pbc(args.lattice, args))
    if args.format == "json":
        text = _json_text(spec.to_json_dict())
    else:
        rows = [
            {
                "lattice": spec.name,
                "displacement": " ".join(str(c) for c in s.displacement),
                "label": s.label,
                "sublattice": s.sublattice or "",
            }
            for s in spec.steps
        ]
        text = _csv_text(rows) if args.format == "csv" else _pretty_text(rows)
    _emit(text, args.output)
    return 0


def cmd_verify(args) -> int:
    names = list(BUILTIN_NAMES) if args.all else [args.lattice]
    grid = "auto" if args.grid == "auto" else int(args.grid)
    tol = Tolerances(relative=args.tol_rel, zero_abs=args.tol_abs)

    def run(name: str):
        return verify_identity(name, args.max_order, _resolve_pbc(name, args), grid, tol)

    if len(names) > 1 and args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(run, names))  # merge order fixed by names
    else:
        reports = [run(name) for name in names]

    recurrence = verify_recurrence(args.max_order) if args.recurrence else None
    failed = sum(r.failed for r in reports) + (recurrence.failed if recurrence else 0)

    if args.format == "json":
        if len(reports) == 1 and recurrence is None:
            doc = reports[0].to_json_dict()
        else:
            doc = {
                "summary": {"lattices": len(reports), "failed": failed},
                "reports": [r.to_json_dict() for r in reports],
            }
            if recurrence is not None:
                doc["recurrence"] = recurrence.to_json_dict()
        text = _json_text(doc)
    else:
        rows = [row for r in reports for row in r.rows()]
        text = _csv_text(rows) if args.format == "csv" else _pretty_text(rows)
        if recurrence is not None:
            print(
                f"recurrence: checked {recurrence.checked}, failed {recurrence.failed}",
                file=sys.stderr,
            )
    _emit(text, args.output)
    for report in reports:
        print(
            f"{report.lattice}: checked {report.checked}, failed {report.failed}",
            file=sys.stderr,
        )
    return 1 if failed else 0


def cmd_conjecture(args) -> int:
    records = check_square_conjecture(args.n_max)
    rows = [r.to_row() for r in records]
    if args.format == "json":
        text = _json_text({"n_max": args.n_max, "records": rows})
    elif args.format == "csv":
        text = _csv_text(rows)
    else:
        pretty = [
            {
                "order": row["order"],
                "coefficient": _rational_str(row["num"], row["den"]),
                "is_square": row["is_square"],
                "root": _rational_str(row["root_num"], row["root_den"])
                if row["root_num"]
                else "",
            }
            for row in rows
        ]
        text = _pretty_text(pretty)
    _emit(text, args.output)
    # the perfect-square property is asserted only within the scanned range <= 30
    return 1 if any(not r.is_square and r.order <= 30 for r in records) else 0


def cmd_oracle(args) -> int:
    spec = builtin(args.lattice, _resolve_pbc(args.lattice, args))
    tally = enumerate_walks(spec, args.n)
    if args.format == "json":
        text = _json_text(tally.to_json_dict())
    else:
        rows = [
            {
                "lattice": tally.lattice,
                "index": " ".join(str(m) for m in index),
                "count": str(count),
            }
            for index, count in sorted(tally.counts.items())
        ]
        text = _csv_text(rows) if args.format == "csv" else _pretty_text(rows)
    _emit(text, args.output)
    print(f"{tally.lattice}: length {tally.length}, total {tally.total}", file=sys.stderr)
    return 0


def cmd_appendix_b(args) -> int:
    if args.phi_half and args.pbc % 2:
        raise ValueError("--phi-half requires an even --pbc")
    report = appendix_b_report(
        args.pbc,
        args.rho,
        d_values=[args.d] if args.d is not None else None,
        phi_points=args.m_phi,
        series_n_max=args.series_n_max,
        nu_max=args.nu_max,
    )
    records = report["records"]
    if not args.phi_half:
        records = [r for r in records if r["kind"] != "phi_half"]
        report = dict(report, records=records)
    failed = 0
    for record in records:
        limit = args.tol_selection if record["kind"] == "fourier_a_selection" else args.tol_match
        record["pass"] = record["residual"] <= limit
        failed += 0 if record["pass"] else 1

    if args.format == "json":
        text = _json_text(report)
    else:
        rows = [
            {key: ("" if record[key] is None else record[key]) for key in record}
            for record in records
        ]
        text = _csv_text(rows) if args.format == "csv" else _pretty_text(rows)
    _emit(text, args.output)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_output_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=FORMATS, default="json")
    sub.add_argument("--output", help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticewalks",
        description="Closed-walk series of tight-binding partition functions, three ways.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    coeffs = sub.add_parser("coeffs", help="exact series coefficients")
    coeffs.add_argument("--lattice", required=True, choices=BUILTIN_NAMES)
    coeffs.add_argument("--pbc", type=int, default=6, help="ring size for chain-nn-finite")
    coeffs.add_argument("--max-order", type=int, required=True)
    _add_output_options(coeffs)
    coeffs.set_defaults(handler=cmd_coeffs)

    lattice = sub.add_parser("lattice", help="emit one lattice description")
    lattice.add_argument("--lattice", required=True, choices=BUILTIN_NAMES)
    lattice.add_argument("--pbc", type=int, default=6)
    _add_output_options(lattice)
    lattice.set_defaults(handler=cmd_lattice)

    verify = sub.add_parser("verify", help="cross-route identity verification")
    which = verify.add_mutually_exclusive_group(required=True)
    which.add_argument("--lattice", choices=BUILTIN_NAMES)
    which.add_argument("--all", action="store_true", help="verify every built-in lattice")
    verify.add_argument("--pbc", type=int, default=6)
    verify.add_argument("--max-order", type=int, required=True)
    verify.add_argument("--grid", default="auto", help='grid points per axis, or "auto"')
    verify.add_argument("--tol-rel", type=float, default=1e-9)
    verify.add_argument("--tol-abs", type=float, default=1e-12)
    verify.add_argument("--recurrence", action="store_true", help="also check the chain-nnn recurrence")
    verify.add_argument("--threads", type=int, default=_default_threads())
    _add_output_options(verify)
    verify.set_defaults(handler=cmd_verify)

    conjecture = sub.add_parser("conjecture", help="bcc perfect-square scan")
    conjecture.add_argument("--n-max", type=int, default=30)
    _add_output_options(conjecture)
    conjecture.set_defaults(handler=cmd_conjecture)

    oracle_cmd = sub.add_parser("oracle", help="walk-enumeration tally")
    oracle_cmd.add_argument("--lattice", required=True, choices=BUILTIN_NAMES)
    oracle_cmd.add_argument("--pbc", type=int, default=6)
    oracle_cmd.add_argument("--n", type=int, required=True)
    _add_output_options(oracle_cmd)
    oracle_cmd.set_defaults(handler=cmd_oracle)

    appendix = sub.add_parser("appendix-b", help="complex-hopping ring checks")
    appendix.add_argument("--pbc", type=int, required=True)
    appendix.add_argument("--rho", type=float, required=True)
    appendix.add_argument("--d", type=int, help="check a single Fourier index")
    appendix.add_argument("--phi-half", action="store_true", help="include the phase pi/2 identity")
    appendix.add_argument("--nu-max", type=int, default=25)
    appendix.add_argument("--m-phi", type=int, default=256)
    appendix.add_argument("--series-n-max", type=int, default=30)
    appendix.add_argument("--tol-match", type=float, default=1e-9)
    appendix.add_argument("--tol-selection", type=float, default=1e-10)
    _add_output_options(appendix)
    appendix.set_defaults(handler=cmd_appendix_b)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse has already printed the message
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
