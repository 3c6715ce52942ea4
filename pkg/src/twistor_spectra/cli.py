"""Command-line front end.

Subcommands: spectrum, block, neighbors, verify, calibrate.  Output is a
pure function of the flags: deterministic row order, exact values printed as
p/q, numerics with 15 significant digits, poles printed as POLE.  Exit codes:
0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .exact import (GammaPoleError, NonCommensurableError, evaluate_numeric,
                    format_rational, ratio_tagged, rational)
from .ktypes import (BadDimensionError, InvalidWeightError, KType, Params,
                     enumerate_ktypes, interface_square, make_ktype,
                     neighbors)
from .spectra import (InconsistentSystemError, SingularCoefficientError,
                      block_coefficients, block2x2, calibrate_L,
                      mult1_quotient_matrix, mult2_det_quotient_matrix,
                      first_order_block, z_for)
from .verify import CONVENTION, run_all_suites, resolve_block_factor_reading

SCHEMA_VERSION = 1


def _num(x: float) -> str:
    return f"{x:.15g}"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=4, help="sphere dimension + 1 (even, >= 4)")
    p.add_argument("--r", default="1/2", help="half the operator order, as p/q")
    p.add_argument("--lattice", choices=("half", "int"), default="half",
                   help="circle weight lattice")
    p.add_argument("--strict-paper", action="store_true",
                   help="use the strict formula variants, including their known misprints")


def _add_region(p: argparse.ArgumentParser) -> None:
    p.add_argument("--f-min", default="-9/2")
    p.add_argument("--f-max", default="9/2")
    p.add_argument("--j-max", default="9/2")
    p.add_argument("--xi", choices=("1", "-1", "both"), default="both")
    p.add_argument("--eps", choices=("1", "-1", "both"), default="both")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--out", default=None, help="write output to a file instead of stdout")


def _pm(values: str) -> List[int]:
    return [1, -1] if values == "both" else [int(values)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistor-spectra",
        description="Exact spectra of conformal intertwining operators on twistors "
                    "over a circle times an even sphere.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser("spectrum", help="tabulate spectral data over a region")
    for add in (_add_common, _add_region, _add_output):
        add(p_spec)

    p_block = sub.add_parser("block", help="one 2x2 block, with its r = 1/2 degeneration")
    _add_common(p_block)
    for flag in ("--f", "--j"):
        p_block.add_argument(flag, required=True)
    p_block.add_argument("--eps", type=int, choices=(1, -1), required=True)
    p_block.add_argument("--xi", type=int, choices=(1, -1), default=1)
    _add_output(p_block)

    p_nb = sub.add_parser("neighbors", help="diagram around one K-type with quotient entries")
    _add_common(p_nb)
    for flag in ("--f", "--j"):
        p_nb.add_argument(flag, required=True)
    p_nb.add_argument("--q", type=int, choices=(0, 1), required=True)
    p_nb.add_argument("--eps", type=int, choices=(1, -1), required=True)
    p_nb.add_argument("--xi", type=int, choices=(1, -1), default=1)
    _add_output(p_nb)

    p_ver = sub.add_parser("verify", help="run all verification suites over a region")
    for add in (_add_common, _add_region):
        add(p_ver)
    p_ver.add_argument("--out", default=None, help="write the JSON report here")

    p_cal = sub.add_parser("calibrate", help="solve for the divergence-part eigenvalues")
    for add in (_add_common, _add_region, _add_output):
        add(p_cal)
    p_cal.add_argument("--xi-solve", type=int, choices=(1, -1), default=1,
                       help="chirality used for the solve")
    return parser


def _params(args) -> Params:
    try:
        return Params(args.n, rational(args.r), args.lattice)
    except BadDimensionError:
        print("n must be even and >= 4", file=sys.stderr)
        raise SystemExit(2)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"bad configuration: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _region_args(args):
    try:
        return (rational(args.f_min), rational(args.f_max), rational(args.j_max),
                _pm(args.xi), _pm(args.eps))
    except (ValueError, ZeroDivisionError) as exc:
        print(f"bad region: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_text(rows: List[Dict[str, str]], columns: List[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, "columns": columns,
                           "rows": rows}, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    widths = {c: max(len(c), *(len(r[c]) for r in rows)) if rows else len(c)
              for c in columns}
    lines = ["  ".join(c.ljust(widths[c]) for c in columns)]
    lines.append("  ".join("-" * widths[c] for c in columns))
    for r in rows:
        lines.append("  ".join(r[c].ljust(widths[c]) for c in columns))
    return "\n".join(lines) + "\n"


SPECTRUM_COLUMNS = ["xi", "f", "j", "q", "eps", "mult", "z_rel", "z_base",
                    "z_numeric", "b11", "b12", "b21", "b22", "note"]


def cmd_spectrum(args) -> int:
    params = _params(args)
    f_min, f_max, j_max, xis, epss = _region_args(args)
    rows: List[Dict[str, str]] = []
    bases: List[KType] = []
    for kt in enumerate_ktypes(params, f_min, f_max, j_max, (0, 1), xis, epss):
        row = {c: "" for c in SPECTRUM_COLUMNS}
        row.update({"xi": str(kt.xi), "f": format_rational(kt.f),
                    "j": format_rational(kt.j), "q": str(kt.q),
                    "eps": str(kt.eps), "mult": str(kt.multiplicity)})
        if kt.multiplicity == 1:
            zq = z_for(params, kt)
            base, rel = _relative_to_base(params, kt, zq, bases)
            row["z_rel"] = rel
            row["z_base"] = base.label() if base is not None else ""
            try:
                val = evaluate_numeric(zq)
                row["z_numeric"] = _num(val if isinstance(val, float) else val[0])
            except GammaPoleError:
                row["z_numeric"] = "POLE"
        else:
            try:
                coeffs = block_coefficients(params, kt, args.strict_paper)
                for name, c in zip(("b11", "b12", "b21", "b22"), coeffs):
                    row[name] = format_rational(c)
            except SingularCoefficientError as exc:
                row["note"] = f"SINGULAR({exc.which})"
        rows.append(row)
    _emit(_rows_text(rows, SPECTRUM_COLUMNS, args.format), args.out)
    return 0


def _relative_to_base(params, kt, zq, bases):
    """Exact value relative to the first commensurable base row."""
    for base in bases:
        try:
            tagged = ratio_tagged(zq, z_for(params, base))
        except NonCommensurableError:
            continue
        if tagged.kind == "finite":
            return base, format_rational(tagged.value)
        return base, "POLE" if tagged.kind == "pole" else "0"
    bases.append(kt)
    return kt, "1"


def cmd_block(args) -> int:
    params = _params(args)
    try:
        kt = make_ktype(params, args.xi, rational(args.f), rational(args.j), 0, args.eps)
    except InvalidWeightError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    rows = []
    try:
        block = block2x2(params, kt, args.strict_paper)
        for name, c in zip(("b11", "b12", "b21", "b22"), block.coefficients):
            rows.append({"quantity": name, "value": format_rational(c)})
        rows.append({"quantity": "shared_factor",
                     "value": json.dumps(block.factor.to_json(), sort_keys=True)})
    except SingularCoefficientError as exc:
        rows.append({"quantity": "block", "value": f"SINGULAR({exc.which})"})
    if params.r == Fraction(1, 2):
        fo = first_order_block(params, kt, args.strict_paper)
        for (i, k), val in zip(((1, 1), (1, 2), (2, 1), (2, 2)),
                               (fo[0][0], fo[0][1], fo[1][0], fo[1][1])):
            rows.append({"quantity": f"order_one_block({i},{k})/i",
                         "value": format_rational(val)})
    _emit(_rows_text(rows, ["quantity", "value"], args.format), args.out)
    return 0


def cmd_neighbors(args) -> int:
    params = _params(args)
    try:
        kt = make_ktype(params, args.xi, rational(args.f), rational(args.j),
                        args.q, args.eps)
    except InvalidWeightError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if kt.multiplicity == 1:
        matrix = mult1_quotient_matrix(params, kt)
    else:
        matrix = mult2_det_quotient_matrix(params, kt, args.strict_paper)
    present = dict(neighbors(kt))
    rows = []
    for dj, entries in matrix.rows():
        row = {"dj": f"{dj:+d}"}
        for df, entry in zip((-1, 1), entries):
            key = f"df={df:+d}"
            if entry is None:
                row[key] = "absent"
            else:
                nb = present[entry.direction]
                row[key] = f"{entry.render()}  -> {nb.label()}"
        rows.append(row)
    text = _rows_text(rows, ["dj", "df=-1", "df=+1"], args.format)
    if kt.multiplicity == 2 and kt.j >= Fraction(3, 2) and args.format == "table":
        sq = interface_square(kt)
        text += ("interface square:\n"
                 f"  alpha1 = {sq.alpha1.label()}\n  alpha2 = {sq.alpha2.label()}\n"
                 f"  beta1  = {sq.beta1.label()}\n  beta2  = {sq.beta2.label()}\n")
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    params = _params(args)
    f_min, f_max, j_max, xis, epss = _region_args(args)
    centers_m1 = list(enumerate_ktypes(params, f_min, f_max, j_max, (1,), xis, epss))
    centers_m2 = list(enumerate_ktypes(params, f_min, f_max, j_max, (0,), xis, epss))
    try:
        reports, calibrations = run_all_suites(
            params, centers_m1, centers_m2, xis, f_min, f_max, j_max,
            strict_paper=args.strict_paper)
    except InconsistentSystemError as exc:
        print(f"calibration inconsistent: {exc}", file=sys.stderr)
        return 1
    reading = resolve_block_factor_reading(params, centers_m2[:40])
    all_ok = all(rep.ok for rep in reports.values()) and \
        all(cal.consistent for cal in calibrations.values())
    for rep in reports.values():
        print(rep.summary_line())
    for xi, cal in sorted(calibrations.items()):
        status = "consistent" if cal.consistent else "INCONSISTENT"
        print(f"calibration xi={xi:+d}   {status} "
              f"({cal.difference_edges} constraints, {len(cal.table)} classes)")
    print(f"block shared factor resolved at weight: {reading['resolved']}")
    if not all_ok:
        for rep in reports.values():
            fail = rep.first_failure
            if fail is not None:
                print(f"first failing edge [{rep.suite}]: "
                      f"{fail.center.label()} -> "
                      f"{fail.neighbor.label() if fail.neighbor else '-'} "
                      f"residuals={fail.residuals}")
                break
    if args.out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "params": {"n": params.n, "r": format_rational(params.r),
                       "lattice": params.f_lattice,
                       "strict_paper": bool(args.strict_paper)},
            "region": {"f_min": format_rational(f_min), "f_max": format_rational(f_max),
                       "j_max": format_rational(j_max),
                       "xi": sorted(xis), "eps": sorted(epss)},
            "convention": dict(CONVENTION, block_factor_resolution=reading),
            "calibration": {str(xi): {"consistent": cal.consistent,
                                      "difference_edges": cal.difference_edges,
                                      "unconstraining_edges": cal.unconstraining_edges,
                                      "probe": cal.probe,
                                      "classes": [
                                          {"j": format_rational(j), "eps": eps,
                                           "L": format_rational(val)}
                                          for (j, eps), val in cal.table.items()],
                                      "issues": cal.issues}
                            for xi, cal in calibrations.items()},
            "suites": {name: rep.to_json() for name, rep in reports.items()},
            "ok": all_ok,
        }
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if all_ok else 1


def cmd_calibrate(args) -> int:
    params = _params(args)
    f_min, f_max, j_max, _, _ = _region_args(args)
    try:
        result = calibrate_L(params, args.xi_solve, f_min, f_max, j_max)
    except InconsistentSystemError as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return 1
    rows = [{"j": format_rational(j), "eps": f"{eps:+d}", "L": format_rational(val)}
            for (j, eps), val in result.table.items()]
    text = _rows_text(rows, ["j", "eps", "L"], args.format)
    if args.format == "table":
        text += (f"constraints: {result.difference_edges}, "
                 f"unconstraining: {result.unconstraining_edges}, "
                 f"consistent: {result.consistent}\n")
    _emit(text, args.out)
    return 0 if result.consistent else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"spectrum": cmd_spectrum, "block": cmd_block,
                "neighbors": cmd_neighbors, "verify": cmd_verify,
                "calibrate": cmd_calibrate}
    return handlers[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
