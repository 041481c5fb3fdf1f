"""Command-line front end.

Subcommands: build, verify, regular, theorems, conjectures, jv, export-off,
export-svg, report.  Exit codes: 0 when everything passed, 1 when any
certificate or theorem check failed, 2 on usage errors.  Conjecture scans
are evidence and never affect the exit code.

Artifacts are byte-deterministic for a fixed configuration; timings are
printed to stdout only.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction

from . import absolute, cambrian, geometry, triangulation
from .coxeter import load_or_build
from .errors import GroupTooLargeError, InvalidInputError
from .exports import off_text, scalar_repr, svg_text

COMMANDS = ("build", "verify", "regular", "theorems", "conjectures", "jv",
            "export-off", "export-svg", "report")


def _add_common(parser):
    parser.add_argument("--group", help="type label, e.g. A3, B4, H3, I2(7)")
    parser.add_argument("--matrix", help="explicit Coxeter matrix as JSON rows")
    parser.add_argument("--c", dest="coxeter",
                        help="word like s1s2s3, or 'all'")
    parser.add_argument("--base-point", dest="base_point",
                        help="canonical (default) or seed:<int>")
    parser.add_argument("--output-dir", dest="output_dir")
    parser.add_argument("--cache-dir", dest="cache_dir")
    parser.add_argument("--size-cap", dest="size_cap", type=int)
    parser.add_argument("--suite-cap", dest="suite_cap", type=int)
    parser.add_argument("--lp-attempts", dest="lp_attempts", type=int)
    parser.add_argument("--config", help="JSON config file; flags override it")


DEFAULTS = {
    "group": None,
    "matrix": None,
    "coxeter": "all",
    "base_point": "canonical",
    "output_dir": ".",
    "cache_dir": os.environ.get("NCPERM_CACHE_DIR"),
    "size_cap": 2_000_000,
    "suite_cap": triangulation.SUITE_SIZE_CAP,
    "lp_attempts": 32,
}


class RunConfig:
    """Resolved options: config-file values overridden by flags."""

    def __init__(self, args):
        values = dict(DEFAULTS)
        if args.config:
            with open(args.config, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
            unknown = set(loaded) - set(DEFAULTS)
            if unknown:
                raise InvalidInputError(f"unknown config keys {sorted(unknown)}")
            values.update(loaded)
        for key in DEFAULTS:
            flag = getattr(args, key, None)
            if flag is not None:
                values[key] = flag
        if values["group"] is None and values["matrix"] is None:
            raise InvalidInputError("--group or --matrix is required")
        self.__dict__.update(values)


def parse_coxeter_word(system, text):
    """'s1s2s3' -> element; every generator exactly once or it is rejected."""
    letters = []
    for chunk in text.lower().replace(" ", "").split("s"):
        if not chunk:
            continue
        try:
            letters.append(int(chunk) - 1)
        except ValueError:
            raise InvalidInputError(f"malformed Coxeter word {text!r}") from None
    if sorted(letters) != list(range(system.rank)):
        raise InvalidInputError(
            f"Coxeter word {text!r} must use each generator exactly once")
    return system.element_of_word(tuple(letters))


def resolve_coxeter_elements(system, spec):
    if spec == "all":
        return system.coxeter_elements()
    return [parse_coxeter_word(system, spec)]


def resolve_base_point(system, spec):
    if spec == "canonical":
        return geometry.base_point(system)
    if spec.startswith("seed:"):
        return geometry.base_point(system, "random", seed=int(spec[5:]))
    raise InvalidInputError(f"unknown base point mode {spec!r}")


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if hasattr(value, "coeffs"):
        return scalar_repr(value)
    return str(value)


def _write(path, text):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _report_skeleton(system, c, y):
    return {
        "group": system.type_label,
        "coxeter_element_word": system.word_str(c),
        "base_point": [_jsonable(scalar_repr(x)) for x in y],
        "cell_count": None,
        "certificates": {"nondegenerate": None, "facet_matched": None,
                         "volume_equal": None,
                         "regular": {"found_gamma": None, "epsilon": None}},
        "theorems": None,
        "conjectures": None,
        "jv": None,
    }


def _run_verify(system, c, y, report):
    tri = triangulation.build_triangulation(system, c, y)
    res = triangulation.verify_triangulation(tri)
    report["cell_count"] = res["cell_count"]
    cert = report["certificates"]
    cert["nondegenerate"] = res["nondegenerate"]
    cert["facet_matched"] = res["facet_matched"]
    cert["volume_equal"] = res["volume_equal"]
    if res["failures"]:
        cert["failures"] = _jsonable(res["failures"])
    return tri, res["ok"]


def _run_regular(system, c, y, report, tri, lp_attempts):
    if not system.simply_laced:
        raise InvalidInputError("regular certification needs a simply-laced "
                                "group (stability search precondition)")
    found = geometry.find_stability(system, c, attempts=lp_attempts)
    cert = report["certificates"]["regular"]
    if found is None:
        cert["found_gamma"] = False
        return False
    y_star, gamma = found
    tri_star = triangulation.build_triangulation(system, c, y_star)
    res = triangulation.verify_triangulation(tri_star)
    if not res["ok"]:
        return False
    outcome = geometry.regular_certificate(
        system, [cell.elements for cell in tri_star.cells], y_star, gamma)
    cert["found_gamma"] = [str(g) for g in gamma]
    cert["base_point_star"] = [_jsonable(scalar_repr(x)) for x in y_star]
    cert["epsilon"] = str(outcome["epsilon"])
    if not outcome["ok"]:
        cert["violation"] = _jsonable(outcome["violation"])
        return False
    return True


def run(argv=None):
    parser = argparse.ArgumentParser(
        prog="ncperm",
        description="exact noncrossing-chain triangulations of Coxeter "
                    "permutahedra")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        _add_common(p)
    args = parser.parse_args(argv)

    try:
        config = RunConfig(args)
        matrix = json.loads(config.matrix) if isinstance(config.matrix, str) \
            else config.matrix
        system = load_or_build(config.group or "matrix", matrix=matrix,
                               size_cap=config.size_cap,
                               cache_dir=config.cache_dir)
        if args.command == "build":
            print(f"{system.type_label}: |W| = {system.order}, "
                  f"N = {system.num_positive_roots}, "
                  f"degrees = {list(system.degrees)}, "
                  f"field degree = {system.field.degree}")
            return 0
        cs = resolve_coxeter_elements(system, config.coxeter)
        y = resolve_base_point(system, config.base_point)
    except (InvalidInputError, GroupTooLargeError, OSError,
            json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    failed = False
    rows = []
    for c in cs:
        t0 = time.time()
        word = system.word_str(c)
        prefix = os.path.join(config.output_dir,
                              f"{system.type_label}-{word}")
        report = _report_skeleton(system, c, y)
        row = {"group": system.type_label, "coxeter_word": word}
        try:
            ok = _dispatch(args.command, system, c, y, report, row, prefix,
                           config)
        except InvalidInputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        failed = failed or not ok
        rows.append(row)
        status = "PASS" if ok else "FAIL"
        print(f"{args.command} {system.type_label} c={word}: {status} "
              f"({time.time() - t0:.2f}s)")

    if args.command == "report":
        summary = os.path.join(config.output_dir, "report-summary.csv")
        _write_summary_csv(summary, rows)
        print(f"wrote {summary}")
    return 1 if failed else 0


def _dispatch(command, system, c, y, report, row, prefix, config):
    ok = True
    if command == "verify":
        _, ok = _run_verify(system, c, y, report)
        _write(f"{prefix}-verify.json", json.dumps(report, indent=2) + "\n")
    elif command == "regular":
        tri, ok = _run_verify(system, c, y, report)
        ok = _run_regular(system, c, y, report, tri, config.lp_attempts) and ok
        _write(f"{prefix}-regular.json", json.dumps(report, indent=2) + "\n")
    elif command == "theorems":
        res = triangulation.theorem_suite(system, c, size_cap=config.suite_cap)
        report["theorems"] = _jsonable(res)
        ok = res["all_pass"]
        _write(f"{prefix}-theorems.json", json.dumps(report, indent=2) + "\n")
    elif command == "conjectures":
        tri = triangulation.build_triangulation(system, c, y)
        triangulation.verify_triangulation(tri)
        res = triangulation.conjecture_scan(system, c, tri,
                                            size_cap=config.suite_cap)
        report["conjectures"] = _jsonable(res)
        _write(f"{prefix}-conjectures.json", json.dumps(report, indent=2) + "\n")
        ok = True                 # evidence only, never the exit code
    elif command == "jv":
        res = triangulation.jv_polynomial(system, c)
        report["jv"] = {"lhs_coeffs": res["lhs"], "rhs_coeffs": res["rhs"],
                        "equal": res["equal"]}
        ok = res["equal"]
        _write(f"{prefix}-jv.json", json.dumps(report, indent=2) + "\n")
    elif command == "export-off":
        tri, ok = _run_verify(system, c, y, report)
        _write(f"{prefix}.off", off_text(tri))
    elif command == "export-svg":
        if system.rank != 3:
            raise InvalidInputError("SVG export needs a rank-3 group")
        _write(f"{prefix}.svg", svg_text(system, c))
    elif command == "report":
        ok = _full_report(system, c, y, report, row, prefix, config)
    else:
        raise InvalidInputError(f"unknown command {command!r}")
    return ok


def _full_report(system, c, y, report, row, prefix, config):
    from .figures import render_report_figures

    tri, ok = _run_verify(system, c, y, report)
    row["cells"] = report["cell_count"]
    cert = report["certificates"]
    row["nondegenerate"] = cert["nondegenerate"]
    row["facet_matched"] = cert["facet_matched"]
    row["volume_equal"] = cert["volume_equal"]

    if system.simply_laced:
        reg_ok = _run_regular(system, c, y, report, tri, config.lp_attempts)
        ok = ok and reg_ok
        row["regular_found"] = bool(cert["regular"]["found_gamma"])
        row["regular_epsilon"] = cert["regular"]["epsilon"]
    else:
        row["regular_found"] = ""
        row["regular_epsilon"] = ""

    if system.order <= config.suite_cap:
        res = triangulation.theorem_suite(system, c, size_cap=config.suite_cap)
        report["theorems"] = _jsonable(res)
        ok = ok and res["all_pass"]
        row["theorems_pass"] = res["all_pass"]
        scan = triangulation.conjecture_scan(system, c, tri,
                                             size_cap=config.suite_cap)
        report["conjectures"] = _jsonable(scan)
        row["conjectures_pass"] = scan["all_pass"]
    else:
        row["theorems_pass"] = ""
        row["conjectures_pass"] = ""

    jv = triangulation.jv_polynomial(system, c)
    report["jv"] = {"lhs_coeffs": jv["lhs"], "rhs_coeffs": jv["rhs"],
                    "equal": jv["equal"]}
    ok = ok and jv["equal"]
    row["jv_equal"] = jv["equal"]

    _write(f"{prefix}-report.json", json.dumps(report, indent=2) + "\n")
    render_report_figures(tri, prefix)
    return ok


CSV_FIELDS = ["group", "coxeter_word", "cells", "nondegenerate",
              "facet_matched", "volume_equal", "regular_found",
              "regular_epsilon", "theorems_pass", "conjectures_pass",
              "jv_equal"]


def _write_summary_csv(path, rows):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in CSV_FIELDS})


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
