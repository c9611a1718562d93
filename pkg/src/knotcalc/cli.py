"""Command-line front end.

Subcommands:

* ``invariants`` -- parse a diagram (PD text, braid word, diagram JSON,
  plat JSON, or a bundled table name) and report invariants;
* ``verify-paper`` -- run the published stevedore-cable verification
  chain and report each identity with both sides;
* ``table`` -- list the bundled knot table or recompute and diff it;
* ``cable`` -- build a 2-cable with prescribed framing and run checks.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 resource limit.  Reports are deterministic: timing lives in a separate
section that never enters comparison payloads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import table as table_mod
from .cable import cable2, king_verify, make_hat
from .diagram import Diagram, pd_parse
from .errors import KnotError, ResourceLimit, TooLarge
from .polyring import LaurentPoly
from .presentations import (PlatPresentation, braid_parse, braid_to_tangle,
                            spine_boundary_knot, standardize, trace_closure)
from .seifert import (alexander_from_seifert, determinant, is_monic,
                      normalize_alexander, seifert_matrix,
                      seifert_surface_genus, signature)
from .skein import (DEFAULT_ENGINE_CAP, alexander_from_conway, conway,
                    jones_memoized, kauffman_F, shared_memos)
from .verification import stevedore_chain_report

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

INVARIANT_NAMES = ("jones", "alexander", "conway", "kauffman",
                   "determinant", "signature", "genus", "fibered")


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise SystemExit(f"bad integer in ${name}: {value!r}")


def _load_input(text_or_path: str) -> Diagram:
    """Table name, file path, or literal input text."""
    try:
        return table_mod.entry(text_or_path).diagram()
    except KeyError:
        pass
    if os.path.exists(text_or_path):
        with open(text_or_path) as fh:
            text = fh.read()
    else:
        text = text_or_path
    text = text.strip()
    if not text:
        raise KnotError("empty input")
    if text.startswith("{"):
        data = json.loads(text)
        if "genus" in data:
            plat = PlatPresentation.from_json(text)
            return spine_boundary_knot(standardize(plat))
        return Diagram.from_json(text)
    if text.split()[0].startswith(("X", "O")):
        return pd_parse(text)
    return trace_closure(braid_to_tangle(braid_parse(text)))


def _emit(report: dict, fmt: str, stream=sys.stdout):
    if fmt == "json":
        json.dump(report, stream, sort_keys=True, indent=1)
        stream.write("\n")
        return
    payload = report["payload"]
    _emit_text(payload, stream)
    timing = report.get("timing") or {}
    for key in sorted(timing):
        stream.write(f"# timing {key}: {timing[key]}\n")


def _emit_text(payload, stream, indent=""):
    if isinstance(payload, dict):
        for key in payload:
            value = payload[key]
            if isinstance(value, (dict, list)):
                stream.write(f"{indent}{key}:\n")
                _emit_text(value, stream, indent + "  ")
            else:
                stream.write(f"{indent}{key}: {value}\n")
    elif isinstance(payload, list):
        for value in payload:
            _emit_text(value, stream, indent)
            if isinstance(value, (dict, list)):
                stream.write(f"{indent}-\n")
    else:
        stream.write(f"{indent}{payload}\n")


def cmd_invariants(args) -> int:
    diagram = _load_input(args.input)
    which = (list(INVARIANT_NAMES) if args.which in (None, "all")
             else [w.strip() for w in args.which.split(",")])
    bad = [w for w in which if w not in INVARIANT_NAMES]
    if bad:
        raise KnotError(f"unknown invariants: {', '.join(bad)}; "
                        f"choose from {', '.join(INVARIANT_NAMES)}")
    values = {}
    timing = {}
    need_seifert = {"alexander", "determinant", "signature", "fibered"} & set(which)
    smatrix = None
    if need_seifert:
        t0 = time.perf_counter()
        smatrix = seifert_matrix(diagram)
        timing["seifert_matrix"] = round(time.perf_counter() - t0, 6)
    for name in which:
        t0 = time.perf_counter()
        if name == "jones":
            values[name] = str(jones_memoized(diagram, args.max_crossings))
        elif name == "alexander":
            values[name] = str(alexander_from_seifert(smatrix))
        elif name == "conway":
            nabla = conway(diagram, args.max_crossings)
            values[name] = nabla.to_str("z")
        elif name == "kauffman":
            values[name] = str(kauffman_F(diagram, args.max_crossings))
        elif name == "determinant":
            values[name] = determinant(smatrix)
        elif name == "signature":
            values[name] = signature(smatrix)
        elif name == "genus":
            values[name] = seifert_surface_genus(diagram)
        elif name == "fibered":
            monic = is_monic(alexander_from_seifert(smatrix))
            values[name] = "pass" if monic else "fail"
        timing[name] = round(time.perf_counter() - t0, 6)
    report = {
        "payload": {
            "input": args.input,
            "crossings": diagram.n_crossings,
            "components": diagram.n_components,
            "writhe": diagram.writhe(),
            "invariants": values,
        },
        "timing": timing,
        "memo": {k: m.stats() for k, m in shared_memos().items()},
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    report = stevedore_chain_report(max_crossings=args.max_crossings)
    _emit(report, args.format)
    return EXIT_OK if report["payload"]["all_pass"] else EXIT_VERIFY


def _verify_one(name_and_cap):
    name, cap = name_and_cap
    diffs = table_mod.verify_entry(table_mod.entry(name), cap)
    return name, diffs


def cmd_table(args) -> int:
    entries = table_mod.load_table()
    if args.action == "list":
        payload = {"entries": [
            {"name": e.name, "crossings": e.diagram().n_crossings,
             "jones": e.jones, "alexander": e.alexander,
             "determinant": e.determinant, "signature": e.signature,
             "genus": e.genus, "fibered": e.fibered}
            for e in entries
        ]}
        _emit({"payload": payload, "timing": {}}, args.format)
        return EXIT_OK
    t0 = time.perf_counter()
    jobs = [(e.name, args.max_crossings) for e in entries]
    if args.workers > 1:
        import multiprocessing
        with multiprocessing.Pool(args.workers) as pool:
            results = dict(pool.map(_verify_one, jobs))
    else:
        results = dict(map(_verify_one, jobs))
    rows = []
    for e in entries:
        diffs = results[e.name]
        rows.append({"name": e.name, "clean": not diffs,
                     "diffs": {k: {"stored": s, "computed": c}
                               for k, (s, c) in sorted(diffs.items())}})
    payload = {"entries": rows, "all_clean": all(r["clean"] for r in rows)}
    report = {"payload": payload,
              "timing": {"total": round(time.perf_counter() - t0, 6)}}
    _emit(report, args.format)
    return EXIT_OK if payload["all_clean"] else EXIT_VERIFY


def cmd_cable(args) -> int:
    base = _load_input(args.input)
    t0 = time.perf_counter()
    cab = cable2(base, args.framing)
    checks = {}
    timing = {"cable": round(time.perf_counter() - t0, 6)}
    wanted = ([c.strip() for c in args.checks.split(",")]
              if args.checks else ["writhe-formula", "hat", "king"])
    if "writhe-formula" in wanted:
        lhs = cab.diagram.writhe()
        rhs = 4 * base.writhe() + 2 * (args.framing - base.writhe())
        checks["writhe-formula"] = {"pass": lhs == rhs,
                                    "lhs": str(lhs), "rhs": str(rhs)}
    v_tilde = None
    if {"hat", "king"} & set(wanted):
        t0 = time.perf_counter()
        v_tilde = jones_memoized(cab.diagram, args.max_crossings)
        timing["jones_cable"] = round(time.perf_counter() - t0, 6)
    if "hat" in wanted:
        hat = make_hat(cab)
        t0 = time.perf_counter()
        v_hat = jones_memoized(hat.diagram, args.max_crossings)
        timing["jones_hat"] = round(time.perf_counter() - t0, 6)
        expected = LaurentPoly.t_pow(Fraction(-3 * args.framing)) * v_tilde
        checks["hat"] = {"pass": v_hat == expected,
                         "lhs": str(v_hat), "rhs": str(expected)}
    if "king" in wanted:
        t0 = time.perf_counter()
        f_poly = kauffman_F(base, args.max_crossings)
        timing["kauffman_F"] = round(time.perf_counter() - t0, 6)
        checks["king"] = {"pass": king_verify(f_poly, v_tilde, args.framing),
                          "lhs": f"F: {f_poly}",
                          "rhs": f"V(cable): {v_tilde}"}
    payload = {
        "input": args.input,
        "framing": args.framing,
        "crossings": cab.diagram.n_crossings,
        "linking": cab.linking(),
        "checks": checks,
        "all_pass": all(c["pass"] for c in checks.values()),
    }
    _emit({"payload": payload, "timing": timing}, args.format)
    return EXIT_OK if payload["all_pass"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotcalc",
        description="Exact knot and link invariants from planar diagrams.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument(
        "--max-crossings", type=int,
        default=_env_int("KNOTCALC_MAX_CROSSINGS", DEFAULT_ENGINE_CAP),
        help="crossing cap for the recursive engines")
    parser.add_argument(
        "--workers", type=int, default=_env_int("KNOTCALC_WORKERS", 1),
        help="worker processes for independent table entries")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="invariants of one diagram")
    p.add_argument("input", help="PD text, braid word, diagram/plat JSON, "
                                 "file path, or bundled table name")
    p.add_argument("--which", help="comma-separated invariant names or 'all'")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify-paper",
                       help="verify the published stevedore-cable chain")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("table", help="bundled knot table")
    p.add_argument("action", choices=("list", "verify"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("cable", help="2-cable with prescribed framing")
    p.add_argument("input")
    p.add_argument("--framing", type=int, default=0)
    p.add_argument("--checks",
                   help="comma-separated: writhe-formula, hat, king")
    p.set_defaults(func=cmd_cable)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    memo_cap = _env_int("KNOTCALC_MEMO_SIZE", 0)
    if memo_cap:
        for memo in shared_memos().values():
            memo.max_entries = memo_cap
    try:
        return args.func(args)
    except (TooLarge, ResourceLimit) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (KnotError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
