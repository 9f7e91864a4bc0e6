"""Command-line front end: JSON reports and corpus cross-checking.

Exit codes: 0 success, 2 schema violation, 3 computation error,
4 disagreement detected (the report is still emitted).  Standard output
carries nothing but the report; diagnostics go to standard error.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import s1cw, seifert, t2cw
from .chaincx import verify_homotopy, x1_filtered
from .groups import word_to_json
from .hochschild import epsilon_star, reduce_class

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_COMPUTE = 3
EXIT_DISAGREE = 4


class SchemaError(Exception):
    pass


# -- serialization ---------------------------------------------------------

def fraction_json(q):
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def abelian_json(element):
    group = element.group
    return {
        "free": list(element.free),
        "torsion": list(element.torsion),
        "group": {"rank": group.free_rank, "torsion-coeffs": list(group.torsion)},
    }


def class_id_json(oracle, cid):
    if cid.kind == "central":
        out = {"kind": "central", "k": cid.data[0]}
    elif cid.kind == "exceptional":
        j, i, k = cid.data
        out = {"kind": "exceptional", "fiber": j, "exponent": i, "offset": k}
    elif cid.kind == "abelian":
        out = {"kind": "abelian", "vector": list(cid.data)}
    else:
        out = {"kind": "opaque", "word": [list(p) for p in cid.data]}
    out["label"] = oracle.class_str(cid)
    if cid.kind == "exceptional" and hasattr(oracle, "theorem_class_str"):
        out["cited-as"] = oracle.theorem_class_str(cid)
    return out


def component_class_json(cc):
    oracle = cc.oracle
    out = []
    for comp in cc.components:
        kind, value = comp.collapsed()
        if kind == "fiber":
            val = {"fiber-multiple": value, "fiber": comp.class_id.data[0]}
            display = f"{value}*{{g{comp.class_id.data[0]}}}"
        elif kind == "h1":
            val = {"h1": abelian_json(value)}
            display = str(value)
        else:
            val = {"raw": [[word_to_json(w), n] for w, n in value]}
            display = " + ".join(f"{n}*{{{oracle.word_str(w)}}}" for w, n in value)
        out.append({
            "class": class_id_json(oracle, comp.class_id),
            "value": val,
            "entries": [[word_to_json(w), n] for w, n in comp.entries],
            "display": display,
        })
    return out


def tagged(value, pipeline):
    return {"value": value, "pipeline": pipeline}


# -- reports ---------------------------------------------------------------

def seifert_report(data):
    oracle = data.oracle()
    adm = seifert.admissible(data)
    hdata = seifert.h1(data)
    order, criterion_ok = seifert.gamma0_order(data)
    pres = seifert.presentation(data)

    complex_ = s1cw.from_seifert(data)
    orbit_chain = s1cw.chi_s1(complex_)
    orbit_components = reduce_class(orbit_chain)
    levels = s1cw.to_chain_data(complex_)
    homotopies_ok = all(verify_homotopy(cx, h) for cx, h in levels)
    trace_components = reduce_class(x1_filtered(levels))

    checks = {
        "pipeline-agreement": orbit_components == trace_components,
        "homotopy-relations": homotopies_ok,
        "gamma0-order-criterion": criterion_ok,
    }

    report = {
        "kind": "seifert",
        "input": seifert.to_json(data),
        "admissible": adm,
        "exact": oracle.exact,
        "formal": not oracle.exact,
        "presentation": {
            "generators": list(pres.generators),
            "relators": pres.relator_strings(),
            "central": list(pres.central),
        },
        "h1": tagged({
            "group": {
                "rank": hdata.group.free_rank,
                "torsion-coeffs": list(hdata.group.torsion),
            },
            "gamma0": abelian_json(hdata.gamma0),
            "fibers": [abelian_json(e) for e in hdata.fibers],
        }, "snf"),
        "orbifold-chi": tagged(fraction_json(seifert.orbifold_chi(data)), "formula"),
        "gamma0-order": tagged("infinite" if order is None else order, "snf"),
        "components": {
            "orbit-cycle": component_class_json(orbit_components),
            "filtered-trace": component_class_json(trace_components),
        },
        "chi1": tagged(abelian_json(s1cw.chi1_closed_form(complex_)), "closed-form"),
        "epsilon-star": tagged(
            abelian_json(epsilon_star(orbit_chain)), "orbit-cycle"
        ),
    }
    if data.closed:
        report["euler-number"] = tagged(
            fraction_json(seifert.euler_number(data)), "formula"
        )
    if adm:
        closed_components = seifert.components_closed_form(data)
        checks["closed-form-agreement"] = closed_components == orbit_components
        report["components"]["closed-form"] = component_class_json(closed_components)
        pd_formula = seifert.pd_euler_seifert(data)
        pd_cells = s1cw.pd_euler(complex_)
        checks["pd-euler-agreement"] = pd_formula == pd_cells
        report["pd-euler"] = tagged(abelian_json(pd_formula), "closed-form")
        report["dt-obstruction"] = tagged(seifert.dt_obstruction(data), "closed-form")
        if order is None:
            gq = hdata.gamma0.rational()
            chi_orb = seifert.orbifold_chi(data)
            prime, _double = orbit_components.split()
            checks["rational-euler-class"] = (
                pd_formula.rational() == tuple(chi_orb * x for x in gq)
                and prime.h1_image().rational() == tuple(-chi_orb * x for x in gq)
            )
    report["checks"] = checks
    return report, all(checks.values())


def s1cw_report(complex_):
    s1cw.validate(complex_)
    oracle = complex_.oracle
    orbit_chain = s1cw.chi_s1(complex_)
    orbit_components = reduce_class(orbit_chain)
    levels = s1cw.to_chain_data(complex_)
    homotopies_ok = all(verify_homotopy(cx, h) for cx, h in levels)
    trace_components = reduce_class(x1_filtered(levels))
    chi1 = s1cw.chi1_closed_form(complex_)
    checks = {
        "pipeline-agreement": orbit_components == trace_components,
        "homotopy-relations": homotopies_ok,
        "epsilon-star-closed-form": epsilon_star(orbit_chain) == chi1,
    }
    report = {
        "kind": "s1cw",
        "input": s1cw.to_json(complex_),
        "fixed-points": complex_.has_fixed_cell,
        "quotient-euler-characteristic": complex_.cell_count_alternating(),
        "orbit-cycle": [
            [[word_to_json(u), word_to_json(v)], n] for (u, v), n in orbit_chain.items()
        ],
        "components": {
            "orbit-cycle": component_class_json(orbit_components),
            "filtered-trace": component_class_json(trace_components),
        },
        "chi1": tagged(abelian_json(chi1), "closed-form"),
    }
    if not complex_.has_fixed_cell:
        report["pd-euler"] = tagged(abelian_json(s1cw.pd_euler(complex_)), "cells")
    report["checks"] = checks
    return report, all(checks.values())


def t2cw_report(complex_):
    t2cw.validate(complex_)
    ok, details = t2cw.verify_vanishing(complex_, detail=True)
    report = {
        "kind": "t2cw",
        "input": t2cw.to_json(complex_),
        "vanishing": ok,
        "failures": [list(d) for d in details],
        "checks": {"chain-level-vanishing": ok},
    }
    return report, ok


def detect_kind(payload):
    if "closed" in payload or "bounded" in payload:
        return "seifert"
    cells = payload.get("cells")
    if isinstance(cells, list) and cells:
        if "g1" in cells[0]:
            return "t2cw"
        if "isotropy" in cells[0]:
            return "s1cw"
    raise SchemaError("cannot infer input kind")


def run_report(payload, kind):
    try:
        if kind == "seifert":
            return seifert_report(seifert.from_json(payload))
        if kind == "s1cw":
            return s1cw_report(s1cw.from_json(payload))
        if kind == "t2cw":
            return t2cw_report(t2cw.from_json(payload))
    except (KeyError, TypeError, ValueError, s1cw.ValidationError,
            t2cw.T2ValidationError) as exc:
        raise SchemaError(str(exc)) from exc
    raise SchemaError(f"unknown kind {kind!r}")


# -- rendering -------------------------------------------------------------

def _render_text(value, indent=0, label=None):
    pad = "  " * indent
    head = f"{pad}{label}: " if label is not None else pad
    if isinstance(value, dict):
        lines = [f"{pad}{label}:"] if label is not None else []
        for k, v in value.items():
            lines.extend(_render_text(v, indent + (label is not None), k))
        return lines
    if isinstance(value, list):
        lines = [f"{pad}{label}:"] if label is not None else []
        for item in value:
            lines.extend(_render_text(item, indent + (label is not None), "-"))
        return lines
    return [head + repr(value)]


def emit(report, fmt):
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(_render_text(report)))


# -- commands --------------------------------------------------------------

def cmd_report(args):
    try:
        payload = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        report, agree = run_report(payload, args.kind)
    except SchemaError as exc:
        print(f"error: schema violation: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except Exception as exc:  # exact computation failed somewhere
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    emit(report, args.format)
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_crosscheck(args):
    root = Path(args.corpus)
    if not root.is_dir():
        print(f"error: not a directory: {root}", file=sys.stderr)
        return EXIT_SCHEMA
    results = []
    for path in sorted(root.glob("*.json")):
        entry = {"file": path.name}
        try:
            payload = json.loads(path.read_text())
            kind = detect_kind(payload)
            entry["kind"] = kind
            _report, agree = run_report(payload, kind)
            entry["status"] = "pass" if agree else "disagree"
        except (json.JSONDecodeError, SchemaError) as exc:
            entry["status"] = "invalid"
            entry["detail"] = str(exc)
        except Exception as exc:
            entry["status"] = "error"
            entry["detail"] = str(exc)
        results.append(entry)
    statuses = [e["status"] for e in results]
    summary = {
        "total": len(results),
        "pass": statuses.count("pass"),
        "fail": len(results) - statuses.count("pass"),
        "entries": results,
    }
    emit(summary, args.format)
    if "disagree" in statuses:
        return EXIT_DISAGREE
    if "error" in statuses:
        return EXIT_COMPUTE
    if "invalid" in statuses:
        return EXIT_SCHEMA
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="orbitrace",
        description="Exact trace invariants of circle actions on cell complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    rep = sub.add_parser("report", help="compute all invariants of one input file")
    rep.add_argument("input")
    rep.add_argument("--kind", required=True, choices=("seifert", "s1cw", "t2cw"))
    rep.add_argument("--format", default="json", choices=("json", "text"))
    rep.set_defaults(func=cmd_report)
    cross = sub.add_parser(
        "crosscheck", help="run both pipelines on every input in a directory"
    )
    cross.add_argument("corpus")
    cross.add_argument("--format", default="json", choices=("json", "text"))
    cross.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
