"""Command-line surface: every verification and export as one invocation.

Exit codes: 0 = success/verified, 1 = verification failure, 2 = usage
error.  All randomized commands require an explicit --seed; identical
flags and seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exactalg import ratfun_to_str
from .exchange import (
    cy_quotient,
    directed_paths,
    distance_diameter,
    enumerate_interval,
    export_graph,
    faces,
    h1_of_complex,
    path_labels,
)
from .hall import verify_reineke
from .hearts import Heart, initial_heart, is_standard, standardize
from .qdilog import (
    dt_invariant,
    ls_identity_check,
    pentagon_check,
    square_check,
    verify_path_independence,
    wall_crossing_check,
)
from .quiver import QuiverError, build_quiver, coxeter_number, positive_roots
from .stability import (
    StabilityFunction,
    an_linear_quiver,
    an_total_charges,
    dn_stability_quiver,
    dn_total_charges,
    e_stability_quiver,
    e_total_charges,
    induced_stratum,
    is_totally_stable,
    search_inducing,
    stable_indecs,
    stratum_from_json,
    stratum_to_json,
    validate_stratum_by_filtration,
    validate_stratum_by_path,
)


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _quiver_from_args(args):
    if getattr(args, "paper_table", False):
        return _paper_quiver(args.type)
    return build_quiver(args.type, args.orient)


def _paper_quiver(tag):
    letter = tag[0].upper()
    n = int(tag[1:])
    if letter == "A":
        return an_linear_quiver(n)
    if letter == "D":
        return dn_stability_quiver(n)
    return e_stability_quiver(n)


def _paper_charges(tag):
    letter = tag[0].upper()
    n = int(tag[1:])
    if letter == "A":
        return an_total_charges(n)
    if letter == "D":
        return dn_total_charges(n)
    return e_total_charges(n)


def _interval(args, q):
    base = initial_heart(q)
    return enumerate_interval(q, base, args.window), base


# -- command handlers ---------------------------------------------------------

def cmd_quiver_info(args):
    q = _quiver_from_args(args)
    roots = positive_roots(q)
    h = coxeter_number(q)
    payload = {
        "type": q.type_tag,
        "arrows": [list(a) for a in q.arrows],
        "num_roots": len(roots),
        "coxeter_number": h,
        "roots": [list(r) for r in roots],
    }
    _emit(args, payload, [f"quiver {q.type_tag}: roots={len(roots)} h={h}"])
    return 0


def cmd_eg_enum(args):
    q = _quiver_from_args(args)
    g, base = _interval(args, q)
    dis, dia = distance_diameter(g, base, base.shifted(args.window))
    payload = {
        "type": q.type_tag,
        "window": args.window,
        "hearts": len(g.hearts),
        "edges": len(g.edges),
        "distance": dis,
        "diameter": dia,
    }
    _emit(
        args,
        payload,
        [
            f"EG({q.type_tag}; H, H[{args.window}]): {len(g.hearts)} hearts, "
            f"{len(g.edges)} edges, dis={dis}, dia={dia}"
        ],
    )
    return 0


def cmd_eg_faces(args):
    q = _quiver_from_args(args)
    g, _base = _interval(args, q)
    fl = faces(g)
    squares = sum(1 for f in fl if f.kind == "square")
    pentagons = sum(1 for f in fl if f.kind == "pentagon")
    payload = {"squares": squares, "pentagons": pentagons}
    _emit(args, payload, [f"faces: {squares} squares, {pentagons} pentagons"])
    return 0


def cmd_eg_h1(args):
    q = _quiver_from_args(args)
    g, _base = _interval(args, q)
    faces(g)
    h1 = h1_of_complex(g)
    trivial = h1["free_rank"] == 0 and not h1["torsion"]
    payload = dict(h1, trivial=trivial)
    _emit(args, payload, [f"H1: free rank {h1['free_rank']}, torsion {h1['torsion']}"])
    return 0 if trivial else 1


def cmd_eg_export(args):
    q = _quiver_from_args(args)
    g, _base = _interval(args, q)
    if args.with_faces:
        faces(g)
    text = export_graph(g, args.format, args.out)
    if args.out is None:
        print(text)
    else:
        print(f"wrote {args.format} export to {args.out}")
    return 0


def cmd_paths_enum(args):
    q = _quiver_from_args(args)
    g, base = _interval(args, q)
    target = base.shifted(args.window)
    if args.sample is not None:
        if args.seed is None:
            print("--sample requires an explicit --seed", file=sys.stderr)
            return 2
        paths = directed_paths(g, base, target, "sample", sample=args.sample, seed=args.seed)
        mode = f"sample({args.sample}, seed={args.seed})"
    elif args.longest:
        paths = directed_paths(g, base, target, "longest")
        mode = "longest"
    elif args.shortest:
        paths = directed_paths(g, base, target, "shortest")
        mode = "shortest"
    else:
        paths = directed_paths(g, base, target, "all")
        mode = "all"
    roots = positive_roots(q)
    shown = [
        [f"{list(roots[lab.root])}@{lab.shift}" for lab in path_labels(g, p)]
        for p in paths[: args.limit]
    ]
    payload = {"mode": mode, "count": len(paths), "paths": shown}
    lines = [f"{mode}: {len(paths)} paths"] + [" -> ".join(p) for p in shown]
    _emit(args, payload, lines)
    return 0


def cmd_strata_validate(args):
    q = _quiver_from_args(args)
    text = _read_inline_or_file(args.stratum)
    stratum = stratum_from_json(q, text)
    by_path = validate_stratum_by_path(q, stratum)
    by_filt = validate_stratum_by_filtration(q, stratum)
    payload = {"by_path": by_path, "by_filtration": by_filt, "agree": by_path == by_filt}
    _emit(
        args,
        payload,
        [f"walk validator: {by_path}; filtration validator: {by_filt}"],
    )
    if by_path != by_filt:
        return 1
    return 0 if by_path else 1


def _read_inline_or_file(spec):
    if spec.strip().startswith(("[", "{")):
        return spec
    with open(spec, "r", encoding="utf-8") as fh:
        return fh.read()


def cmd_stab_table(args):
    q = _paper_quiver(args.type)
    z = StabilityFunction(q, _paper_charges(args.type))
    payload = {
        "type": q.type_tag,
        "arrows": [list(a) for a in q.arrows],
        "charges": json.loads(z.to_json()),
    }
    text = json.dumps(payload, sort_keys=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote charge table to {args.out}")
    else:
        print(text)
    return 0


def cmd_stab_check(args):
    if args.paper_table:
        q = _paper_quiver(args.type)
        z = StabilityFunction(q, _paper_charges(args.type))
    else:
        q = build_quiver(args.type, args.orient)
        with open(args.charges, "r", encoding="utf-8") as fh:
            data = fh.read()
        try:
            z = StabilityFunction.from_json(q, data)
        except KeyError:
            payload = json.loads(data)
            z = StabilityFunction.from_json(q, json.dumps(payload["charges"]))
    stable = stable_indecs(q, z)
    roots = positive_roots(q)
    total = len(roots)
    totally = len(stable) == total
    payload = {
        "type": q.type_tag,
        "stable": len(stable),
        "indecomposables": total,
        "totally_stable": totally,
    }
    _emit(args, payload, [f"stable {len(stable)}/{total}; totally stable: {totally}"])
    if args.totally_stable:
        return 0 if totally else 1
    return 0


def cmd_stab_induce(args):
    if args.paper_table:
        q = _paper_quiver(args.type)
    else:
        q = build_quiver(args.type, args.orient)
    if args.target is not None:
        target = stratum_from_json(q, _read_inline_or_file(args.target))
        if args.seed is None:
            print("search requires an explicit --seed", file=sys.stderr)
            return 2
        initial = _paper_charges(args.type) if args.paper_table else None
        witness = search_inducing(q, target, budget=args.budget, seed=args.seed, initial=initial)
        payload = {
            "found": witness is not None,
            "budget": args.budget,
            "seed": args.seed,
            "note": "absence of a witness is not a nonexistence proof",
        }
        if witness is not None:
            payload["charges"] = json.loads(witness.to_json())
        _emit(args, payload, [f"witness found: {witness is not None}"])
        return 0
    if args.paper_table:
        z = StabilityFunction(q, _paper_charges(args.type))
    else:
        with open(args.charges, "r", encoding="utf-8") as fh:
            z = StabilityFunction.from_json(q, fh.read())
    stratum = induced_stratum(q, z)
    payload = {"stratum": json.loads(stratum_to_json(q, stratum))}
    _emit(args, payload, [stratum_to_json(q, stratum)])
    return 0


def cmd_dt_compute(args):
    q = _quiver_from_args(args)
    series = dt_invariant(q, args.degree)
    payload = {"type": q.type_tag, "degree": args.degree, "series": json.loads(series.to_json())}
    lines = [f"DT({q.type_tag}) at degree {args.degree}:"]
    for term in payload["series"]:
        lines.append(f"  y^{tuple(term['alpha'])}: {term['coeff']}")
    _emit(args, payload, lines)
    return 0


def cmd_dt_verify(args):
    q = _quiver_from_args(args)
    if args.all:
        policy, sample = "all", args.sample
    elif args.longest:
        policy, sample = "longest", args.sample
    else:
        policy, sample = "sample", args.sample
    if sample is not None and args.seed is None:
        print("--sample requires an explicit --seed", file=sys.stderr)
        return 2
    report = verify_path_independence(q, args.degree, policy, sample=sample, seed=args.seed)
    ok = report["equal"]
    lines = [
        ("OK" if ok else "FAIL")
        + f": {report['directed_paths']} directed paths"
        + (f", {report['signed_paths']} signed paths" if report.get("signed_paths") else "")
        + ", series equal" * ok
    ]
    _emit(args, report, lines)
    return 0 if ok else 1


def cmd_dt_pentagon(args):
    ok = pentagon_check(args.degree, flipped=args.flipped)
    sq = square_check(args.degree)
    payload = {"pentagon": ok, "square": sq, "degree": args.degree, "flipped": args.flipped}
    _emit(args, payload, [f"pentagon: {ok}; square: {sq}"])
    return 0 if (ok and sq) else 1


def cmd_dt_ls(args):
    q = _quiver_from_args(args)
    ok = ls_identity_check(q, args.degree)
    _emit(args, {"equal": ok}, [f"Ind-vs-Sim identity at degree {args.degree}: {ok}"])
    return 0 if ok else 1


def cmd_dt_wallcross(args):
    q = _quiver_from_args(args)
    report = wall_crossing_check(q, args.sink, args.degree)
    ok = report["equal"]
    _emit(
        args,
        report,
        [("OK" if ok else "FAIL") + f": wall crossing on {report.get('pairs', 0)} heart pairs"],
    )
    return 0 if ok else 1


def cmd_cy_quotient(args):
    q = _quiver_from_args(args)
    data = cy_quotient(q, args.N)
    lengths = sorted({ln["cycle_length"] for ln in data["lines"]})
    ok = lengths == [args.N - 1]
    payload = {
        "N": args.N,
        "vertices": len(data["vertices"]),
        "lines": len(data["lines"]),
        "cycle_lengths": lengths,
        "all_cycles_N_minus_1": ok,
    }
    _emit(
        args,
        payload,
        [f"CY quotient N={args.N}: {len(data['vertices'])} hearts, "
         f"{len(data['lines'])} lines, cycle lengths {lengths}"],
    )
    return 0 if ok else 1


def cmd_hall_verify(args):
    report = verify_reineke(args.bound)
    ok = report["equal"]
    _emit(args, report, [("OK" if ok else "FAIL") + f": Hall oracle at bound {args.bound}"])
    return 0 if ok else 1


def cmd_standardize(args):
    q = _quiver_from_args(args)
    heart = Heart.from_json(q, _read_inline_or_file(args.heart))
    steps, result = standardize(heart)
    payload = {
        "steps": len(steps),
        "standard": is_standard(result),
        "result": json.loads(result.to_json()),
    }
    _emit(args, payload, [f"standardized in {len(steps)} L-tilts -> {result.label()}"])
    return 0


# -- parser ---------------------------------------------------------------

def _add_common(p, *, orient=True, window=False, degree=False, seed=False):
    p.add_argument("--type", required=True, help="Dynkin type tag, e.g. A2, D4, E8")
    if orient:
        p.add_argument("--orient", default=None, help='orientation like "2>1,3>1,4>1"')
    if window:
        p.add_argument("--window", type=int, default=1, help="interval width k (default 1)")
    if degree:
        p.add_argument("--degree", type=int, default=6, help="series truncation degree")
    if seed:
        p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--threads", type=int, default=1, help="worker cap (serial engine)")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dynkinhearts",
        description="Exact computations on hearts, exchange graphs, HN strata "
        "and DT invariants of Dynkin quivers.",
    )
    sub = ap.add_subparsers(dest="cmd")

    q = sub.add_parser("quiver", help="quiver data").add_subparsers(dest="sub")
    p = q.add_parser("info", help="roots and Coxeter number")
    _add_common(p)
    p.set_defaults(func=cmd_quiver_info)

    eg = sub.add_parser("eg", help="exchange graph intervals").add_subparsers(dest="sub")
    p = eg.add_parser("enum")
    _add_common(p, window=True)
    p.set_defaults(func=cmd_eg_enum)
    p = eg.add_parser("faces")
    _add_common(p, window=True)
    p.set_defaults(func=cmd_eg_faces)
    p = eg.add_parser("h1")
    _add_common(p, window=True)
    p.set_defaults(func=cmd_eg_h1)
    p = eg.add_parser("export")
    _add_common(p, window=True)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--with-faces", action="store_true")
    p.set_defaults(func=cmd_eg_export)
    p = eg.add_parser("standardize", help="L-tilt a heart until standard")
    _add_common(p)
    p.add_argument("--heart", required=True, help="heart JSON or a file containing it")
    p.set_defaults(func=cmd_standardize)

    pa = sub.add_parser("paths", help="directed paths").add_subparsers(dest="sub")
    p = pa.add_parser("enum")
    _add_common(p, window=True, seed=True)
    p.add_argument("--longest", action="store_true")
    p.add_argument("--shortest", action="store_true")
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--limit", type=int, default=20, help="max paths to print")
    p.set_defaults(func=cmd_paths_enum)

    st = sub.add_parser("strata", help="HN strata").add_subparsers(dest="sub")
    p = st.add_parser("validate")
    _add_common(p)
    p.add_argument("--stratum", required=True, help="stratum JSON or a file containing it")
    p.set_defaults(func=cmd_strata_validate)

    sb = sub.add_parser("stab", help="stability functions").add_subparsers(dest="sub")
    p = sb.add_parser("check")
    _add_common(p)
    p.add_argument("--charges", default=None, help="charges JSON file")
    p.add_argument("--paper-table", action="store_true", help="use the bundled tables")
    p.add_argument("--totally-stable", action="store_true")
    p.set_defaults(func=cmd_stab_check)
    p = sb.add_parser("induce")
    _add_common(p, seed=True)
    p.add_argument("--charges", default=None)
    p.add_argument("--paper-table", action="store_true")
    p.add_argument("--target", default=None, help="stratum JSON to search for")
    p.add_argument("--budget", type=int, default=100000)
    p.set_defaults(func=cmd_stab_induce)
    p = sb.add_parser("table", help="dump a bundled totally-stable charge table")
    p.add_argument("--type", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stab_table)

    dt = sub.add_parser("dt", help="DT-type invariants").add_subparsers(dest="sub")
    p = dt.add_parser("compute")
    _add_common(p, degree=True)
    p.set_defaults(func=cmd_dt_compute)
    p = dt.add_parser("verify")
    _add_common(p, degree=True, seed=True)
    p.add_argument("--all", action="store_true")
    p.add_argument("--longest", action="store_true")
    p.add_argument("--sample", type=int, default=None)
    p.set_defaults(func=cmd_dt_verify)
    p = dt.add_parser("pentagon")
    p.add_argument("--degree", type=int, default=8)
    p.add_argument("--flipped", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_dt_pentagon)
    p = dt.add_parser("ls-identity")
    _add_common(p, degree=True)
    p.set_defaults(func=cmd_dt_ls)
    p = dt.add_parser("wallcross")
    _add_common(p, degree=True)
    p.add_argument("--sink", type=int, required=True)
    p.set_defaults(func=cmd_dt_wallcross)

    cy = sub.add_parser("cy", help="Calabi-Yau quotient shadow").add_subparsers(dest="sub")
    p = cy.add_parser("quotient")
    _add_common(p)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_cy_quotient)

    ha = sub.add_parser("hall", help="finite-field Hall oracle").add_subparsers(dest="sub")
    p = ha.add_parser("verify")
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_hall_verify)

    return ap


def run(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if not hasattr(args, "func"):
        ap.print_help()
        return 2
    try:
        return args.func(args)
    except (QuiverError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
