"""Command line front end.  Exit codes: 0 all checks as expected, 1 verification failure, 2 input error."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

from . import ainfty, deform, model, picard, pipeline, trees
from .errors import FloerLabError, NonFieldCoefficients, NewtonDivergence, SingularSolution

SCHEMA = pipeline.SCHEMA


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _emit(args, payload: dict, out):
    payload = {"schema": SCHEMA, **payload}
    if args.output_format == "text":
        out.write(_text(payload) + "\n")
    else:
        out.write(json.dumps(payload, indent=2, default=str) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_trees(args, out):
    if args.q == 0 and args.stability == "stable":
        ts = trees.enumerate_stable(args.k)
    else:
        ts = trees.enumerate_plain_round(args.k, args.q, args.stability, args.max_edges)
    by_codim = trees.strata(ts)
    payload = {"command": "trees", "k": args.k, "q": args.q, "stability": args.stability,
               "total": len(ts), "by_codim": {str(c): len(v) for c, v in sorted(by_codim.items())}}
    if args.max_edges is not None:
        payload["max_internal_edges"] = args.max_edges
    if args.tree_emit == "list":
        payload["trees"] = [T.canonical for T in ts]
    _emit(args, payload, out)
    return 0


def cmd_ainfty_check(args, out):
    C = ainfty.load(args.input)
    rep = ainfty.check_ainfty(C)
    payload = {"command": "ainfty-check", "category": C.name, "ring": C.ring.name,
               "report": rep.to_dict()}
    HC = None
    if rep.passed:
        try:
            HC = C.cohomology()
        except NonFieldCoefficients:
            HC = None
    if rep.passed and HC is not None:
        payload["cohomology"] = {f"{X}->{Y}": {str(g): r for g, r in H.rank_by_grade().items()}
                                 for (X, Y), H in HC.homs.items()}
        payload["unital"] = HC.is_unital()
    _emit(args, payload, out)
    return 0 if rep.passed else 1


def cmd_fseries(args, out):
    FS = deform.load_fseries(args.ops)
    N = args.truncate
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        F, G = deform.f_series(FS, N)
        residual = deform.conjugation_residual(FS, N)
    inv_left = deform.is_identity_series(deform.series_mul(G, F, N))
    inv_right = deform.is_identity_series(deform.series_mul(F, G, N))
    conj_ok = all(not any(x for x in M.flat) for M in residual)
    ser = lambda S: {str(q): [[str(x) for x in row] for row in M.tolist()] for q, M in enumerate(S)}
    payload = {"command": "fseries", "truncate": N, "rank": len(FS.delta[0]),
               "F": ser(F), "F_inverse": ser(G),
               "checks": {"inverse_left": inv_left, "inverse_right": inv_right,
                          "conjugation": conj_ok},
               "warnings": sorted({str(w.message) for w in caught})}
    _emit(args, payload, out)
    return 0 if inv_left and inv_right and conj_ok else 1


def cmd_sections(args, out):
    sol = model.solve_through_point(args.eps, args.n, seeds=args.seeds, rng_seed=args.seed,
                                    tol=args.tolerance)
    sigma = model.verify_regularity(sol)
    wd = model.weight_dichotomy(args.eps, args.n, seeds=args.seeds, rng_seed=args.seed)
    rec = sol.to_dict()
    rec["residuals"] = [float(r) for r in sol.residuals]
    rec["consistency_defect"] = model.consistency_defect(args.eps, sol.R)
    rec["closed_form_R"] = model.closed_form_R(args.eps)
    rec["counts"] = list(wd.counts)
    rec["signs"] = list(wd.signs)
    ok = (sol.newton["orbits"] == 1 and abs(sol.R - rec["closed_form_R"]) <= args.tolerance
          and sigma > model.SIGMA_TOL and wd.counts == (0, 1))
    if args.sections_emit == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["field", "value"])
        w.writerow(["eps", args.eps])
        w.writerow(["n", args.n])
        for j, c in enumerate(sol.a):
            w.writerow([f"a{j + 1}", repr(complex(c))])
        w.writerow(["R", repr(sol.R)])
        w.writerow(["r", repr(sol.r)])
        w.writerow(["max_residual", repr(float(max(abs(sol.residuals))))])
        w.writerow(["sigma_min", repr(sigma)])
        w.writerow(["newton_orbits", sol.newton["orbits"]])
        w.writerow(["count_C0", wd.counts[0]])
        w.writerow(["count_C1", wd.counts[1]])
        out.write(buf.getvalue())
    else:
        _emit(args, {"command": "sections", "solution": rec, "ok": ok}, out)
    return 0 if ok else 1


def cmd_picard(args, out):
    lat = picard.load_lattice(args.lattice) if args.lattice else picard.a2_lattice()
    if args.twist not in lat.labels:
        raise ValueError(f"unknown class {args.twist!r}; labels are {lat.labels}")
    T = picard.twist_matrix(lat, args.twist)
    Tk = picard.matrix_power(T, args.power)
    images = {lab: picard.twist_power(lat, args.twist, lab, args.power) for lab in lat.labels}
    payload = {"command": "picard", "parity": lat.parity, "labels": lat.labels,
               "twist": args.twist, "power": args.power,
               "self_pairing": lat.pair(args.twist, args.twist),
               "twist_matrix": T, "power_matrix": Tk, "images": images,
               "power_is_identity": Tk == picard.identity(lat.rank),
               "preserves_pairing": picard.preserves_pairing(lat, T)}
    _emit(args, payload, out)
    return 0 if payload["preserves_pairing"] else 1


def cmd_theorem11(args, out):
    rep = pipeline.run_theorem_1_1(args.eps, weight_scale=args.weight_scale, seed=args.seed,
                                   seeds=args.seeds, tolerance=args.tolerance)
    _emit(args, {"command": "theorem11", **rep.to_dict()}, out)
    return 0 if rep.passed else 1


def cmd_theorem12(args, out):
    rep = pipeline.run_theorem_1_2(args.l, count=args.count, seed=args.seed)
    _emit(args, {"command": "theorem12", **rep.to_dict()}, out)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="floerlab", description=__doc__)
    p.add_argument("--emit", dest="output_format", choices=["json", "text"], default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=model.RESIDUAL_TOL)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trees", help="enumerate ribbon trees")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--q", type=int, default=0)
    s.add_argument("--stability", choices=["stable", "semistable"], default="stable")
    s.add_argument("--max-edges", type=int, default=None,
                   help="bound on internal edges (required for semistable)")
    s.add_argument("--emit", dest="tree_emit", choices=["counts", "list"], default="counts")
    s.set_defaults(func=cmd_trees)

    s = sub.add_parser("ainfty-check", help="check the structure equations of a category file")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_ainfty_check)

    s = sub.add_parser("fseries", help="F-series and its inverse from operator data")
    s.add_argument("--ops", required=True)
    s.add_argument("--truncate", type=int, default=6)
    s.set_defaults(func=cmd_fseries)

    s = sub.add_parser("sections", help="solve the model section problem")
    s.add_argument("--eps", type=float, default=0.1)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--seeds", type=int, default=200)
    s.add_argument("--emit", dest="sections_emit", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_sections)

    s = sub.add_parser("picard", help="Picard-Lefschetz twist on a lattice")
    s.add_argument("--lattice", default=None, help="JSON lattice (default: built-in A2)")
    s.add_argument("--twist", default="S")
    s.add_argument("--power", type=int, default=1)
    s.set_defaults(func=cmd_picard)

    s = sub.add_parser("theorem11", help="twisted versus untwisted verdicts")
    s.add_argument("--eps", type=float, default=0.1)
    s.add_argument("--weight-scale", default="1")
    s.add_argument("--seeds", type=int, default=200)
    s.set_defaults(func=cmd_theorem11)

    s = sub.add_parser("theorem12", help="bulk-deformed versus undeformed verdicts")
    s.add_argument("--l", type=int, default=4)
    s.add_argument("--count", type=int, default=1)
    s.set_defaults(func=cmd_theorem12)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return args.func(args, out)
    except (NewtonDivergence, SingularSolution) as e:
        err.write(f"verification failure: {e}\n")
        return 1
    except (FloerLabError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        err.write(f"input error: {e}\n")
        return 2


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
