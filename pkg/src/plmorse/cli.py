"""Command-line front end.

JSON travels on stdin/stdout by default; --in/--out switch to files.  Exit
codes: 0 on success, 1 when a decision subcommand answers 'no' (or a search
finds nothing), 2 on malformed input or precondition violations.
"""

import argparse
import json
import random
import sys

from . import constructions, discrete, fundgroup, homology, jsonio, morse
from . import section9 as section9_mod
from .core import SimplicialComplex, check_manifold, collapse_simplify


class InputError(Exception):
    pass


def _read_json(path):
    try:
        if path:
            with open(path) as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("cannot read JSON input: %s" % exc)


def _read_complex(args):
    return jsonio.complex_from_json(_read_json(getattr(args, "infile", None)))


def _emit(args, doc):
    text = jsonio.dumps(doc)
    out = getattr(args, "outfile", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


BUILDERS = {
    "torus7": lambda a: constructions.torus7(),
    "duncehat8": lambda a: constructions.dunce_hat8(),
    "rp2-6": lambda a: constructions.rp2_6(),
}


def cmd_build(args):
    what = args.what
    if what in BUILDERS:
        c = BUILDERS[what](args)
    elif what == "simplex-boundary":
        if args.d is None:
            raise InputError("simplex-boundary needs a dimension argument")
        c = constructions.simplex_boundary(args.d)
    elif what == "cyclic":
        if args.d is None or args.n is None:
            raise InputError("cyclic needs D and N arguments")
        try:
            c = constructions.cyclic_polytope_boundary(args.d, args.n)
        except ValueError as exc:
            raise InputError(str(exc))
    elif what in ("suspension", "cone", "bsd"):
        c = _read_complex(args)
        for _ in range(args.times if what == "bsd" else 1):
            if what == "suspension":
                c = c.suspension()
            elif what == "cone":
                c = c.cone()
            else:
                c = c.barycentric_subdivision()
        c = jsonio.stringify_complex(c)
        c._cache["name"] = "%s-of-complex" % what
    else:
        raise InputError("unknown build target %r" % what)
    _emit(args, jsonio.complex_to_json(c))
    return 0


def cmd_homology(args):
    c = _read_complex(args)
    coeff = args.coeff.upper()
    if coeff == "Z":
        prof = homology.integral_homology(c, reduced=args.reduced)
        _emit(args, prof.to_json())
    else:
        try:
            b = homology.betti(c, coeff, reduced=args.reduced)
        except ValueError as exc:
            raise InputError(str(exc))
        _emit(args, {"dim": c.dimension, "betti": list(b),
                     "torsion": [[] for _ in b], "field": coeff})
    return 0


def _orders_for(args, c):
    if args.order:
        order = jsonio.order_from_json(_read_json(args.order))
        order.validate_for(c)
        return None, [order]
    if args.random_orders:
        seed = args.seed if args.seed is not None else 0
        rng = random.Random(seed)
        return seed, [morse.VertexOrder.random(c, rng)
                      for _ in range(args.random_orders)]
    raise InputError("need --order FILE or --random-orders N")


def _render_table(report):
    rows = [("vertex", "status", "index:mult", "strong-reg", "boundary")]
    for v in report.order.order:
        rec = report.records[v]
        field = report.fields[0]
        mus = ",".join("%d:%d" % (k, m)
                       for k, m in enumerate(rec.multiplicities[field]) if m)
        bc = rec.boundary_class
        if isinstance(bc, tuple):
            bc = "%s(%d)" % bc
        rows.append((str(jsonio.string_label(v)), rec.status, mus or "-",
                     rec.strong_regularity, bc))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
             for r in rows]
    return "\n".join(lines) + "\n"


def cmd_morse_analyze(args):
    c = _read_complex(args)
    seed, orders = _orders_for(args, c)
    fields = tuple(f.strip() for f in args.fields.split(","))
    reports = [morse.analyze(c, o, fields) for o in orders]
    if args.table:
        for rep in reports:
            sys.stdout.write(_render_table(rep))
        return 0
    doc = {"reports": [r.to_json() for r in reports]}
    if seed is not None:
        doc["seed"] = seed
    _emit(args, doc)
    return 0


def cmd_morse_sweep(args):
    c = _read_complex(args)
    seed, orders = _orders_for(args, c)
    out = []
    for o in orders:
        prof = morse.sweep(c, o, args.coeff)
        out.append({"order": jsonio.order_to_json(o)["order"],
                    "betti_profiles": [list(b) for b in prof]})
    doc = {"sweeps": out}
    if seed is not None:
        doc["seed"] = seed
    _emit(args, doc)
    return 0


def cmd_morse_check(args):
    c = _read_complex(args)
    seed, orders = _orders_for(args, c)
    results = []
    worst = "yes"
    for o in orders:
        try:
            verdict, witness = morse.check_pl_morse(c, o)
        except ValueError as exc:
            raise InputError(str(exc))
        results.append({"order": jsonio.order_to_json(o)["order"],
                        "verdict": verdict,
                        "witness": jsonio.string_label(witness)
                        if witness is not None else None})
        if verdict == "no":
            worst = "no"
        elif verdict == "unknown" and worst == "yes":
            worst = "unknown"
    doc = {"results": results}
    if seed is not None:
        doc["seed"] = seed
    _emit(args, doc)
    return 1 if worst == "no" else 0


def cmd_dmorse_convert(args):
    c = _read_complex(args)
    if not args.dmf:
        raise InputError("dmorse convert needs --dmf FILE")
    kind, data = jsonio.dmf_from_json(_read_json(args.dmf), c)
    try:
        if kind == "matching":
            values = discrete.values_from_matching(c, data)
        else:
            values = data
        conv = discrete.to_pl_morse(c, values)
    except ValueError as exc:
        raise InputError(str(exc))
    derived = jsonio.stringify_complex(conv.derived)
    doc = {
        "complex": jsonio.complex_to_json(derived, name="derived"),
        "order": jsonio.order_to_json(conv.order),
        "critical_cells": [jsonio.simplex_cell_key(s) for s in conv.critical],
        "guarantees": conv.guarantees,
    }
    _emit(args, doc)
    return 0


def cmd_neighborhood(args):
    c = _read_complex(args)
    if not args.sub:
        raise InputError("neighborhood needs --sub FILE")
    sub = jsonio.complex_from_json(_read_json(args.sub))
    try:
        res = constructions.regular_neighborhood(c, sub)
    except ValueError as exc:
        raise InputError(str(exc))
    _emit(args, {"M": jsonio.complex_to_json(res.M, name="neighborhood"),
                 "boundary": jsonio.complex_to_json(res.boundary,
                                                    name="boundary")})
    return 0


def cmd_boundary(args):
    c = _read_complex(args)
    try:
        b = c.boundary_subcomplex()
    except ValueError as exc:
        raise InputError(str(exc))
    _emit(args, jsonio.complex_to_json(b, name="boundary"))
    return 0


def cmd_manifold_check(args):
    c = _read_complex(args)
    v = check_manifold(c)
    _emit(args, {"verdict": v.verdict,
                 "has_boundary": v.has_boundary,
                 "witness": repr(v.witness) if v.witness else None})
    return 1 if v.verdict == "no" else 0


def cmd_pi1(args):
    c = _read_complex(args)
    try:
        pres = fundgroup.presentation(c, args.basepoint)
    except ValueError as exc:
        raise InputError(str(exc))
    simp = fundgroup.tietze_simplify(pres)
    rank, torsion = fundgroup.abelianization(simp)
    doc = {"generators": simp.ngens,
           "relators": [list(w) for w in simp.relators],
           "abelianization": {"rank": rank, "torsion": torsion}}
    code = 0
    if args.certify_nontrivial:
        targets = fundgroup.parse_targets(args.targets) if args.targets \
            else fundgroup.DEFAULT_TARGETS
        cert = fundgroup.finite_quotient_search(simp, targets,
                                                args.budget_seconds)
        doc["certificate"] = cert.to_json() if cert else None
        code = 0 if cert else 1
    _emit(args, doc)
    return code


def cmd_reproduce(args):
    targets = fundgroup.parse_targets(args.targets) if args.targets \
        else fundgroup.DEFAULT_TARGETS
    progress = None if args.quiet else \
        (lambda msg: print("# " + msg, file=sys.stderr, flush=True))
    rep = section9_mod.reproduce(targets=targets,
                                 budget_seconds=args.budget_seconds,
                                 progress=progress)
    _emit(args, rep.to_json())
    return 0 if rep.verdict == "neighborhood is NOT a 4-ball" else 1


def _io_flags(p):
    p.add_argument("--in", dest="infile", default=None,
                   help="input complex file (default: stdin)")
    p.add_argument("--out", dest="outfile", default=None,
                   help="output file (default: stdout)")


def _order_flags(p):
    p.add_argument("--order", default=None, help="order JSON file")
    p.add_argument("--random-orders", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=None)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="plmorse",
        description="PL Morse theory on finite simplicial complexes")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a built-in or derived complex")
    p.add_argument("what", choices=sorted(BUILDERS) +
                   ["simplex-boundary", "cyclic", "suspension", "cone", "bsd"])
    p.add_argument("d", type=int, nargs="?", default=None)
    p.add_argument("n", type=int, nargs="?", default=None)
    p.add_argument("--times", type=int, default=1,
                   help="iterate bsd this many times")
    _io_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("homology", help="homology of a complex")
    p.add_argument("--coeff", default="Z",
                   help="Z, Q, or Fp (e.g. F2); default Z")
    p.add_argument("--reduced", action="store_true")
    _io_flags(p)
    p.set_defaults(func=cmd_homology)

    pm = sub.add_parser("morse", help="generic PL function analysis")
    msub = pm.add_subparsers(dest="subcommand", required=True)
    p = msub.add_parser("analyze")
    _order_flags(p)
    p.add_argument("--fields", default="Q,F2")
    p.add_argument("--table", action="store_true",
                   help="render a per-vertex table instead of JSON")
    _io_flags(p)
    p.set_defaults(func=cmd_morse_analyze)
    p = msub.add_parser("sweep")
    _order_flags(p)
    p.add_argument("--coeff", default="Q")
    _io_flags(p)
    p.set_defaults(func=cmd_morse_sweep)
    p = msub.add_parser("check-plmorse")
    _order_flags(p)
    _io_flags(p)
    p.set_defaults(func=cmd_morse_check)

    pd = sub.add_parser("dmorse", help="discrete Morse functions")
    dsub = pd.add_subparsers(dest="subcommand", required=True)
    p = dsub.add_parser("convert")
    p.add_argument("--dmf", required=True,
                   help="discrete Morse JSON (values or matching)")
    _io_flags(p)
    p.set_defaults(func=cmd_dmorse_convert)

    p = sub.add_parser("neighborhood",
                       help="regular neighborhood in the second derived")
    p.add_argument("--sub", required=True, help="subcomplex JSON file")
    _io_flags(p)
    p.set_defaults(func=cmd_neighborhood)

    p = sub.add_parser("boundary", help="boundary subcomplex")
    _io_flags(p)
    p.set_defaults(func=cmd_boundary)

    pman = sub.add_parser("manifold", help="manifold recognition")
    msub2 = pman.add_subparsers(dest="subcommand", required=True)
    p = msub2.add_parser("check")
    _io_flags(p)
    p.set_defaults(func=cmd_manifold_check)

    p = sub.add_parser("pi1", help="fundamental group presentation")
    p.add_argument("--basepoint", default=None)
    p.add_argument("--certify-nontrivial", action="store_true")
    p.add_argument("--targets", default=None,
                   help="e.g. sym:2..8,psl2:8,psl2:13,psl2:29,psl2:41")
    p.add_argument("--budget-seconds", type=float, default=600)
    _io_flags(p)
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("reproduce-section9",
                       help="dunce hat / Mazur neighborhood pipeline")
    p.add_argument("--targets", default=None)
    p.add_argument("--budget-seconds", type=float, default=600)
    p.add_argument("--quiet", action="store_true")
    _io_flags(p)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
