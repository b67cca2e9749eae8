"""Command-line front end.

Subcommands: diff, d2, cohomology, strata, ainfty-check, signs.  All
mathematical output is printed in the tree grammar / JSON formats of the
library, in canonical order, so identical invocations are byte-identical.
"""

import argparse
import json
import sys

from . import diff as dg
from . import homology, strata
from .relations import (
    bar_homotopy, bar_morphism, bar_stasheff,
    check_homotopy_relations, check_morphism_relations, check_stasheff,
    structure_from_json,
)
from .trees import FAMILIES, TreeError, encode, parse

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3


def _print_formal_sum(fsum):
    if fsum.is_zero():
        print("0")
        return
    for tree, coeff in fsum.items():
        print("%s %s" % (coeff, encode(tree)))


def cmd_diff(args):
    try:
        tree = parse(args.tree, leaf_color=args.leaf_color)
    except TreeError as err:
        print("parse error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    table = dg.default_sign_table(max(tree.nleaves, 2))
    _print_formal_sum(dg.diff_tree(tree, table))
    return EXIT_OK


def cmd_d2(args):
    families = list(FAMILIES) if args.family == "all" else [args.family]
    try:
        table = dg.default_sign_table(max(args.max_arity, 2))
    except dg.SignConsistencyError as err:
        print("sign solver: %s" % err, file=sys.stderr)
        return EXIT_INCONSISTENT
    status = EXIT_OK
    for family in families:
        lo = FAMILIES[family].min_arity
        for arity in range(lo, args.max_arity + 1):
            rep = dg.d_squared_check(family, arity, table)
            print("d2 %s%-2d %s" % (family, arity, "ok" if rep.ok else "FAIL"))
            if not rep.ok:
                status = EXIT_CHECK_FAILED
                for tree, coeff in rep.survivors.items():
                    print("   surviving %s %s" % (coeff, encode(tree)))
    return status


def cmd_cohomology(args):
    try:
        cx = homology.build_complex(args.arity, args.profile, args.operad)
    except homology.ArityCapError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    if args.emit == "json":
        print(json.dumps(homology.complex_to_json(cx), indent=1, sort_keys=True))
        return EXIT_OK
    dims = cx.dims()
    H = homology.cohomology_dims(cx)
    print("dims %s" % {d: dims[d] for d in sorted(dims)})
    print("%s" % {d: H[d] for d in sorted(H)})
    print("euler %d" % homology.euler_characteristic(cx))
    return EXIT_OK


def cmd_strata(args):
    try:
        found = strata.codim1_strata(args.space, args.n)
    except TreeError as err:
        print("error: %s" % err, file=sys.stderr)
        return EXIT_USAGE
    if args.dot:
        for i, st in enumerate(found):
            print(strata.to_dot(st, name="s%d" % i))
    else:
        for st in found:
            print(encode(st.tree))
    print("count %d" % strata.strata_counts(args.space, args.n))
    return EXIT_OK


def cmd_ainfty_check(args):
    with open(args.structure) as fh:
        doc = json.load(fh)
    s = structure_from_json(doc)
    n = args.nmax
    checks = [
        ("structure(mV)", check_stasheff(s.mV, n)),
        ("structure(mW)", check_stasheff(s.mW, n)),
        ("morphism(f)", check_morphism_relations(s.f, s.mV, s.mW, n)),
        ("morphism(g)", check_morphism_relations(s.g, s.mV, s.mW, n)),
        ("homotopy(h)", check_homotopy_relations(s.h, s.f, s.g, s.mV, s.mW, n)),
    ]
    if args.bar:
        checks += [
            ("structure(mV)/bar", bar_stasheff(s.mV, n)),
            ("structure(mW)/bar", bar_stasheff(s.mW, n)),
            ("morphism(f)/bar", bar_morphism(s.f, s.mV, s.mW, n)),
            ("morphism(g)/bar", bar_morphism(s.g, s.mV, s.mW, n)),
            ("homotopy(h)/bar", bar_homotopy(s.h, s.f, s.g, s.mV, s.mW, n)),
        ]
    ok = True
    for label, rep in checks:
        line = "%-18s %s" % (label, "pass" if rep.ok else "FAIL")
        if not rep.ok:
            ok = False
            line += " at n=%s" % rep.failing_n()
        print(line)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_signs(args):
    if args.action != "solve":
        print("unknown signs action %r" % args.action, file=sys.stderr)
        return EXIT_USAGE
    try:
        table = dg.solve_down_signs(args.max_arity)
    except dg.SignConsistencyError as err:
        print("inconsistent: %s" % err, file=sys.stderr)
        return EXIT_INCONSISTENT
    for desc, sign in table.rows():
        print("%+d  %s" % (sign, _describe(desc)))
    print("solved %d signs, %d free bits, %d equations"
          % (len(table.signs), table.free_rank, table.equations))
    if table.n3_discrepancies:
        print("arity-3 printed-sign discrepancies (solver wins):")
        for desc, printed, got in table.n3_discrepancies:
            print("  %s printed %+d solved %+d" % (_describe(desc), printed, got))
    else:
        print("no arity-3 printed-sign discrepancies")
    return EXIT_OK


def _describe(desc):
    kind = desc[0]
    if kind == "cluster":
        return "cluster  n=%d %s" % (desc[1], desc[2])
    if kind == "collapse":
        return "collapse n=%d offset=%d size=%d" % (desc[1], desc[2], desc[3])
    return "split    n=%d parts=%s finite=%d" % (desc[1], list(desc[2]), desc[3])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dgop",
        description="exact calculus for the two-colored operads of "
                    "points-on-a-line configurations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diff", help="differentiate a tree expression")
    p.add_argument("tree")
    p.add_argument("--leaf-color", choices=("solid", "dashed"), default="solid")
    p.set_defaults(fn=cmd_diff)

    p = sub.add_parser("d2", help="check the double differential vanishes")
    p.add_argument("--family", choices=tuple(FAMILIES) + ("all",), default="all")
    p.add_argument("--max-arity", type=int, default=4)
    p.set_defaults(fn=cmd_d2)

    p = sub.add_parser("cohomology", help="cohomology of an arity component")
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--profile", choices=tuple(homology.PROFILES), default="mixed")
    p.add_argument("--operad", choices=tuple(homology.OPERAD_FAMILIES),
                   default="hoinf")
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("strata", help="codimension-one boundary strata")
    p.add_argument("--space", choices=strata.SPACES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(fn=cmd_strata)

    p = sub.add_parser("ainfty-check", help="run the structure checkers "
                                            "on a structure file")
    p.add_argument("structure")
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--bar", action="store_true",
                   help="also run the tensor-coalgebra route")
    p.set_defaults(fn=cmd_ainfty_check)

    p = sub.add_parser("signs", help="solve the homotopy differential signs")
    p.add_argument("action", choices=("solve",))
    p.add_argument("--max-arity", type=int, default=5)
    p.set_defaults(fn=cmd_signs)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
