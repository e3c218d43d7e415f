"""Command-line front end: ``torsionquad <command> FILE... [--max-group-order N]``.

Every command prints one JSON document on stdout.  Exit status is 0 on a
completed computation (negative verdicts included), 1 on bad input and 2
when a size bound is exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import classify
from .classify import decide_isomorphism, gauss_sum, invariants
from .discriminant import discriminant_quadratic
from .embedding import image_membership
from .errors import SizeBoundError, TorsionQuadError
from .formats import (
    dump_cyclotomic,
    dump_iso,
    dump_quad,
    dumps,
    format_rational,
    load_quad,
    load_triple,
    read_json,
)
from .oracles import enumerate_refinements
from .stable import stably_equivalent


def _bound(args, default):
    return default if args.max_group_order is None else args.max_group_order


def cmd_discriminant(args):
    return dump_quad(discriminant_quadratic(load_triple(read_json(args.lattice))))


def cmd_gauss(args):
    q = load_quad(read_json(args.quad))
    return dump_cyclotomic(gauss_sum(q, _bound(args, classify.EVAL_BOUND)))


def cmd_invariants(args):
    inv = invariants(load_quad(read_json(args.quad)), _bound(args, classify.EVAL_BOUND))
    return {
        "orders": list(inv.orders),
        "pairing": [[format_rational(x) for x in r] for r in inv.pairing],
        "defect": [format_rational(x) for x in inv.defect],
        "divisible_defect": list(inv.divisible_defect),
        "radical": {
            "generators": [list(g) for g in inv.radical],
            "values": [format_rational(x) for x in inv.radical_values],
            "kernel_hom": list(inv.kernel_hom),
        },
        "gauss": dump_cyclotomic(inv.gauss),
    }


def cmd_isomorphic(args):
    q1 = load_quad(read_json(args.first))
    q2 = load_quad(read_json(args.second))
    d = decide_isomorphism(q1, q2, _bound(args, classify.SEARCH_BOUND))
    out = {"isomorphic": d.isomorphic, "reason": d.reason}
    if args.witness:
        out["witness"] = dump_iso(d.witness) if d.witness else None
    return out


def cmd_stable(args):
    t1 = load_triple(read_json(args.first))
    t2 = load_triple(read_json(args.second))
    cert = stably_equivalent(t1, t2, _bound(args, classify.SEARCH_BOUND))
    return {
        "stably_equivalent": cert.verdict,
        "left_signs": list(cert.left_signs),
        "right_signs": list(cert.right_signs),
        "reason": cert.reason,
    }


def cmd_solve_char(args):
    t = load_triple(read_json(args.lattice))
    q = load_quad(read_json(args.quad))
    found, c = image_membership(t.lattice, q)
    return {"in_image": found, "char": list(c.coeffs) if found else None}


def cmd_refinements(args):
    q = load_quad(read_json(args.quad), need_values=False)
    qs = enumerate_refinements(q.pairing, _bound(args, classify.EVAL_BOUND))
    return {
        "orders": list(q.orders),
        "count": len(qs),
        "refinements": [[format_rational(x) for x in r.gen_values] for r in qs],
    }


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-group-order", type=int, default=None, metavar="N",
                        help="size bound (default 512 for searches, 10000 for evaluation)")
    common.add_argument("--format", choices=["json"], default="json")
    parser = argparse.ArgumentParser(prog="torsionquad", parents=[common],
                                     description="Quadratic functions on torsion groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *files, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for f in files:
            p.add_argument(f)
        p.set_defaults(func=func)
        return p

    add("discriminant", cmd_discriminant, "lattice",
        help_text="discriminant quadratic function of a lattice file")
    add("gauss", cmd_gauss, "quad", help_text="exact Gauss sum")
    add("invariants", cmd_invariants, "quad",
        help_text="normalized orders, pairing, defect, radical and Gauss sum")
    iso = add("isomorphic", cmd_isomorphic, "first", "second",
              help_text="decide isomorphism of two quadratic functions")
    iso.add_argument("--witness", action="store_true", help="include the isomorphism")
    add("stable-equivalent", cmd_stable, "first", "second",
        help_text="decide stable equivalence of two lattice files")
    add("solve-char", cmd_solve_char, "lattice", "quad",
        help_text="characteristic form realizing a quadratic function")
    add("refinements", cmd_refinements, "quad",
        help_text="all quadratic refinements of the pairing in a file")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    if args.max_group_order is not None and args.max_group_order < 1:
        err.write("error: --max-group-order must be positive\n")
        return 1
    try:
        doc = args.func(args)
    except SizeBoundError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (TorsionQuadError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 1
    out.write(dumps(doc))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
