"""Command-line front end; every subcommand prints one JSON object on stdout.

Exit codes: 0 success, 2 malformed input, 3 precondition or cap violations.
Errors are reported as ``{"error": code, "detail": text}``.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import coderivative_sets as cs
from . import cone_core, jsonio, l2_model, oracle
from .errors import (
    CapExceeded,
    DegenerateInput,
    DimensionMismatch,
    EmptySet,
    InputError,
    PreconditionViolated,
)

CI_ENV = "CONE_CODERIV_CI"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _require_seed(args):
    if os.environ.get(CI_ENV) == "1" and args.seed is None:
        raise InputError(f"--seed is mandatory when {CI_ENV}=1")


def _vec(args, name):
    return jsonio.parse_vec(getattr(args, name), name)


def cmd_project(args):
    return {"projection": jsonio.vec_to_json(cone_core.project(_vec(args, "x")))}


def cmd_partition(args):
    p = cone_core.partition(_vec(args, "x"), args.zero_tol)
    return {"plus": sorted(p.plus), "minus": sorted(p.minus), "bullet": sorted(p.bullet)}


def cmd_regime(args):
    return {"regime": cone_core.regime(_vec(args, "x"), args.zero_tol).value}


def cmd_dderiv(args):
    d = cone_core.directional_derivative(_vec(args, "x"), _vec(args, "w"), args.zero_tol)
    return {"derivative": jsonio.vec_to_json(d)}


def cmd_dstar(args):
    x, y = _vec(args, "x"), _vec(args, "y")
    if args.limiting:
        out = jsonio.box_product_to_json(cs.mordukhovich_coderivative(x, y, args.zero_tol))
        out["pieces"] = [
            jsonio.box_product_to_json(p) for p in cs.limiting_coderivative_pieces(x, y, args.zero_tol)
        ]
        return out
    return jsonio.box_product_to_json(cs.regular_coderivative(x, y, args.zero_tol))


def cmd_member(args):
    s = cs.regular_coderivative(_vec(args, "x"), _vec(args, "y"))
    if not args.tol >= 0:
        raise InputError("--tol must be nonnegative")
    return {"member": s.contains(_vec(args, "z"), args.tol)}


def cmd_extremes(args):
    s = cs.regular_coderivative(_vec(args, "x"), _vec(args, "y"))
    return {"points": [jsonio.vec_to_json(p) for p in s.extreme_points()]}


def cmd_supq(args):
    x, y, z = _vec(args, "x"), _vec(args, "y"), _vec(args, "z")
    rep = oracle.exact_sup_quotient(x, y, z)
    out = {
        "sup_value": rep.sup_value,
        "argmax_direction": jsonio.vec_to_json(rep.argmax_direction),
        "orthant_pattern": {str(i): "+" if s > 0 else "-" for i, s in rep.orthant_pattern.items()},
        "member": rep.member,
    }
    if args.samples:
        _require_seed(args)
        out["sampled_max"] = oracle.sampled_quotient_max(x, y, z, args.samples, args.seed)
    return out


def cmd_witness(args):
    d = oracle.witness_direction(_vec(args, "x"), _vec(args, "y"), _vec(args, "z"))
    return {"direction": None if d is None else jsonio.vec_to_json(d)}


def _radii(text):
    try:
        return [float(r) for r in text.split(",")]
    except ValueError:
        raise InputError(f"--radii: cannot parse {text!r}") from None


def cmd_probe(args):
    _require_seed(args)
    if args.samples < 1:
        raise InputError("--samples must be positive")
    cands = oracle.limiting_probe(
        _vec(args, "x"), _vec(args, "y"), args.samples, _radii(args.radii), seed=args.seed
    )
    return {"candidates": [jsonio.vec_to_json(c) for c in cands]}


def cmd_l2_dstar(args):
    x = jsonio.parse_sparse(args.x, "x")
    y = jsonio.parse_sparse(args.y, "y")
    return jsonio.seq_box_product_to_json(l2_model.seq_regular_coderivative(x, y))


def cmd_l2_check(args):
    x = jsonio.parse_sparse(args.x, "x")
    y = jsonio.parse_sparse(args.y, "y")
    m = jsonio.loads(jsonio.read_literal(args.M))
    if not isinstance(m, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in m):
        raise InputError("--M must be a JSON array of nonnegative integers")
    rep = l2_model.positive_support_check(x, y, l2_model.IndexSet(frozenset(m)))
    return {
        "y_in_K_complement": rep.y_in_K_complement,
        "y_is_member": rep.y_is_member,
        "membership_equivalence": rep.membership_equivalence,
        "order_description_matches": rep.order_description_matches,
        "printed_order_matches": rep.printed_order_matches,
        "y_in_boundary": rep.y_in_boundary,
        "singleton_holds": rep.singleton_holds,
        "notes": list(rep.notes),
    }


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cone-coderiv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, *vecs, zero_tol=False, help=None):
        sp = sub.add_parser(name, help=help)
        for v in vecs:
            sp.add_argument(f"--{v}", required=True, help="JSON literal or @file")
        if zero_tol:
            sp.add_argument("--zero-tol", type=float, default=0.0)
        sp.set_defaults(func=func)
        return sp

    add("project", cmd_project, "x", help="projection onto the nonnegative orthant")
    add("partition", cmd_partition, "x", zero_tol=True)
    add("regime", cmd_regime, "x", zero_tol=True)
    add("dderiv", cmd_dderiv, "x", "w", zero_tol=True, help="directional derivative")
    sp = add("dstar", cmd_dstar, "x", "y", zero_tol=True, help="coderivative set")
    sp.add_argument("--limiting", action="store_true")
    sp = add("member", cmd_member, "x", "y", "z")
    sp.add_argument("--tol", type=float, default=0.0)
    add("extremes", cmd_extremes, "x", "y")
    sp = add("supq", cmd_supq, "x", "y", "z", help="exact sup of the limsup quotient")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--samples", type=int, default=0, help="also report a sampled maximum")
    add("witness", cmd_witness, "x", "y", "z")
    sp = add("probe", cmd_probe, "x", "y", help="limits along converging sequences")
    sp.add_argument("--radii", default="0.1,0.01,0.001")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int)
    add("l2-dstar", cmd_l2_dstar, "x", "y")
    sp = add("l2-check", cmd_l2_check, "x", "y")
    sp.add_argument("--M", required=True, help="JSON array of indices")
    return p


def _error_code(exc) -> tuple:
    if isinstance(exc, DimensionMismatch):
        return "dimension_mismatch", 2
    if isinstance(exc, DegenerateInput):
        return "degenerate_input", 2
    if isinstance(exc, InputError):
        return "invalid_input", 2
    if isinstance(exc, CapExceeded):
        return "cap_exceeded", 3
    if isinstance(exc, EmptySet):
        return "empty_set", 3
    return "precondition_violated", 3


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        result = args.func(args)
    except (InputError, PreconditionViolated) as exc:
        code, status = _error_code(exc)
        out.write(jsonio.dumps({"error": code, "detail": str(exc)}) + "\n")
        return status
    out.write(jsonio.dumps(result) + "\n")
    return 0


def main():
    sys.exit(run())
