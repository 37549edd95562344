"""Command line entry point: JSON in, JSON out.

Exit codes: 0 ok, 2 usage or unknown subcommand, 3 validation failure,
4 resource budget exceeded, 5 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import BudgetExceeded, GalentError, ValidationError

USAGE_EXIT = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _encode(obj):
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(doc):
    return json.dumps(doc, default=_encode, sort_keys=True, indent=2)


# input documents

def _load_text(arg):
    arg = arg.strip()
    if arg.startswith("{") or arg.startswith("["):
        return json.loads(arg), None
    if os.path.exists(arg):
        with open(arg) as fh:
            return json.load(fh), None
    name = os.path.basename(arg)
    if name.endswith(".json"):
        name = name[:-5]
    return None, name


def read_group(arg, budget):
    from .groupfixtures import BUILDERS, load_group
    from .modmat import group_from_json

    try:
        doc, name = _load_text(arg)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad JSON in group document: {exc}") from None
    if doc is not None:
        return group_from_json(doc, budget)
    if name in BUILDERS:
        return load_group(name)
    raise ValidationError(f"no group document or fixture named {arg!r}")


def read_curve(arg):
    from .eqcurves import EllipticCurveModel, curve_fixture

    try:
        doc, name = _load_text(arg)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad JSON in curve document: {exc}") from None
    if doc is not None:
        return EllipticCurveModel.from_json(doc)
    return curve_fixture(name)


def read_poly(arg):
    from .qpoly import ExactPolynomial

    try:
        doc, _ = _load_text(arg)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad JSON in polynomial document: {exc}") from None
    if doc is None:
        # comma separated ascending coefficients
        try:
            return ExactPolynomial([c for c in arg.split(",")])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"cannot read polynomial {arg!r}: {exc}") from None
    return ExactPolynomial.from_json(doc)


def _rational(s):
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _rational_list(s):
    return [_rational(x) for x in s.split(",") if x.strip()]


# handlers

def cmd_entangle(args):
    from . import entangle

    G = read_group(args.group, args.budget)
    if args.action == "lattice":
        return entangle.entanglement_lattice(G)
    if args.a is None or args.b is None:
        raise ValidationError("--a and --b are required")
    if args.action == "report":
        return entangle.entanglement_report(G, args.a, args.b)
    return entangle.classify(G, args.a, args.b)


def cmd_group(args):
    from . import modmat

    if args.action == "closure":
        doc, _ = _load_text(args.gens) if args.gens else (None, None)
        if doc is not None:
            G = modmat.group_from_json(doc, args.budget)
        else:
            G = read_group(args.group, args.budget)
        return modmat.group_to_json(G)
    G = read_group(args.group, args.budget)
    if args.action == "kernel":
        return modmat.group_to_json(modmat.kernel_of_reduction(G, args.e))
    if args.action == "join":
        H = read_group(args.other, args.budget)
        return modmat.group_to_json(modmat.join(G, H, budget=args.budget))
    if args.action == "quotient":
        N = read_group(args.normal, args.budget)
        return {"quotient": modmat.quotient_fingerprint(G, N)}
    return {"crt": modmat.crt_split(G), "det_image": modmat.det_image(G)}


def cmd_stdgroup(args):
    from .modmat import group_to_json
    from .stdgroups import standard_subgroup

    return group_to_json(standard_subgroup(args.label, args.ell))


def cmd_cartan(args):
    from .modmat import group_to_json
    from .stdgroups import cartan_group, cartan_normalizer, cartan_params

    params = cartan_params(args.dk, args.f, args.n)
    G = cartan_normalizer(params) if args.normalizer else cartan_group(params)
    doc = group_to_json(G)
    doc["params"] = params.to_json()
    doc["kind"] = "normalizer" if args.normalizer else "cartan"
    return doc


def cmd_poly(args):
    from . import qpoly

    if args.action == "division":
        E = read_curve(args.curve)
        f = qpoly.division_polynomial(E, args.m)
        return {"m": args.m, "polynomial": f, "degree": f.degree}
    if args.action == "samefield":
        return qpoly.same_splitting_field_mc(read_poly(args.f), read_poly(args.g), args.pbound)
    f = read_poly(args.poly)
    if args.action == "disc":
        d = qpoly.poly_discriminant(f)
        doc = {"discriminant": d}
        if f.domain == "Q" and d != 0:
            doc["square_class"] = qpoly.square_class(d)
        return doc
    if args.action == "factors":
        fs = qpoly.small_rational_factors(f, args.dmax)
        return {"d_max": args.dmax, "factors": fs}
    return qpoly.factor_fingerprint_mod_p(f, args.p)


def cmd_curve(args):
    from . import eqcurves as ec

    if args.action == "cdpoint":
        x, y = ec.c_d_point(args.m, args.n)
        return {"m": args.m, "n": args.n, "d": args.m ** 2 + args.n ** 2, "point": [x, y]}
    if args.action == "specialize":
        return ec.family_specialize(args.family, args.t)
    E = read_curve(args.curve)
    if args.action == "invariants":
        return ec.curve_invariants(E)
    if args.action == "twist":
        return ec.quadratic_twist(E, args.d)
    return ec.serre_entanglement(E)


def cmd_frob(args):
    from . import frobsample as fs

    E = read_curve(args.curve)
    if args.action == "count":
        n = fs.count_points(E, args.p)
        return {"p": args.p, "count": n, "a_p": args.p + 1 - n}
    if args.action == "signature":
        return fs.frob_signature(E, args.p, args.n)
    H = read_group(args.group, args.budget)
    return fs.verify_image(E, H, args.pbound)


def cmd_gauss(args):
    from . import gaussperiod as gp

    pp = gp.period_polynomial(args.ell)
    if args.action == "period":
        return pp
    if not args.b:
        raise ValidationError("--b is required")
    member = gp.companion_family(pp, args.b)
    doc = member.to_json()
    if args.check_2torsion:
        doc["two_torsion"] = gp.two_torsion_match(pp, member.member_poly, args.pbound)
    return doc


def list_fixtures():
    from .eqcurves import FAMILIES, curve_fixture_descriptions
    from .groupfixtures import DESCRIPTIONS

    return {
        "groups": {k: {"description": v, "path": f"fixtures/{k}.json"} for k, v in DESCRIPTIONS.items()},
        "curves": {k: {"description": v} for k, v in curve_fixture_descriptions().items()},
        "families": {k: {"description": v[1]} for k, v in FAMILIES.items()},
    }


# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=True, help="JSON output (always on)")
    common.add_argument("--pbound", type=int, default=10_000, help="prime bound for sampled checks")
    common.add_argument("--budget", type=int, default=5_000_000, help="group element budget")

    p = _Parser(prog="galent", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--list-fixtures", action="store_true", help="list embedded fixtures")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def leaf(parent, name, **kw):
        return parent.add_parser(name, parents=[common], **kw)

    e = leaf(sub, "entangle")
    e.add_argument("action", choices=["report", "lattice", "classify"])
    e.add_argument("--group", required=True)
    e.add_argument("--a", type=int)
    e.add_argument("--b", type=int)
    e.set_defaults(func=cmd_entangle)

    g = leaf(sub, "group")
    g.add_argument("action", choices=["closure", "kernel", "join", "quotient", "crt"])
    g.add_argument("--group")
    g.add_argument("--gens", help="inline subgroup JSON for closure")
    g.add_argument("--e", type=int)
    g.add_argument("--other")
    g.add_argument("--normal")
    g.set_defaults(func=cmd_group)

    s = leaf(sub, "stdgroup")
    s.add_argument("--label", required=True)
    s.add_argument("--ell", type=int, required=True)
    s.set_defaults(func=cmd_stdgroup)

    c = leaf(sub, "cartan")
    c.add_argument("--dk", type=int, required=True)
    c.add_argument("--f", type=int, default=1)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--normalizer", action="store_true")
    c.set_defaults(func=cmd_cartan)

    q = leaf(sub, "poly")
    q.add_argument("action", choices=["division", "disc", "factors", "fingerprint", "samefield"])
    q.add_argument("--poly")
    q.add_argument("--curve")
    q.add_argument("--m", type=int)
    q.add_argument("--dmax", type=int, default=3)
    q.add_argument("--p", type=int)
    q.add_argument("--f")
    q.add_argument("--g")
    q.set_defaults(func=cmd_poly)

    v = leaf(sub, "curve")
    v.add_argument("action", choices=["invariants", "twist", "serre", "specialize", "cdpoint"])
    v.add_argument("--curve")
    v.add_argument("--d", type=int)
    v.add_argument("--family")
    v.add_argument("--t", type=_rational)
    v.add_argument("--m", type=int)
    v.add_argument("--n", type=int)
    v.set_defaults(func=cmd_curve)

    fr = leaf(sub, "frob")
    fr.add_argument("action", choices=["count", "signature", "verify"])
    fr.add_argument("--curve", required=True)
    fr.add_argument("--p", type=int)
    fr.add_argument("--n", type=int)
    fr.add_argument("--group")
    fr.set_defaults(func=cmd_frob)

    ga = leaf(sub, "gauss")
    ga.add_argument("action", choices=["period", "family"])
    ga.add_argument("--ell", type=int, required=True)
    ga.add_argument("--b", type=_rational_list)
    ga.add_argument("--check-2torsion", action="store_true")
    ga.set_defaults(func=cmd_gauss)
    return p


_REQUIRED = {
    ("group", "kernel"): ("group", "e"), ("group", "join"): ("group", "other"),
    ("group", "quotient"): ("group", "normal"), ("group", "crt"): ("group",),
    ("poly", "division"): ("curve", "m"), ("poly", "disc"): ("poly",),
    ("poly", "factors"): ("poly",), ("poly", "fingerprint"): ("poly", "p"),
    ("poly", "samefield"): ("f", "g"), ("curve", "invariants"): ("curve",),
    ("curve", "twist"): ("curve", "d"), ("curve", "serre"): ("curve",),
    ("curve", "specialize"): ("family", "t"), ("curve", "cdpoint"): ("m", "n"),
    ("frob", "count"): ("p",), ("frob", "signature"): ("p", "n"),
    ("frob", "verify"): ("group",),
}


def _check_required(args):
    key = (args.command, getattr(args, "action", None))
    missing = [f"--{k}" for k in _REQUIRED.get(key, ()) if getattr(args, k, None) is None]
    if key == ("group", "closure") and args.group is None and args.gens is None:
        missing.append("--group or --gens")
    if missing:
        raise ValidationError(f"{' '.join(k for k in key if k)}: missing {', '.join(missing)}")


def _fail(code, message, status, err):
    err.write(json.dumps({"error": {"code": code, "message": message, "exit_status": status}}, sort_keys=True) + "\n")
    return status


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail("usage", str(exc), USAGE_EXIT, err)
    if args.list_fixtures:
        out.write(dumps(list_fixtures()) + "\n")
        return 0
    if not getattr(args, "command", None):
        return _fail("usage", "no subcommand given", USAGE_EXIT, err)
    try:
        _check_required(args)
        result = args.func(args)
    except GalentError as exc:
        return _fail(exc.code, str(exc), exc.exit_status, err)
    except ValueError as exc:
        return _fail(ValidationError.code, str(exc), ValidationError.exit_status, err)
    except MemoryError:
        return _fail(BudgetExceeded.code, "out of memory", BudgetExceeded.exit_status, err)
    out.write(dumps(result) + "\n")
    return 0


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
