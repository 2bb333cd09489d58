"""Batch command line front end.

One job per process; every subcommand reads JSON files, writes one JSON
report (or JSON lines for tables), and exits with 0 on success/pass, 1 on
an identity-check failure, 2 on bad input.
"""

import argparse
import sys

from . import io
from .classify import classify_m3, skew_to_element
from .derived import (
    check_associative,
    check_commutative,
    check_derivation,
    check_filippov,
    check_invariant,
    check_jordan,
    check_l_infinity,
    check_nary_jacobi,
    derive_structure,
)
from .errors import NaryError
from .frobenius import check_quasi_frobenius, graph_subalgebra_test, \
    t_star_extension
from .hodge import HodgeContext, hodge_decomposition, star
from .poisson import Element, bracket_recursive_oracle, poisson_bracket
from .superspace import odd_space


def _write(args, text):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args, obj):
    _write(args, io.dumps(obj, pretty=args.pretty))


def _load_space(args):
    return io.parse_superspace(io.load_file(args.space),
                               max_degree=args.max_degree)


def _load_structure(space, args):
    if getattr(args, "structure", None):
        return io.parse_structure(space, io.load_file(args.structure))
    if getattr(args, "potential", None):
        mu = io.parse_potential(space, io.load_file(args.potential))
        return derive_structure(mu)
    raise NaryError("need --structure or --potential")


def _load_potential(space, args):
    if not getattr(args, "potential", None):
        raise NaryError("need --potential")
    return io.parse_potential(space, io.load_file(args.potential))


def cmd_verify(args):
    space = _load_space(args)
    name = args.identity
    if name == "commutative":
        rep = check_commutative(_load_structure(space, args),
                                exhaustive=args.exhaustive)
    elif name == "invariant":
        rep = check_invariant(_load_structure(space, args),
                              exhaustive=args.exhaustive, threads=args.threads)
    elif name == "nary-jacobi":
        rep = check_nary_jacobi(_load_structure(space, args),
                                exhaustive=args.exhaustive,
                                threads=args.threads)
    elif name == "l-infinity":
        rep = check_l_infinity(_load_potential(space, args))
    elif name == "filippov":
        rep = check_filippov(_load_potential(space, args),
                             exhaustive=args.exhaustive, threads=args.threads)
    elif name == "jordan":
        rep = check_jordan(_load_potential(space, args),
                           exhaustive=args.exhaustive)
    elif name == "associative":
        rep = check_associative(_load_potential(space, args),
                                exhaustive=args.exhaustive)
    elif name == "derivation":
        if not args.element:
            raise NaryError("derivation check needs --element")
        w = io.parse_element(space, io.load_file(args.element))
        ok = check_derivation(w, _load_potential(space, args))
        _emit(args, {"schema": io.SCHEMA, "check": "derivation", "pass": ok})
        return 0 if ok else 1
    elif name == "quasi-frobenius":
        if not args.phi:
            raise NaryError("quasi-frobenius check needs --phi")
        phi = io.parse_matrix(io.load_file(args.phi), space.dim)
        s = _load_structure(space, args)
        cert = check_quasi_frobenius(space, s, phi,
                                     allow_odd_arity=args.allow_odd_arity,
                                     exhaustive=args.exhaustive)
        _emit(args, io.qf_certificate_to_json(cert))
        return 0 if cert.passed else 1
    else:  # pragma: no cover - argparse restricts choices
        raise NaryError(f"unknown identity {name}")
    _emit(args, io.check_report_to_json(rep))
    return 0 if rep.passed else 1


def cmd_derive(args):
    space = _load_space(args)
    mu = _load_potential(space, args)
    _emit(args, io.structure_to_json(derive_structure(mu)))
    return 0


def cmd_star(args):
    space = _load_space(args)
    ctx = HodgeContext(space)
    v = io.parse_element(space, io.load_file(args.element))
    _emit(args, io.element_to_json(star(ctx, v)))
    return 0


def cmd_bracket(args):
    space = _load_space(args)
    a = io.parse_element(space, io.load_file(args.a))
    b = io.parse_element(space, io.load_file(args.b))
    fn = bracket_recursive_oracle if args.oracle else poisson_bracket
    _emit(args, io.element_to_json(fn(a, b)))
    return 0


def cmd_hodge(args):
    space = _load_space(args)
    ctx = HodgeContext(space)
    mu = _load_potential(space, args)
    rep = hodge_decomposition(ctx, mu)
    _emit(args, io.hodge_report_to_json(rep))
    return 0 if (rep.direct_sum_ok and rep.kernel_intersection_ok) else 1


def cmd_classify(args):
    space = _load_space(args)
    if args.skew:
        mat = io.parse_matrix(io.load_file(args.skew), space.dim)
        v = skew_to_element(space, mat)
    elif args.v:
        v = io.parse_element(space, io.load_file(args.v))
    else:
        raise NaryError("need --v or --skew")
    rec = classify_m3(space, v, rounds=args.rounds, seed=args.seed,
                      tolerance=args.tolerance)
    _emit(args, io.classification_record_to_json(rec))
    return 0


def cmd_table(args):
    lines = []
    for m in args.m:
        space = odd_space(m)
        k = m // 2
        for params in _grids(args.grid, k):
            v = Element(space, {(2 * t, 2 * t + 1): params[t]
                                for t in range(k) if params[t] != 0})
            rec = classify_m3(space, v, rounds=args.rounds, seed=args.seed,
                              tolerance=args.tolerance)
            lines.append(io.dumps(io.classification_record_to_json(rec)))
    _write(args, "".join(lines))
    return 0


def _grids(values, k):
    # non-increasing parameter tuples, the canonical ordering
    values = sorted(set(values), reverse=True)

    def rec(start, left, prefix):
        if left == 0:
            yield tuple(prefix)
            return
        for i in range(start, len(values)):
            yield from rec(i, left - 1, prefix + [values[i]])

    yield from rec(0, k, [])


def cmd_frobenius(args):
    space = _load_space(args)
    s = _load_structure(space, args)
    phi = io.parse_matrix(io.load_file(args.phi), space.dim)
    cert = check_quasi_frobenius(space, s, phi,
                                 allow_odd_arity=args.allow_odd_arity,
                                 exhaustive=args.exhaustive)
    out = io.qf_certificate_to_json(cert)
    if args.graph:
        ext = t_star_extension(space, s)
        graph_ok = graph_subalgebra_test(ext, phi)
        out["graph_subalgebra"] = graph_ok
        out["equivalence_ok"] = graph_ok == cert.passed
    _emit(args, out)
    return 0 if cert.passed else 1


def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--pretty", action="store_true",
                        help="indent JSON output")
    shared.add_argument("--output", help="write the report to a file")
    shared.add_argument("--threads", type=int, default=1,
                        help="parallel verifier loops")
    shared.add_argument("--seed", type=int, default=0,
                        help="seed for randomized searches")
    shared.add_argument("--max-degree", type=int, default=None,
                        help="degree cap for spaces with even generators")
    shared.add_argument("--tolerance", type=float, default=1e-9,
                        help="residual bound for the numerical canonical form")
    p = argparse.ArgumentParser(
        prog="naryalg",
        description="Exact engine for commutative n-ary superalgebras "
                    "with an invariant form")
    sub = p.add_subparsers(dest="command", required=True)

    def add_cmd(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[shared])

    def common(sp, space=True):
        if space:
            sp.add_argument("--space", required=True, help="superspace JSON")
        sp.add_argument("--exhaustive", action="store_true",
                        help="collect all violations, not just the first")

    v = add_cmd("verify", "run an identity check")
    common(v)
    v.add_argument("--identity", required=True,
                   choices=["commutative", "invariant", "l-infinity",
                            "nary-jacobi", "filippov", "jordan",
                            "associative", "derivation", "quasi-frobenius"])
    v.add_argument("--potential")
    v.add_argument("--structure")
    v.add_argument("--element", help="degree-2 element for derivation checks")
    v.add_argument("--phi", help="bilinear form for quasi-frobenius checks")
    v.add_argument("--allow-odd-arity", action="store_true")
    v.set_defaults(fn=cmd_verify)

    d = add_cmd("derive", "structure constants of a potential")
    common(d)
    d.add_argument("--potential", required=True)
    d.set_defaults(fn=cmd_derive)

    s = add_cmd("star", "apply the star operator")
    common(s)
    s.add_argument("--element", required=True)
    s.set_defaults(fn=cmd_star)

    b = add_cmd("bracket", "bracket of two elements")
    common(b)
    b.add_argument("--a", required=True)
    b.add_argument("--b", required=True)
    b.add_argument("--oracle", action="store_true",
                   help="use the slow recursive evaluation")
    b.set_defaults(fn=cmd_bracket)

    h = add_cmd("hodge", "decomposition certificate")
    common(h)
    h.add_argument("--potential", required=True)
    h.set_defaults(fn=cmd_hodge)

    c = add_cmd("classify", "classification record of one algebra")
    common(c)
    c.add_argument("--v", help="degree-2 element JSON")
    c.add_argument("--skew", help="skew matrix JSON")
    c.add_argument("--rounds", type=int, default=64)
    c.set_defaults(fn=cmd_classify)

    t = add_cmd("table", "classification table as JSON lines")
    common(t, space=False)
    t.add_argument("--m", type=int, nargs="+", required=True)
    t.add_argument("--grid", type=int, nargs="+", default=[0, 1, 2])
    t.add_argument("--rounds", type=int, default=64)
    t.set_defaults(fn=cmd_table)

    f = add_cmd("frobenius", "quasi-Frobenius certificate")
    common(f)
    f.add_argument("--potential")
    f.add_argument("--structure")
    f.add_argument("--phi", required=True)
    f.add_argument("--graph", action="store_true",
                   help="also run the graph-subalgebra test")
    f.add_argument("--allow-odd-arity", action="store_true")
    f.set_defaults(fn=cmd_frobenius)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NaryError as ex:
        sys.stderr.write(io.dumps({"schema": io.SCHEMA, "error": str(ex),
                                   "kind": type(ex).__name__}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
