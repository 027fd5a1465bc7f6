"""Command-line front end: ``python -m cliffqca <subcommand> ...``.

Exit codes: 0 success, 1 a verified-false verdict, 2 input errors,
3 precondition or normalization errors, 4 resource caps, 5 internal
inconsistencies.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from . import catalog as cat
from .boundary import boundary_data
from .errors import (CliffQCAError, DomainError, InconsistencyError, NormalizationError,
                     NotAntihermitianError, PreconditionError, QuillenSuslinError, ResourceCapError, RingMismatchError,
                     ShapeError)
from .forms import AntihermitianForm
from .groebner import Caps, check_complex_exact
from .ring import PolyMatrix, dumps_canonical
from .symplectic import SymplecticMatrix, det_class, is_symplectic
from .witt import DEFAULT_SEARCH, gauss_sum, qca_from_form, witt_reduce_d1

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_PRECONDITION, EXIT_CAP, EXIT_INTERNAL = range(6)


class InputError(Exception):
    """Unreadable or malformed input file."""


def _load(path: str) -> PolyMatrix:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return PolyMatrix.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not a canonical matrix document: {exc}") from None


def _emit(args, payload: dict, pretty: str | None = None) -> None:
    if args.format == "pretty" and pretty is not None:
        text = pretty.rstrip("\n") + "\n"
    else:
        text = dumps_canonical(payload)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _caps(args) -> Caps:
    return Caps(max_basis=args.basis_cap, max_degree=args.gb_degree_cap)


def _search(args):
    return replace(DEFAULT_SEARCH, degree_cap=args.degree_cap, seed=args.seed)


def _mono_json(m) -> dict:
    ((e, c),) = m.terms.items()
    return {"c": c, "e": list(e)}


# -- subcommands ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    m = _load(args.input)
    ok = is_symplectic(m)
    report = {"symplectic": ok, "q": m.rows // 2}
    if ok:
        report["det_class"] = _mono_json(det_class(m))
    pretty = f"symplectic: {ok}\nq: {m.rows // 2}"
    if ok:
        pretty += f"\ndet_class: {det_class(m)}"
    _emit(args, report, pretty)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_pipeline(args) -> int:
    m = _load(args.input)
    q = SymplecticMatrix(m)
    split, b0, xi = boundary_data(q, args.axis, _caps(args))
    report = {
        "axis": q.ring.names[split.axis],
        "A": split.A.to_json(),
        "B": split.B.to_json(),
        "B0": b0.to_json(),
        "Xi": xi.to_json(),
        "identities": split.identities(),
    }
    pretty = [f"A =\n{split.A.pretty()}", f"B =\n{split.B.pretty()}", f"B0 =\n{b0.pretty()}",
              f"Xi =\n{xi.matrix.pretty()}"]
    if xi.ring.nvars <= 1:
        w = witt_reduce_d1(xi, _search(args))
        report["witness"] = w.to_json()
        report["n"] = xi.dim // 2
        pretty.append(f"hyperbolic rank n = {xi.dim // 2}; witness E =\n{w.E.pretty()}")
    _emit(args, report, "\n".join(pretty))
    return EXIT_OK


def cmd_witt_reduce(args) -> int:
    form = AntihermitianForm(_load(args.input))
    w = witt_reduce_d1(form, _search(args))
    _emit(args, {**w.to_json(), "n": form.dim // 2}, f"n = {form.dim // 2}\nE =\n{w.E.pretty()}")
    return EXIT_OK


def cmd_qca_from_form(args) -> int:
    form = AntihermitianForm(_load(args.input))
    q = qca_from_form(form, args.axis)
    _emit(args, q.to_json(), q.matrix.pretty())
    return EXIT_OK


def _verify_one(pf: tuple) -> dict:
    p, f = pf
    b = cat.build_bundle(p, f)
    checks = cat.bundle_checks(b)
    return {"p": p, "f": f, "checks": checks, "ok": all(checks.values())}


def cmd_catalog(args) -> int:
    if args.verify_all:
        items = []
        for p in args.primes:
            for f in (1, cat.smallest_nonsquare(p)):
                items.append((p, f))
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_verify_one, items))
        else:
            results = [_verify_one(it) for it in items]
        xi2 = cat.xi_p2()
        ok = all(r["ok"] for r in results)
        report = {"results": results, "xi_p2_det": xi2.determinant(), "ok": ok}
        pretty = "\n".join(f"p={r['p']} f={r['f']}: {'ok' if r['ok'] else 'FAIL'}" for r in results)
        _emit(args, report, pretty)
        return EXIT_OK if ok else EXIT_FALSE
    if args.member == "xi_p2":
        m = cat.xi_p2().matrix
    else:
        if args.p is None or args.f is None:
            raise DomainError("--p and --f are required for this member")
        m = cat.build_bundle(args.p, args.f).members()[args.member]
    _emit(args, m.to_json(), m.pretty())
    return EXIT_OK


def cmd_spin(args) -> int:
    t = cat.strings(args.p, args.f, args.n)
    m = cat.spin_from_strings(*t)
    expected = pow(4 * args.f, -1, args.p)
    report = {"p": args.p, "f": args.f, "n": args.n, "m": m, "expected": expected, "match": m == expected}
    _emit(args, report, f"m = {m} (1/(4f) = {expected})")
    return EXIT_OK if m == expected else EXIT_FALSE


def cmd_exactness(args) -> int:
    if args.surface:
        cert = cat.surface_exactness(args.p, args.f, perturb=args.perturb, caps=_caps(args))
    else:
        if not (args.m and args.n):
            raise DomainError("give --surface with --p/--f, or both --m and --n matrix files")
        cert = check_complex_exact(_load(args.m), _load(args.n), _caps(args))
    pretty = f"verdict: {cert.verdict}\nranks: {cert.ranks}\ngrades: {cert.grades}"
    if cert.reasons:
        pretty += "\nreasons: " + "; ".join(cert.reasons)
    _emit(args, cert.to_json(), pretty)
    return EXIT_OK if cert.verdict else EXIT_FALSE


def cmd_gauss(args) -> int:
    z = gauss_sum(args.p, args.f)
    report = {"p": args.p, "f": args.f, "float_real": z.real, "float_imag": z.imag}
    _emit(args, report, f"F({args.p},{args.f}) = {z.real:.12f} {z.imag:+.12f}i  (floating point)")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "pretty"), default="json")
    common.add_argument("--output", "-o", help="write to a file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for sweeps")
    common.add_argument("--degree-cap", type=int, default=DEFAULT_SEARCH.degree_cap,
                        help="isotropic-vector search degree cap")
    common.add_argument("--gb-degree-cap", type=int, default=Caps().max_degree)
    common.add_argument("--basis-cap", type=int, default=Caps().max_basis)

    parser = argparse.ArgumentParser(prog="cliffqca", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", parents=[common], help="test a matrix for symplecticity")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("pipeline", parents=[common], help="split, free basis, boundary form, reduction")
    sp.add_argument("input")
    sp.add_argument("--axis", default="z")
    sp.set_defaults(func=cmd_pipeline)

    sp = sub.add_parser("witt-reduce", parents=[common], help="reduce a form over F_p[x] to lambda_n")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_witt_reduce)

    sp = sub.add_parser("qca-from-form", parents=[common], help="symplectic matrix inducing a form")
    sp.add_argument("input")
    sp.add_argument("--axis", default="z")
    sp.set_defaults(func=cmd_qca_from_form)

    sp = sub.add_parser("catalog", parents=[common], help="dump or verify the example matrices")
    sp.add_argument("--p", type=int)
    sp.add_argument("--f", type=int)
    sp.add_argument("--member", default="Q",
                    choices=("sigma_toric", "sigma_qca", "Q", "xi", "sigma_bd", "b_top", "h_x", "h_y", "xi_p2"))
    sp.add_argument("--verify-all", action="store_true")
    sp.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7, 11, 13])
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("spin", parents=[common], help="topological spin exponent")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--f", type=int, required=True)
    sp.add_argument("--n", type=int, default=1)
    sp.set_defaults(func=cmd_spin)

    sp = sub.add_parser("exactness", parents=[common], help="Buchsbaum-Eisenbud exactness check")
    sp.add_argument("--m")
    sp.add_argument("--n")
    sp.add_argument("--surface", action="store_true")
    sp.add_argument("--perturb", action="store_true")
    sp.add_argument("--p", type=int)
    sp.add_argument("--f", type=int)
    sp.set_defaults(func=cmd_exactness)

    sp = sub.add_parser("gauss", parents=[common], help="normalized quadratic Gauss sum")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--f", type=int, default=1)
    sp.set_defaults(func=cmd_gauss)
    return parser


RECIPE = ("normalize first: multiply by a power of the axis variable (a shift QCA) so exponents "
          "start at 0, then coarse-grain along the axis (ring.coarse_grain) until they lie in {0, 1}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.degree_cap < 1:
        parser.error("--degree-cap must be at least 1")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NormalizationError as exc:
        print(f"error: {exc}\nrecipe: {RECIPE}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (QuillenSuslinError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ResourceCapError as exc:
        print(f"error: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InconsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ShapeError, RingMismatchError, NotAntihermitianError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CliffQCAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
