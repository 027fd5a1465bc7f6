"""Independent reference computations used by the tests.

Nothing here goes through the package's own arithmetic kernels except to
convert values in and out.
"""

import itertools

import sympy

from cliffqca.ring import LaurentPoly, LaurentRing


def to_sympy(a: LaurentPoly, symbols):
    expr = sympy.Integer(0)
    for e, c in a.terms.items():
        term = sympy.Integer(c)
        for s, k in zip(symbols, e):
            term *= s ** k
        expr += term
    return expr


def from_sympy(expr, ring: LaurentRing, symbols) -> LaurentPoly:
    """Reduce a Laurent expression with integer coefficients modulo p."""
    expr = sympy.expand(expr)
    out = {}
    for term in sympy.Add.make_args(expr):
        if term == 0:
            continue
        coeff, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        e = tuple(int(powers.get(s, 0)) for s in symbols)
        if sympy.Mul(*[s ** k for s, k in zip(symbols, e)]) != rest and rest != 1:
            raise ValueError(f"unexpected factor in {term}")
        c = int(sympy.Rational(coeff).p) * pow(int(sympy.Rational(coeff).q), -1, ring.p)
        out[e] = (out.get(e, 0) + c) % ring.p
    return LaurentPoly(ring, out)


def sympy_det(m, ring: LaurentRing) -> LaurentPoly:
    symbols = sympy.symbols(ring.names)
    sm = sympy.Matrix(m.rows, m.cols, lambda i, j: to_sympy(m[i, j], symbols))
    return from_sympy(sm.det(method="berkowitz"), ring, symbols)


def torus_points(p: int, d: int):
    return itertools.product(range(1, p), repeat=d)


def common_torus_zeros(gens, p: int, d: int) -> list:
    return [pt for pt in torus_points(p, d) if all(g.evaluate(pt) == 0 for g in gens)]


def poly_gens_to_sympy(gens, ring: LaurentRing):
    """Generators as ordinary polynomials (shifted to clear negative exponents)."""
    symbols = sympy.symbols(ring.names)
    out = []
    for g in gens:
        shift, q = g.normalize()
        out.append(to_sympy(q, symbols))
    return out, symbols


def brute_force_matmul(a, b):
    """Matrix product using sympy arithmetic, reduced mod p."""
    ring = a.ring
    symbols = sympy.symbols(ring.names)
    rows = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            expr = sum((to_sympy(a[i, k], symbols) * to_sympy(b[k, j], symbols) for k in range(a.cols)),
                       sympy.Integer(0))
            row.append(from_sympy(expr, ring, symbols))
        rows.append(row)
    return rows


def legendre(a: int, p: int) -> int:
    return int(sympy.legendre_symbol(a % p, p))


def closed_form_gauss(p: int, f: int) -> complex:
    """Normalized quadratic Gauss sum from its classical evaluation."""
    base = 1 if p % 4 == 1 else 1j
    return legendre(f, p) * base
