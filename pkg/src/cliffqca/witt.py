"""Congruence witnesses for antihermitian forms.

A witness is an invertible ``E`` with ``dagger(E) source E == target``.  This
module builds them for the inverse of a form, for the exponent bound
(``I_n (x) Xi`` is hyperbolic for ``n = 2`` or ``4``), and for the full
reduction of any form over F_p or F_p[x^{+-1}] to the standard ``lambda_n``.
It also rebuilds a symplectic matrix from a form, and holds the finite-field
arithmetic behind the quadratic forms ``f u^2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from sympy.ntheory import primitive_root

from .errors import DomainError, InconsistencyError, NotAntihermitianError, ResourceCapError
from .forms import AntihermitianForm, _lex_positive, form_problems
from .ring import (LaurentPoly, LaurentRing, PolyMatrix, block, block_diag, determinant, hstack,
                   inv_mod, scalar_kron)
from .symplectic import SymplecticMatrix, elementary, lambda_form

__all__ = [
    "AntihermitianForm",
    "CongruenceWitness",
    "QuadFormClass",
    "hyperbolic",
    "direct_sum",
    "inverse_witness",
    "exponent_witness",
    "witt_reduce_d1",
    "qca_from_form",
    "classify_theta",
    "solve_sum_of_squares",
    "sqrt_minus_one",
    "gauss_sum",
    "random_invertible",
    "scramble",
]


@dataclass(frozen=True)
class CongruenceWitness:
    """``dagger(E) @ source @ E == target``, re-verified on construction."""

    E: PolyMatrix
    source: PolyMatrix
    target: PolyMatrix

    def __post_init__(self):
        if not self.check():
            raise InconsistencyError("congruence witness does not verify")

    def check(self) -> bool:
        E = self.E
        if not E.is_square() or E.rows != self.source.rows:
            return False
        if not determinant(E).is_unit():
            return False
        return E.dagger() @ self.source @ E == self.target

    @property
    def verified(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"E": self.E.to_json(), "source": self.source.to_json(),
                "target": self.target.to_json(), "verified": True}

    @classmethod
    def from_json(cls, data) -> CongruenceWitness:
        return cls(PolyMatrix.from_json(data["E"]), PolyMatrix.from_json(data["source"]),
                   PolyMatrix.from_json(data["target"]))


def hyperbolic(n: int, ring: LaurentRing) -> AntihermitianForm:
    """The standard form ``lambda_n`` of dimension ``2n``."""
    if n < 0:
        raise DomainError("hyperbolic rank must be nonnegative")
    return AntihermitianForm(lambda_form(ring, n))


def direct_sum(*forms) -> PolyMatrix:
    mats = [f.matrix if isinstance(f, AntihermitianForm) else f for f in forms]
    return block_diag(*mats)


def _as_matrix(x) -> PolyMatrix:
    return x.matrix if isinstance(x, AntihermitianForm) else x


def _hyperbolic_sum_to_standard(ring: LaurentRing, qs: list) -> PolyMatrix:
    """Permutation ``P`` with ``dagger(P) (lambda_{q1} + ... ) P == lambda_{sum q}``."""
    total = sum(qs)
    n = 2 * total
    grid = [[0] * n for _ in range(n)]
    new = 0
    offsets = []
    off = 0
    for q in qs:
        offsets.append(off)
        off += 2 * q
    for q, o in zip(qs, offsets):
        for i in range(q):
            grid[o + i][new] = 1
            grid[o + q + i][total + new] = 1
            new += 1
    return PolyMatrix(ring, grid, rows=n, cols=n)


# -- inverse and exponent witnesses ------------------------------------------------

def inverse_witness(x: AntihermitianForm | PolyMatrix) -> CongruenceWitness:
    """Witness ``diag(Xi, Xi^{-1}) ~ lambda``."""
    form = x if isinstance(x, AntihermitianForm) else AntihermitianForm(x)
    xi = form.matrix
    ring = form.ring
    d = form.dim
    m = form.split()
    xi_inv = xi.inverse()
    eye = PolyMatrix.identity(ring, d)
    zero = PolyMatrix.zeros(ring, d, d)
    E = block([[eye, xi_inv], [zero, eye]]) @ block([[eye, zero], [-m, eye]])
    return CongruenceWitness(E, block_diag(xi, xi_inv), lambda_form(ring, d))


def _scalar_hyperbolizer(p: int, n: int) -> list:
    """Scalar ``P`` over F_p with ``P^T P = [[0, 1], [1, 0]]^{+ n/2}``."""
    half = inv_mod(2, p)
    if n == 2:
        i = sqrt_minus_one(p)
        if i is None:
            raise DomainError(f"-1 is not a square mod {p}; use n = 4")
        return [[1, half], [i, (-i * half) % p]]
    if n == 4:
        x, y = solve_sum_of_squares(p)
        cols = [
            [1, 0, x, y],
            [half, 0, (-x * half) % p, (-y * half) % p],
            [0, 1, y, (-x) % p],
            [0, half, (-y * half) % p, x * half % p],
        ]
        return [[cols[j][i] % p for j in range(4)] for i in range(4)]
    raise DomainError("scalar hyperbolizer needs n = 2 or 4")


def exponent_witness(x: AntihermitianForm | PolyMatrix, n: int | None = None) -> CongruenceWitness:
    """Witness ``I_n (x) Xi ~ lambda`` with ``n = 2`` (``p = 1 mod 4``) or ``4`` (``p = 3 mod 4``)."""
    form = x if isinstance(x, AntihermitianForm) else AntihermitianForm(x)
    ring = form.ring
    p = ring.p
    if p == 2:
        raise DomainError("the exponent bound needs odd characteristic")
    if n is None:
        n = 2 if p % 4 == 1 else 4
    if n % 2:
        raise DomainError("exponent witness needs even n")
    if p % 4 == 3 and n % 4:
        raise DomainError(f"for p = {p} = 3 mod 4 the exponent is 4; n must be a multiple of 4")
    base = 2 if p % 4 == 1 else 4
    pb = _scalar_hyperbolizer(p, base)
    big = [[0] * n for _ in range(n)]
    for k in range(n // base):
        for i in range(base):
            for j in range(base):
                big[k * base + i][k * base + j] = pb[i][j]
    xi = form.matrix
    d = form.dim
    step1 = scalar_kron(big, PolyMatrix.identity(ring, d))
    # [[0, Xi], [Xi, 0]] is congruent to lambda via diag(I, Xi^{-1})
    f_block = block_diag(PolyMatrix.identity(ring, d), xi.inverse())
    step2 = block_diag(*([f_block] * (n // 2)))
    step3 = _hyperbolic_sum_to_standard(ring, [d] * (n // 2))
    E = step1 @ step2 @ step3
    source = block_diag(*([xi] * n))
    return CongruenceWitness(E, source, lambda_form(ring, n * d // 2))


# -- univariate Laurent arithmetic ---------------------------------------------------

def _univariate(ring: LaurentRing):
    if ring.nvars > 1:
        raise DomainError(f"Witt reduction needs at most one variable, got {ring.nvars}")


def laurent_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple:
    """``a = q b + r`` with ``span(r) < span(b)`` in F_p[x^{+-1}] (or F_p)."""
    ring = a.ring
    if b.is_zero():
        raise ZeroDivisionError("division by zero")
    if a.is_zero():
        return ring.zero(), ring.zero()
    p = ring.p
    if ring.nvars == 0:
        return a * b.inverse(), ring.zero()
    sa, a0 = a.normalize()
    sb, b0 = b.normalize()
    da = max(e[0] for e in a0.terms)
    db = max(e[0] for e in b0.terms)
    rem = [a0.terms.get((k,), 0) for k in range(da + 1)]
    div = [b0.terms.get((k,), 0) for k in range(db + 1)]
    inv_lead = inv_mod(div[-1], p)
    quo = {}
    for k in range(da - db, -1, -1):
        c = rem[k + db] * inv_lead % p
        if c:
            quo[(k,)] = c
            for i, v in enumerate(div):
                rem[k + i] = (rem[k + i] - c * v) % p
    q = LaurentPoly(ring, quo).shift((sa[0] - sb[0],))
    r = LaurentPoly(ring, {(k,): c for k, c in enumerate(rem) if c}).shift(sa)
    if q * b + r != a:
        raise InconsistencyError("Laurent division failed")
    return q, r


def laurent_gcd(values: list) -> LaurentPoly:
    """A generator of the ideal spanned by ``values`` (zero if all are zero)."""
    g = None
    for v in values:
        if v.is_zero():
            continue
        if g is None:
            g = v
            continue
        a, b = g, v
        while not b.is_zero():
            _, r = laurent_divmod(a, b)
            a, b = b, r
        g = a
    return g


def _column_reduce(rows: list, ring: LaurentRing) -> tuple:
    """Unimodular column operations making ``rows @ U`` lower triangular.

    Returns ``(reduced rows, U)`` with row ``t`` zero beyond column ``t``.
    """
    r = len(rows)
    m = len(rows[0])
    L = [list(row) for row in rows]
    U = [[ring.one() if i == j else ring.zero() for j in range(m)] for i in range(m)]

    def col_axpy(dst, src, q):
        for row in L:
            row[dst] = row[dst] - q * row[src]
        for row in U:
            row[dst] = row[dst] - q * row[src]

    def col_swap(a, b):
        for row in L:
            row[a], row[b] = row[b], row[a]
        for row in U:
            row[a], row[b] = row[b], row[a]

    for t in range(r):
        while True:
            live = [j for j in range(t, m) if not L[t][j].is_zero()]
            if not live:
                break
            piv = min(live, key=lambda j: (L[t][j].span(), j))
            if piv != t:
                col_swap(piv, t)
            others = [j for j in range(t + 1, m) if not L[t][j].is_zero()]
            if not others:
                break
            for j in others:
                q, _ = laurent_divmod(L[t][j], L[t][t])
                col_axpy(j, t, q)
    return L, PolyMatrix(ring, U, rows=m, cols=m)


def _primitive(v: PolyMatrix) -> PolyMatrix:
    g = laurent_gcd(v.vector())
    if g.is_unit():
        return v
    return PolyMatrix.column(v.ring, [laurent_divmod(a, g)[0] for a in v.vector()])


def _positive_part(h: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(h.ring, {e: c for e, c in h.terms.items() if _lex_positive(e)})


# -- isotropic vectors -------------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    """Isotropic-vector search limits."""

    degree_cap: int = 6
    exhaustive_limit: int = 2_000_000
    samples_per_degree: int = 400_000
    batch: int = 50_000
    seed: int = 0


DEFAULT_SEARCH = SearchConfig()


def _isotropic_dim2(xi: PolyMatrix) -> PolyMatrix:
    """Euclid on ``[[a, b], [-b^dag, c]]`` until a diagonal entry vanishes."""
    ring = xi.ring
    E = PolyMatrix.identity(ring, 2)
    cur = xi
    for _ in range(10_000):
        a, b, c = cur[0, 0], cur[0, 1], cur[1, 1]
        if a.is_zero():
            return E.col(0)
        if c.is_zero():
            return E.col(1)
        if a.span() <= c.span():
            q, _ = laurent_divmod(b, a)
            step = elementary(ring, 2, 1, 2, -q)
        else:
            q, _ = laurent_divmod(b, c)
            step = elementary(ring, 2, 2, 1, -q.dagger())
        nxt = step.dagger() @ cur @ step
        if nxt == cur:
            raise InconsistencyError("2x2 isotropic reduction stalled")
        E = E @ step
        cur = nxt
    raise InconsistencyError("2x2 isotropic reduction did not terminate")


def _quadratic_forms(xi: PolyMatrix, d: int) -> list:
    """Integer matrices ``M_s`` (s > 0): coefficient of ``x^s`` in ``v^dag Xi v``."""
    m = xi.rows
    ns = m * (d + 1)
    entries = {}
    for i in range(m):
        for j in range(m):
            for e, c in xi[i, j].terms.items():
                entries.setdefault(e[0], []).append((i, j, c))
    smax = max((k for k in entries), default=0) + d
    out = []
    for s in range(1, smax + 1):
        M = np.zeros((ns, ns), dtype=np.int64)
        for a in range(d + 1):
            for b in range(d + 1):
                for i, j, c in entries.get(s + a - b, ()):
                    M[i * (d + 1) + a, j * (d + 1) + b] += c
        if M.any():
            out.append(M)
    return out


def _isotropic_search(xi: PolyMatrix, cfg: SearchConfig) -> PolyMatrix:
    ring = xi.ring
    p = ring.p
    m = xi.rows
    for i in range(m):
        if (xi[i, i]).is_zero():
            v = [ring.zero()] * m
            v[i] = ring.one()
            return PolyMatrix.column(ring, v)
    rng = np.random.default_rng(cfg.seed)
    max_d = 0 if ring.nvars == 0 else cfg.degree_cap
    for d in range(max_d + 1):
        forms = _quadratic_forms(xi, d)
        n = m * (d + 1)
        found = None
        if p ** n <= cfg.exhaustive_limit:
            digits = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
            total = p ** n
            for start in range(1, total, cfg.batch):
                idx = np.arange(start, min(total, start + cfg.batch), dtype=np.int64)
                C = (idx[:, None] // digits[None, :]) % p
                ok = _all_vanish(C, forms, p)
                hits = np.flatnonzero(ok)
                if hits.size:
                    found = C[hits[0]]
                    break
        else:
            drawn = 0
            while drawn < cfg.samples_per_degree and found is None:
                C = rng.integers(0, p, size=(cfg.batch, n), dtype=np.int64)
                drawn += cfg.batch
                ok = _all_vanish(C, forms, p) & C.any(axis=1)
                hits = np.flatnonzero(ok)
                if hits.size:
                    found = C[hits[0]]
        if found is not None:
            v = []
            for i in range(m):
                coeffs = found[i * (d + 1):(i + 1) * (d + 1)]
                terms = {(a,) if ring.nvars else (): int(c) for a, c in enumerate(coeffs) if c}
                v.append(LaurentPoly(ring, terms))
            vec = PolyMatrix.column(ring, v)
            if not (vec.dagger() @ xi @ vec).is_zero():
                raise InconsistencyError("isotropic search returned a non-isotropic vector")
            return vec
    raise ResourceCapError(f"no isotropic vector found up to degree cap {cfg.degree_cap}")


def _all_vanish(C: np.ndarray, forms: list, p: int) -> np.ndarray:
    ok = np.ones(C.shape[0], dtype=bool)
    for M in forms:
        vals = np.einsum("ij,ij->i", C @ (M % p), C) % p
        ok &= vals == 0
        if not ok.any():
            break
    return ok


def find_isotropic(xi: PolyMatrix, cfg: SearchConfig = DEFAULT_SEARCH) -> PolyMatrix:
    """A primitive nonzero ``v`` with ``dagger(v) Xi v == 0``."""
    _univariate(xi.ring)
    if xi.rows == 2 and xi.ring.nvars == 1:
        v = _isotropic_dim2(xi)
    else:
        v = _isotropic_search(xi, cfg)
    return _primitive(v)


# -- reduction over F_p[x^{+-1}] ---------------------------------------------------------

def _split_hyperbolic_pair(xi: PolyMatrix, v: PolyMatrix) -> PolyMatrix:
    """``E`` with ``dagger(E) Xi E = lambda_1 + Xi'`` and first column ``v``."""
    ring = xi.ring
    row_v = (v.dagger() @ xi).tolist()[0]
    red, U = _column_reduce([row_v], ring)
    g = red[0][0]
    if not g.is_unit():
        raise InconsistencyError("isotropic vector is not primitive, dagger(v) Xi is not unimodular")
    w = U.col(0) * g.inverse()
    h = (w.dagger() @ xi @ w)[0, 0]
    s = _positive_part(h)
    w = w + v * s
    if not (w.dagger() @ xi @ w).is_zero() or (v.dagger() @ xi @ w)[0, 0] != 1:
        raise InconsistencyError("hyperbolic completion failed")
    row_w = (w.dagger() @ xi).tolist()[0]
    _, U2 = _column_reduce([row_v, row_w], ring)
    rest = U2.submatrix(None, range(2, xi.rows))
    return hstack(v, w, rest)


def witt_reduce_d1(x: AntihermitianForm | PolyMatrix, cfg: SearchConfig = DEFAULT_SEARCH) -> CongruenceWitness:
    """Witness ``dagger(E) Xi E == lambda_{dim/2}`` over F_p or F_p[x^{+-1}]."""
    xi = _as_matrix(x)
    if xi.is_square() and xi.rows % 2:
        raise NotAntihermitianError("odd-dimensional forms are never invertible with zero constant diagonal")
    form = x if isinstance(x, AntihermitianForm) else AntihermitianForm(xi)
    ring = form.ring
    _univariate(ring)
    E = _reduce(form.matrix, cfg)
    return CongruenceWitness(E, form.matrix, lambda_form(ring, form.dim // 2))


def _entry_weight(a: LaurentPoly) -> int:
    return 0 if a.is_zero() else (a.span() + 1) ** 2


def _form_weight(g: list) -> int:
    return sum(_entry_weight(a) for row in g for a in row)


def shrink_form(xi: PolyMatrix, max_rounds: int = 200) -> tuple:
    """Greedy congruences ``col_j += u col_i`` lowering the total entry size.

    Returns ``(E, dagger(E) Xi E)``.  Candidates ``u`` are the negated
    quotients that shorten an entry of column ``j`` and small monomials.
    """
    ring = xi.ring
    n = xi.rows
    g = xi.tolist()
    E = PolyMatrix.identity(ring, n).tolist()
    if n < 2:
        return PolyMatrix(ring, E, rows=n, cols=n), xi
    p = ring.p
    monos = [ring.one()]
    if ring.nvars:
        x = ring.gen(0)
        monos = [x ** k for k in (0, 1, -1, 2, -2)]
    small = [m.scale(c) for m in monos for c in range(1, p)] if p <= 7 else [m.scale(c) for m in monos for c in (1, p - 1)]

    def trial(i, j, u):
        col = [g[k][j] + g[k][i] * u for k in range(n)]
        ub = u.dagger()
        col[j] = g[j][j] + ub * g[i][j] + g[j][i] * u + ub * g[i][i] * u
        old = sum(_entry_weight(g[k][j]) for k in range(n) if k != j) * 2 + _entry_weight(g[j][j])
        new = sum(_entry_weight(col[k]) for k in range(n) if k != j) * 2 + _entry_weight(col[j])
        return new - old, col

    for _ in range(max_rounds):
        best = None
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                cands = list(small)
                for k in range(n):
                    if not g[k][i].is_zero() and not g[k][j].is_zero() and k != j:
                        q, _ = laurent_divmod(g[k][j], g[k][i])
                        if not q.is_zero():
                            cands.append(-q)
                for u in cands:
                    delta, col = trial(i, j, u)
                    if delta < 0 and (best is None or delta < best[0]):
                        best = (delta, i, j, u, col)
        if best is None:
            break
        _, i, j, u, col = best
        for k in range(n):
            g[k][j] = col[k]
            if k != j:
                g[j][k] = -col[k].dagger()
        for k in range(n):
            E[k][j] = E[k][j] + E[k][i] * u
    Em = PolyMatrix(ring, E, rows=n, cols=n)
    out = PolyMatrix(ring, g, rows=n, cols=n)
    if Em.dagger() @ xi @ Em != out:
        raise InconsistencyError("greedy form reduction lost track of the congruence")
    return Em, out


def _reduce(xi: PolyMatrix, cfg: SearchConfig) -> PolyMatrix:
    ring = xi.ring
    n = xi.rows
    if n == 0:
        return PolyMatrix.zeros(ring, 0, 0)
    if n > 2 and ring.nvars:
        S, shrunk = shrink_form(xi)
        return S @ _reduce_core(shrunk, cfg)
    return _reduce_core(xi, cfg)


def _reduce_core(xi: PolyMatrix, cfg: SearchConfig) -> PolyMatrix:
    ring = xi.ring
    n = xi.rows
    v = find_isotropic(xi, cfg)
    step = _split_hyperbolic_pair(xi, v)
    reduced = step.dagger() @ xi @ step
    inner = reduced.submatrix(range(2, n), range(2, n))
    E_inner = _reduce(inner, cfg)
    E = step @ block_diag(PolyMatrix.identity(ring, 2), E_inner)
    return E @ _hyperbolic_sum_to_standard(ring, [1, (n - 2) // 2]) if n > 2 else E


# -- QCA from a form -------------------------------------------------------------------

def qca_from_form(x: AntihermitianForm | PolyMatrix, axis: str = "z") -> SymplecticMatrix:
    """A symplectic ``Q`` over ``ring[axis^{+-1}]`` whose boundary form is ``Xi``.

    With ``Xi = M - dagger(M)``, ``E = [[I, I], [dagger(M), M]]`` satisfies
    ``dagger(E) lambda E = diag(-Xi, Xi)``; ``Q = (E_1 | z E_2) E^{-1}`` is then
    symplectic, and the extra symplectic factor ``diag(Xi^{-dagger}, Xi)``
    makes the last ``dim`` columns of the ``z``-coefficient equal ``E_2``.
    """
    form = x if isinstance(x, AntihermitianForm) else AntihermitianForm(x)
    base = form.ring
    if axis in base.names:
        raise DomainError(f"axis name {axis!r} already used by {base}")
    ring = base.extend(axis)
    xi = form.matrix.change_ring(ring)
    d = form.dim
    if d == 0:
        return SymplecticMatrix(PolyMatrix.zeros(ring, 0, 0))
    m = AntihermitianForm(xi).split()
    eye = PolyMatrix.identity(ring, d)
    e1 = block([[eye], [m.dagger()]])
    e2 = block([[eye], [m]])
    xi_inv = xi.inverse()
    E = hstack(e1, e2)
    E_inv = block([[eye + xi_inv @ m.dagger(), -xi_inv], [-(xi_inv @ m.dagger()), xi_inv]])
    if E_inv @ E != PolyMatrix.identity(ring, 2 * d):
        raise InconsistencyError("closed-form inverse of E failed")
    z = ring.gen(axis)
    G = hstack(e1, e2 * z)
    F = block_diag(xi_inv.dagger(), xi)
    return SymplecticMatrix(G @ E_inv @ F)


# -- finite-field quadratic forms ---------------------------------------------------------

@dataclass(frozen=True)
class QuadFormClass:
    """Witt class of the form ``f u^2`` over F_p."""

    p: int
    f: int
    square: bool
    label: tuple

    @property
    def group(self) -> str:
        return "Z2xZ2" if self.p % 4 == 1 else "Z4"


def _odd_prime(p: int):
    from .ring import is_prime
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        raise DomainError("p = 2 is not supported here")


def classify_theta(p: int, f: int) -> QuadFormClass:
    """Square class of ``f`` (Euler's criterion) and its Witt-group label."""
    _odd_prime(p)
    if f % p == 0:
        raise DomainError("f must be a unit")
    square = pow(f, (p - 1) // 2, p) == 1
    if p % 4 == 1:
        label = (1, 0) if square else (0, 1)
    else:
        label = (1,) if square else (3,)
    return QuadFormClass(p, f % p, square, label)


def solve_sum_of_squares(p: int) -> tuple:
    """``(x, y)`` with ``x^2 + y^2 + 1 == 0`` mod ``p``: least ``y``, then least ``x``."""
    _odd_prime(p)
    roots: dict = {}
    for x in range(p):
        roots.setdefault(x * x % p, x)
    for y in range(p):
        target = (-1 - y * y) % p
        if target in roots:
            x = roots[target]
            assert (x * x + y * y + 1) % p == 0
            return x, y
    raise InconsistencyError(f"no solution of x^2 + y^2 + 1 = 0 mod {p}")


def sqrt_minus_one(p: int) -> int | None:
    """``g^((p-1)/4)`` for a primitive root ``g`` when ``p = 1 mod 4``; else None."""
    _odd_prime(p)
    if p % 4 != 1:
        return None
    r = pow(primitive_root(p), (p - 1) // 4, p)
    assert r * r % p == p - 1
    return r


def gauss_sum(p: int, f: int) -> complex:
    """``F(p, f) = p^{-1/2} sum_k exp(2 pi i f k^2 / p)``; the only floating-point value here."""
    _odd_prime(p)
    total = sum(cmath.exp(2j * math.pi * (f * k * k % p) / p) for k in range(1, p + 1))
    return total / math.sqrt(p)


# -- random test inputs ----------------------------------------------------------------

def random_invertible(ring: LaurentRing, n: int, max_degree: int, rng: np.random.Generator,
                      steps: int | None = None) -> PolyMatrix:
    """Random product of elementary, monomial and permutation matrices.

    Factors are drawn until ``steps`` are accepted; any factor that would push an
    exponent of the product outside ``[-max_degree, max_degree]`` is rejected.
    """
    p = ring.p
    steps = steps if steps is not None else 3 * n
    E = PolyMatrix.identity(ring, n)
    accepted = 0
    tries = 0
    while accepted < steps and tries < 50 * steps + 50:
        tries += 1
        kind = rng.integers(0, 6)
        expo = int(rng.integers(-max_degree, max_degree + 1)) if ring.nvars else 0
        mono = ring.monomial((expo,) * ring.nvars, int(rng.integers(1, p)))
        if kind == 0:
            i = int(rng.integers(0, n))
            unit = ring.monomial(((int(rng.integers(-1, 2)),) if ring.nvars else ()), int(rng.integers(1, p)))
            grid = PolyMatrix.identity(ring, n).tolist()
            grid[i][i] = unit
            step = PolyMatrix(ring, grid)
        elif kind == 1 and n > 1:
            i, j = rng.choice(n, size=2, replace=False)
            perm = list(range(n))
            perm[i], perm[j] = perm[j], perm[i]
            step = PolyMatrix(ring, [[1 if perm[c] == r else 0 for c in range(n)] for r in range(n)])
        elif n > 1:
            i, j = rng.choice(n, size=2, replace=False)
            step = elementary(ring, n, int(i) + 1, int(j) + 1, mono)
        else:
            continue
        cand = E @ step
        if cand.max_abs_exponent() > max_degree:
            continue
        E = cand
        accepted += 1
    return E


def scramble(ring: LaurentRing, n: int, max_degree: int, rng: np.random.Generator) -> tuple:
    """``(E, dagger(E) lambda_n E)`` for a random invertible ``E``."""
    E = random_invertible(ring, 2 * n, max_degree, rng)
    return E, E.dagger() @ lambda_form(ring, n) @ E


def form_is_valid(m: PolyMatrix) -> bool:
    return not form_problems(m)
