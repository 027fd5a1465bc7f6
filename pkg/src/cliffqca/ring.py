"""Exact Laurent polynomials over F_p and dense matrices of them.

A :class:`LaurentRing` fixes the prime ``p`` and the variable names.  Elements
(:class:`LaurentPoly`) store a map from integer exponent vectors (negative
entries allowed) to nonzero residues in ``[1, p)``.  :class:`PolyMatrix` is an
immutable row-major grid of such polynomials; it carries the involution
``dagger`` (transpose composed with ``x_j -> 1/x_j``) that underlies every
symplectic and antihermitian condition in this package.

Scalars of F_p are plain Python ints kept in ``[0, p)``.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, InconsistencyError, RingMismatchError, ShapeError

Exponents = tuple  # tuple[int, ...]


def is_prime(n: int) -> bool:
    """Trial-division primality test (adequate for p < 2**31)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def symmetric_residue(c: int, p: int) -> int:
    """Representative of ``c mod p`` in ``(-p/2, p/2]``."""
    c %= p
    return c - p if c > p // 2 else c


@dataclass(frozen=True)
class LaurentRing:
    """Descriptor of F_p[x_1^{+-1}, ..., x_D^{+-1}]."""

    p: int
    names: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise DomainError(f"modulus {self.p!r} is not prime")
        if len(set(self.names)) != len(self.names):
            raise DomainError(f"duplicate variable names in {self.names}")
        for name in self.names:
            if not isinstance(name, str) or not name.isidentifier():
                raise DomainError(f"variable name {name!r} is not an identifier")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __repr__(self):
        return f"LaurentRing(p={self.p}, names={self.names})"

    def __str__(self):
        gens = ",".join(f"{n}^+-1" for n in self.names)
        return f"F_{self.p}[{gens}]"

    def index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < self.nvars:
                raise DomainError(f"variable index {var} out of range for {self}")
            return var
        try:
            return self.names.index(var)
        except ValueError:
            raise DomainError(f"no variable named {var!r} in {self}") from None

    # -- element constructors -------------------------------------------------
    def zero(self) -> LaurentPoly:
        return LaurentPoly._raw(self, {})

    def one(self) -> LaurentPoly:
        return self.const(1)

    def const(self, c: int) -> LaurentPoly:
        c %= self.p
        return LaurentPoly._raw(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> LaurentPoly:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ShapeError(f"exponent vector {exps} has wrong length for {self}")
        coeff %= self.p
        return LaurentPoly._raw(self, {exps: coeff} if coeff else {})

    def gen(self, var) -> LaurentPoly:
        i = self.index(var)
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.nvars)))

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def __call__(self, value, **params) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            self.check(value.ring)
            return value
        if isinstance(value, int):
            return self.const(value)
        if isinstance(value, str):
            return self.parse(value, **params)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def parse(self, text: str, **params) -> LaurentPoly:
        """Parse an arithmetic expression such as ``"x*z/(4*y) - f*x^2"``.

        Division is allowed only by units (nonzero monomials); keyword
        arguments bind extra symbols to ints or polynomials.
        """
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise DomainError(f"cannot parse {text!r}: {exc.msg}") from None
        return _ExprEvaluator(self, params).visit(tree.body)

    # -- ring surgery ---------------------------------------------------------
    def drop(self, var) -> LaurentRing:
        i = self.index(var)
        return LaurentRing(self.p, self.names[:i] + self.names[i + 1:])

    def extend(self, name: str) -> LaurentRing:
        return LaurentRing(self.p, self.names + (name,))

    def fresh_name(self, base: str) -> str:
        name = base
        while name in self.names:
            name += "_"
        return name

    def check(self, other: LaurentRing) -> None:
        if self != other:
            raise RingMismatchError(f"ring mismatch: {self} vs {other}")


class _ExprEvaluator(ast.NodeVisitor):
    def __init__(self, ring: LaurentRing, params: Mapping):
        self.ring = ring
        self.params = params

    def generic_visit(self, node):
        raise DomainError(f"unsupported syntax in polynomial expression: {ast.dump(node)}")

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise DomainError(f"non-integer constant {node.value!r}")
        return self.ring.const(node.value)

    def visit_Name(self, node):
        if node.id in self.params:
            return self.ring(self.params[node.id])
        return self.ring.gen(node.id)

    def visit_UnaryOp(self, node):
        val = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -val
        if isinstance(node.op, ast.UAdd):
            return val
        return self.generic_visit(node)

    def visit_BinOp(self, node):
        if isinstance(node.op, ast.Pow):
            exp = _int_literal(node.right)
            return self.visit(node.left) ** exp
        left, right = self.visit(node.left), self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_unit():
                raise DomainError("division by a non-unit in polynomial expression")
            return left * right.inverse()
        return self.generic_visit(node)


def _int_literal(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand)
    raise DomainError("exponents must be integer literals")


def _add_exps(a: tuple, b: tuple) -> tuple:
    return tuple(i + j for i, j in zip(a, b))


class LaurentPoly:
    """Immutable Laurent polynomial; ``terms`` maps exponent tuples to residues."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: LaurentRing, terms: Mapping | None = None):
        p, n = ring.p, ring.nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ShapeError(f"exponent vector {exps} has wrong length for {ring}")
            c = (clean.get(exps, 0) + c) % p
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.ring = ring
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: LaurentRing, terms: dict) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict:
        """Read-only view (do not mutate) of the exponent -> coefficient map."""
        return self._terms

    def sorted_terms(self) -> list:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        zero = (0,) * self.ring.nvars
        return all(e == zero for e in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_unit(self) -> bool:
        """Units of the Laurent ring are exactly the nonzero monomials."""
        return len(self._terms) == 1

    def leading_exponent(self):
        return max(self._terms) if self._terms else None

    def degree_range(self, var) -> tuple:
        """``(min, max)`` exponent of ``var``; ``(0, 0)`` for the zero polynomial."""
        i = self.ring.index(var)
        if not self._terms:
            return (0, 0)
        es = [e[i] for e in self._terms]
        return (min(es), max(es))

    def min_exponents(self) -> tuple:
        n = self.ring.nvars
        if not self._terms:
            return (0,) * n
        return tuple(min(e[i] for e in self._terms) for i in range(n))

    def span(self) -> int:
        """Width ``max - min`` of the support, summed over variables."""
        n = self.ring.nvars
        if not self._terms:
            return -1
        total = 0
        for i in range(n):
            es = [e[i] for e in self._terms]
            total += max(es) - min(es)
        return total

    def max_abs_exponent(self) -> int:
        return max((abs(x) for e in self._terms for x in e), default=0)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._terms)
        for e, c in other._terms.items():
            c = (out.get(e, 0) + c) % p
            if c:
                out[e] = c
            else:
                del out[e]
        return LaurentPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return LaurentPoly._raw(self.ring, {e: p - c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((eb, cb),) = b.items()
            return LaurentPoly._raw(self.ring, {_add_exps(ea, eb): ca * cb % p for ea, ca in a.items()})
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = _add_exps(ea, eb)
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly._raw(self.ring, {e: c % p for e, c in out.items() if c % p})

    __rmul__ = __mul__

    def scale(self, c: int) -> LaurentPoly:
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return LaurentPoly._raw(self.ring, {e: v * c % p for e, v in self._terms.items()})

    def shift(self, exps: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial ``x^exps``."""
        exps = tuple(exps)
        return LaurentPoly._raw(self.ring, {_add_exps(e, exps): c for e, c in self._terms.items()})

    def inverse(self) -> LaurentPoly:
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of {self.ring}")
        ((e, c),) = self._terms.items()
        return LaurentPoly._raw(self.ring, {tuple(-x for x in e): inv_mod(c, self.ring.p)})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def dagger(self) -> LaurentPoly:
        """The involution ``x_j -> 1/x_j`` (F_p-linear)."""
        return LaurentPoly._raw(self.ring, {tuple(-x for x in e): c for e, c in self._terms.items()})

    bar = dagger

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- structural maps ------------------------------------------------------
    def coefficient_in(self, var, k: int) -> LaurentPoly:
        """Coefficient of ``var^k``, as an element of ``ring.drop(var)``."""
        i = self.ring.index(var)
        sub = self.ring.drop(i)
        terms = {e[:i] + e[i + 1:]: c for e, c in self._terms.items() if e[i] == k}
        return LaurentPoly._raw(sub, terms)

    def embed(self, ring: LaurentRing, positions: Sequence[int] | None = None) -> LaurentPoly:
        """Map into a ring with more variables; ``positions[j]`` is the target index of variable j."""
        if ring.p != self.ring.p:
            raise RingMismatchError(f"cannot embed {self.ring} into {ring}")
        if positions is None:
            positions = [ring.index(n) for n in self.ring.names]
        n = ring.nvars
        out = {}
        for e, c in self._terms.items():
            new = [0] * n
            for j, x in zip(positions, e):
                new[j] = x
            out[tuple(new)] = c
        return LaurentPoly._raw(ring, out)

    def evaluate(self, point: Sequence[int]) -> int:
        """Value at a point of the torus (all coordinates nonzero mod p)."""
        p = self.ring.p
        point = [v % p for v in point]
        if any(v == 0 for v in point):
            raise DomainError("evaluation point must lie in the torus")
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, x in zip(point, e):
                term = term * pow(v, x, p) % p
            total += term
        return total % p

    def normalize(self) -> tuple:
        """Return ``(shift, q)`` with ``self == x^shift * q`` and ``q`` a polynomial
        not divisible by any variable."""
        m = self.min_exponents()
        neg = tuple(-x for x in m)
        return m, self.shift(neg)

    # -- presentation ---------------------------------------------------------
    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return self.pretty()

    def pretty(self) -> str:
        if not self._terms:
            return "0"
        p = self.ring.p
        pieces = []
        for e, c in self.sorted_terms():
            c = symmetric_residue(c, p)
            sign = "-" if c < 0 else "+"
            c = abs(c)
            mono = "*".join(
                n if x == 1 else f"{n}^{x}" for n, x in zip(self.ring.names, e) if x
            )
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list:
        return [{"c": c, "e": list(e)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ring: LaurentRing, data) -> LaurentPoly:
        terms = {}
        for term in data:
            e = tuple(term["e"])
            c = int(term["c"])
            if not 0 < c < ring.p:
                raise DomainError(f"coefficient {c} not in [1, {ring.p})")
            if e in terms:
                raise DomainError(f"duplicate exponent {list(e)}")
            terms[e] = c
        return cls(ring, terms)


def poly_arith(a: LaurentPoly, b: LaurentPoly, which: str) -> LaurentPoly:
    """Exact ``add``/``sub``/``mul``; raises :class:`RingMismatchError` on mixed rings."""
    a.ring.check(b.ring)
    if which == "add":
        return a + b
    if which == "sub":
        return a - b
    if which == "mul":
        return a * b
    raise ValueError(f"unknown operation {which!r}")


# -- exact division -----------------------------------------------------------

def _poly_divexact(a: dict, b: dict, p: int) -> dict | None:
    """Exact division of polynomial term maps (nonnegative exponents) under lex order.

    Returns the quotient, or None when ``b`` does not divide ``a``.
    """
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    lb = max(b)
    inv_lb = inv_mod(b[lb], p)
    rest = dict(a)
    quotient = {}
    while rest:
        la = max(rest)
        delta = tuple(x - y for x, y in zip(la, lb))
        if any(x < 0 for x in delta):
            return None
        c = rest[la] * inv_lb % p
        quotient[delta] = c
        for e, v in b.items():
            t = _add_exps(e, delta)
            nv = (rest.get(t, 0) - c * v) % p
            if nv:
                rest[t] = nv
            else:
                rest.pop(t, None)
    return quotient


def exact_divide(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``a == q * b``; raise ``ArithmeticError`` if none exists."""
    a.ring.check(b.ring)
    if b.is_zero():
        raise ZeroDivisionError("division by zero")
    if a.is_zero():
        return a
    if b.is_unit():
        return a * b.inverse()
    sa, a0 = a.normalize()
    sb, b0 = b.normalize()
    q = _poly_divexact(a0._terms, b0._terms, a.ring.p)
    if q is None:
        raise ArithmeticError(f"{b} does not divide {a}")
    shift = tuple(x - y for x, y in zip(sa, sb))
    return LaurentPoly._raw(a.ring, q).shift(shift)


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    try:
        exact_divide(a, b)
    except ArithmeticError:
        return False
    return True


# -- matrices -----------------------------------------------------------------

class PolyMatrix:
    """Immutable dense matrix of :class:`LaurentPoly` over one ring."""

    __slots__ = ("ring", "rows", "cols", "_e", "_hash")

    def __init__(self, ring: LaurentRing, entries: Iterable[Iterable], rows: int | None = None,
                 cols: int | None = None):
        grid = tuple(tuple(ring(x) for x in row) for row in entries)
        r = len(grid) if rows is None else rows
        c = (len(grid[0]) if grid else 0) if cols is None else cols
        if len(grid) != r and not (r and not grid and c == 0):
            raise ShapeError(f"expected {r} rows, got {len(grid)}")
        if not grid and r:
            grid = tuple(() for _ in range(r))
        for row in grid:
            if len(row) != c:
                raise ShapeError(f"ragged matrix: expected {c} columns, got {len(row)}")
        self.ring = ring
        self.rows = r
        self.cols = c
        self._e = grid
        self._hash = None

    @classmethod
    def _raw(cls, ring, grid, rows, cols) -> PolyMatrix:
        obj = cls.__new__(cls)
        obj.ring, obj._e, obj.rows, obj.cols, obj._hash = ring, grid, rows, cols, None
        return obj

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zeros(cls, ring: LaurentRing, rows: int, cols: int) -> PolyMatrix:
        z = ring.zero()
        return cls._raw(ring, tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, ring: LaurentRing, n: int) -> PolyMatrix:
        z, o = ring.zero(), ring.one()
        return cls._raw(ring, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diag(cls, ring: LaurentRing, values: Sequence) -> PolyMatrix:
        n = len(values)
        z = ring.zero()
        vals = [ring(v) for v in values]
        return cls._raw(ring, tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def column(cls, ring: LaurentRing, values: Sequence) -> PolyMatrix:
        return cls(ring, [[v] for v in values], rows=len(values), cols=1)

    @classmethod
    def parse(cls, ring: LaurentRing, rows: Sequence[Sequence[str]], **params) -> PolyMatrix:
        return cls(ring, [[ring.parse(str(s), **params) for s in row] for row in rows])

    @classmethod
    def from_columns(cls, ring: LaurentRing, columns: Sequence[PolyMatrix], rows: int | None = None) -> PolyMatrix:
        if not columns:
            return cls.zeros(ring, rows or 0, 0)
        return hstack(*columns)

    # -- access -------------------------------------------------------------
    def __getitem__(self, idx):
        i, j = idx
        return self._e[i][j]

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def entries(self) -> Iterator:
        for row in self._e:
            yield from row

    def tolist(self) -> list:
        return [list(row) for row in self._e]

    def row(self, i: int) -> PolyMatrix:
        return PolyMatrix._raw(self.ring, (self._e[i],), 1, self.cols)

    def col(self, j: int) -> PolyMatrix:
        return PolyMatrix._raw(self.ring, tuple((row[j],) for row in self._e), self.rows, 1)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> PolyMatrix:
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        grid = tuple(tuple(self._e[i][j] for j in cols) for i in rows)
        return PolyMatrix._raw(self.ring, grid, len(rows), len(cols))

    def vector(self) -> list:
        """Entries of a single-column matrix."""
        if self.cols != 1:
            raise ShapeError("expected a column vector")
        return [row[0] for row in self._e]

    # -- arithmetic ---------------------------------------------------------
    def _check_same_shape(self, other: PolyMatrix):
        if not isinstance(other, PolyMatrix):
            raise TypeError("expected PolyMatrix")
        self.ring.check(other.ring)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same_shape(other)
        grid = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self._e, other._e))
        return PolyMatrix._raw(self.ring, grid, self.rows, self.cols)

    def __sub__(self, other):
        self._check_same_shape(other)
        grid = tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self._e, other._e))
        return PolyMatrix._raw(self.ring, grid, self.rows, self.cols)

    def __neg__(self):
        return self.map(lambda a: -a)

    def __matmul__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        self.ring.check(other.ring)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero()
        ocols = [tuple(other._e[k][j] for k in range(other.rows)) for j in range(other.cols)]
        grid = []
        for row in self._e:
            out = []
            for col in ocols:
                acc = z
                for a, b in zip(row, col):
                    if a._terms and b._terms:
                        acc = acc + a * b
                out.append(acc)
            grid.append(tuple(out))
        return PolyMatrix._raw(self.ring, tuple(grid), self.rows, other.cols)

    def __mul__(self, scalar):
        s = self.ring(scalar) if isinstance(scalar, (int, LaurentPoly)) else None
        if s is None:
            return NotImplemented
        return self.map(lambda a: a * s)

    __rmul__ = __mul__

    def map(self, fn) -> PolyMatrix:
        grid = tuple(tuple(fn(a) for a in row) for row in self._e)
        ring = grid[0][0].ring if grid and grid[0] else self.ring
        return PolyMatrix._raw(ring, grid, self.rows, self.cols)

    def transpose(self) -> PolyMatrix:
        grid = tuple(tuple(self._e[i][j] for i in range(self.rows)) for j in range(self.cols))
        return PolyMatrix._raw(self.ring, grid, self.cols, self.rows)

    @property
    def T(self) -> PolyMatrix:
        return self.transpose()

    def dagger(self) -> PolyMatrix:
        grid = tuple(tuple(self._e[i][j].dagger() for i in range(self.rows)) for j in range(self.cols))
        return PolyMatrix._raw(self.ring, grid, self.cols, self.rows)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self._e == other._e

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.shape, self._e))
        return self._hash

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.entries())

    def is_square(self) -> bool:
        return self.rows == self.cols

    def change_ring(self, ring: LaurentRing, positions: Sequence[int] | None = None) -> PolyMatrix:
        grid = tuple(tuple(a.embed(ring, positions) for a in row) for row in self._e)
        return PolyMatrix._raw(ring, grid, self.rows, self.cols)

    def max_abs_exponent(self) -> int:
        return max((a.max_abs_exponent() for a in self.entries()), default=0)

    # -- determinants and friends -------------------------------------------
    def determinant(self) -> LaurentPoly:
        return determinant(self)

    def minors(self, k: int) -> list:
        return minors(self, k)

    def rank(self) -> int:
        return rank(self)

    def inverse(self) -> PolyMatrix:
        return inverse(self)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "p": self.ring.p,
            "vars": list(self.ring.names),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[a.to_json() for a in row] for row in self._e],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> PolyMatrix:
        ring = LaurentRing(int(data["p"]), tuple(data["vars"]))
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = data["entries"]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeError("entries do not match the declared rows/cols")
        grid = [[LaurentPoly.from_json(ring, t) for t in row] for row in entries]
        return cls(ring, grid, rows=rows, cols=cols)

    def dumps(self, **extra) -> str:
        return dumps_canonical({**self.to_json(), **extra})

    def pretty(self) -> str:
        cells = [[a.pretty() for a in row] for row in self._e]
        if not cells or not self.cols:
            return f"[{self.rows}x{self.cols} empty]"
        widths = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)]
        lines = ["[ " + " | ".join(c.ljust(w) for c, w in zip(row, widths)) + " ]" for row in cells]
        return "\n".join(lines)

    def __repr__(self):
        return f"PolyMatrix({self.rows}x{self.cols} over {self.ring})\n{self.pretty()}"


def dumps_canonical(obj) -> str:
    """Byte-deterministic JSON text (sorted keys, fixed separators, trailing newline)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def dagger(m):
    """Involution on a polynomial or a matrix."""
    return m.dagger()


def hstack(*ms: PolyMatrix) -> PolyMatrix:
    ring = ms[0].ring
    rows = ms[0].rows
    for m in ms:
        ring.check(m.ring)
        if m.rows != rows:
            raise ShapeError("hstack needs equal row counts")
    grid = tuple(tuple(a for m in ms for a in m._e[i]) for i in range(rows))
    return PolyMatrix._raw(ring, grid, rows, sum(m.cols for m in ms))


def vstack(*ms: PolyMatrix) -> PolyMatrix:
    ring = ms[0].ring
    cols = ms[0].cols
    for m in ms:
        ring.check(m.ring)
        if m.cols != cols:
            raise ShapeError("vstack needs equal column counts")
    grid = tuple(row for m in ms for row in m._e)
    return PolyMatrix._raw(ring, grid, sum(m.rows for m in ms), cols)


def block_diag(*ms: PolyMatrix) -> PolyMatrix:
    ring = ms[0].ring
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    z = ring.zero()
    grid = []
    offset = 0
    for m in ms:
        ring.check(m.ring)
        for row in m._e:
            grid.append((z,) * offset + row + (z,) * (cols - offset - m.cols))
        offset += m.cols
    return PolyMatrix._raw(ring, tuple(grid), rows, cols)


def block(rows_of_blocks: Sequence[Sequence[PolyMatrix]]) -> PolyMatrix:
    return vstack(*[hstack(*r) for r in rows_of_blocks])


def kron_identity(n: int, m: PolyMatrix) -> PolyMatrix:
    """``I_n (x) m``: ``n`` diagonal copies of ``m``."""
    if n == 0:
        return PolyMatrix.zeros(m.ring, 0, 0)
    return block_diag(*([m] * n))


def scalar_kron(s: Sequence[Sequence[int]], m: PolyMatrix) -> PolyMatrix:
    """Kronecker product of an F_p matrix ``s`` with ``m`` (blocks ``s[i][j] * m``)."""
    ring = m.ring
    zero = PolyMatrix.zeros(ring, m.rows, m.cols)
    return block([[m * c if c % ring.p else zero for c in row] for row in s])


# -- determinant / rank ---------------------------------------------------------

def determinant(m: PolyMatrix) -> LaurentPoly:
    """Exact determinant: cofactor expansion up to 4x4, Bareiss elimination above."""
    if not m.is_square():
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return m.ring.one()
    if n <= 4:
        return _laplace([list(r) for r in m._e], m.ring)
    return _bareiss_det(m)


def _laplace(a: list, ring: LaurentRing) -> LaurentPoly:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    total = ring.zero()
    for j in range(n):
        if a[0][j].is_zero():
            continue
        sub = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * _laplace(sub, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def _poly_shift_matrix(m: PolyMatrix) -> tuple:
    """Shift every entry by one common monomial so it lands in the polynomial subring."""
    n = m.ring.nvars
    mins = [0] * n
    for a in m.entries():
        if a._terms:
            for i, x in enumerate(a.min_exponents()):
                mins[i] = min(mins[i], x)
    shift = tuple(-x for x in mins)
    return shift, [[a.shift(shift) for a in row] for row in m._e]


def _bareiss_det(m: PolyMatrix) -> LaurentPoly:
    ring = m.ring
    n = m.rows
    shift, a = _poly_shift_matrix(m)
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
            a[i][k] = ring.zero()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    det = det.shift(tuple(-n * x for x in shift))
    return det if sign == 1 else -det


def rank(m: PolyMatrix) -> int:
    """Rank over the fraction field via fraction-free elimination."""
    ring = m.ring
    if m.rows == 0 or m.cols == 0:
        return 0
    _, a = _poly_shift_matrix(m)
    rows, cols = m.rows, m.cols
    prev = ring.one()
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = exact_divide(a[i][j] * a[r][c] - a[i][c] * a[r][j], prev)
            a[i][c] = ring.zero()
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def iter_minors(m: PolyMatrix, k: int) -> Iterator:
    """``k x k`` minors in lexicographic order of (rows, cols), zeros included."""
    if k == 0:
        yield m.ring.one()
        return
    for rs in combinations(range(m.rows), k):
        for cs in combinations(range(m.cols), k):
            yield determinant(m.submatrix(rs, cs))


def minors(m: PolyMatrix, k: int) -> list:
    """All nonzero ``k x k`` minors (deduplicated, in a deterministic order)."""
    seen = {}
    for d in iter_minors(m, k):
        if not d.is_zero():
            seen.setdefault(d, None)
    return list(seen)


def adjugate(m: PolyMatrix) -> PolyMatrix:
    n = m.rows
    if n == 1:
        return PolyMatrix.identity(m.ring, 1)
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            sub = m.submatrix([r for r in range(n) if r != j], [c for c in range(n) if c != i])
            d = determinant(sub)
            row.append(d if (i + j) % 2 == 0 else -d)
        grid.append(tuple(row))
    return PolyMatrix._raw(m.ring, tuple(grid), n, n)


def inverse(m: PolyMatrix) -> PolyMatrix:
    """Inverse of a matrix whose determinant is a unit (monomial)."""
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    if m.rows == 0:
        return m
    det = determinant(m)
    if not det.is_unit():
        raise ZeroDivisionError(f"matrix is not invertible over {m.ring}: det = {det}")
    inv = adjugate(m) * det.inverse()
    if inv @ m != PolyMatrix.identity(m.ring, m.rows):
        raise InconsistencyError("adjugate inverse failed to verify")
    return inv


# -- coarse-graining ------------------------------------------------------------

def coarse_grain(m: PolyMatrix, axis, n: int, new_name: str | None = None) -> PolyMatrix:
    """Replace ``z = axis`` by its ``n x n`` companion matrix over ``z' = z^n``.

    Every entry becomes an ``n x n`` block (row ``i*n + a``, column ``j*n + b``);
    the fresh variable ``z'`` (default name ``z_n``) takes the place of ``z``.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError("coarse-graining factor must be a positive integer")
    ring = m.ring
    ax = ring.index(axis)
    name = new_name or ring.fresh_name(f"{ring.names[ax]}_{n}")
    names = list(ring.names)
    names[ax] = name
    new_ring = LaurentRing(ring.p, tuple(names))
    z = PolyMatrix.zeros(new_ring, n, n)

    def inflate(a: LaurentPoly) -> list:
        blockm = [[dict() for _ in range(n)] for _ in range(n)]
        for e, c in a._terms.items():
            k = e[ax]
            qn, r = divmod(k, n)
            for j in range(n):
                i = j + r
                extra = qn
                if i >= n:
                    i -= n
                    extra += 1
                ne = e[:ax] + (extra,) + e[ax + 1:]
                cell = blockm[i][j]
                cell[ne] = (cell.get(ne, 0) + c) % ring.p
        return [[LaurentPoly(new_ring, cell) for cell in row] for row in blockm]

    grid = [[None] * (m.cols * n) for _ in range(m.rows * n)]
    for i in range(m.rows):
        for j in range(m.cols):
            b = inflate(m[i, j]) if not m[i, j].is_zero() else z.tolist()
            for a_ in range(n):
                for b_ in range(n):
                    grid[i * n + a_][j * n + b_] = b[a_][b_]
    return PolyMatrix(new_ring, grid, rows=m.rows * n, cols=m.cols * n)
