"""Symplectic matrices over a Laurent ring and the elementary Clifford gates.

A Pauli operator on ``q`` qudits per site is a column of length ``2q``: the
upper half is the X-part, the lower half the Z-part.  Phases are never
represented.  The commutation data of two Paulis ``u``, ``v`` is the Laurent
polynomial ``u^dagger lambda_q v``; its constant term ``k`` means that moving
``u`` past ``v`` costs the phase ``omega^k`` with ``omega = exp(2 pi i / p)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InconsistencyError, NotSymplecticError, ShapeError
from .ring import LaurentPoly, LaurentRing, PolyMatrix, block, determinant


def lambda_form(ring: LaurentRing, q: int) -> PolyMatrix:
    """``lambda_q = [[0, I_q], [-I_q, 0]]``."""
    eye = PolyMatrix.identity(ring, q)
    zero = PolyMatrix.zeros(ring, q, q)
    if q == 0:
        return zero
    return block([[zero, eye], [-eye, zero]])


def _half(m: PolyMatrix) -> int:
    if not m.is_square():
        raise ShapeError(f"symplectic test needs a square matrix, got {m.shape}")
    if m.rows % 2:
        raise ShapeError(f"symplectic test needs even dimension, got {m.rows}")
    return m.rows // 2


def is_symplectic(m: PolyMatrix) -> bool:
    """Exact test of ``m^dagger lambda_q m == lambda_q``."""
    q = _half(m)
    lam = lambda_form(m.ring, q)
    return m.dagger() @ lam @ m == lam


class SymplecticMatrix:
    """A ``2q x 2q`` matrix verified symplectic at construction."""

    __slots__ = ("matrix", "q")

    def __init__(self, matrix: PolyMatrix, check: bool = True):
        q = _half(matrix)
        if check and not is_symplectic(matrix):
            raise NotSymplecticError("matrix fails Q^dagger lambda Q == lambda")
        self.matrix = matrix
        self.q = q

    @property
    def ring(self) -> LaurentRing:
        return self.matrix.ring

    def __matmul__(self, other: SymplecticMatrix) -> SymplecticMatrix:
        return compose(self, other)

    def __eq__(self, other):
        return isinstance(other, SymplecticMatrix) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"SymplecticMatrix(q={self.q}, over {self.ring})\n{self.matrix.pretty()}"

    def to_json(self) -> dict:
        return {**self.matrix.to_json(), "q": self.q}

    @classmethod
    def from_json(cls, data) -> SymplecticMatrix:
        s = cls(PolyMatrix.from_json(data))
        if "q" in data and int(data["q"]) != s.q:
            raise ShapeError(f"declared q = {data['q']} but matrix has q = {s.q}")
        return s


def compose(a: SymplecticMatrix, b: SymplecticMatrix) -> SymplecticMatrix:
    a.ring.check(b.ring)
    if a.q != b.q:
        raise ShapeError(f"cannot compose q = {a.q} with q = {b.q}")
    return SymplecticMatrix(a.matrix @ b.matrix)


def inverse(a: SymplecticMatrix) -> SymplecticMatrix:
    """``Q^{-1} = -lambda Q^dagger lambda``."""
    lam = lambda_form(a.ring, a.q)
    inv = SymplecticMatrix(-(lam @ a.matrix.dagger() @ lam))
    if inv.matrix @ a.matrix != PolyMatrix.identity(a.ring, 2 * a.q):
        raise InconsistencyError("symplectic inverse failed to verify")
    return inv


def det_class(a: SymplecticMatrix | PolyMatrix) -> LaurentPoly:
    """The monomial ``c`` with ``det Q = c * dagger(c)^{-1} = c^2``."""
    m = a.matrix if isinstance(a, SymplecticMatrix) else a
    det = determinant(m)
    if not det.is_unit():
        raise InconsistencyError(f"determinant {det} of a symplectic matrix is not a monomial")
    ((e, c),) = det.terms.items()
    if c != 1 or any(x % 2 for x in e):
        raise InconsistencyError(f"determinant {det} is not of the form c c^(-dagger)")
    return m.ring.monomial(tuple(x // 2 for x in e))


# -- elementary gates -----------------------------------------------------------

def elementary(ring: LaurentRing, size: int, i: int, j: int, u) -> PolyMatrix:
    """``E_{i,j}(u)``: identity plus ``u`` at (i, j), indices 1-based."""
    if not (1 <= i <= size and 1 <= j <= size):
        raise DomainError(f"index ({i}, {j}) out of range for size {size}")
    grid = PolyMatrix.identity(ring, size).tolist()
    grid[i - 1][j - 1] = grid[i - 1][j - 1] + ring(u)
    return PolyMatrix(ring, grid)


@dataclass(frozen=True)
class Hadamard:
    i: int


@dataclass(frozen=True)
class ControlPhase:
    i: int
    f: LaurentPoly


@dataclass(frozen=True)
class ControlX:
    i: int
    j: int
    a: LaurentPoly


@dataclass(frozen=True)
class ExtraJ:
    i: int
    c: LaurentPoly


ElementaryGate = Hadamard | ControlPhase | ControlX | ExtraJ


def _check_index(i: int, q: int):
    if not 1 <= i <= q:
        raise DomainError(f"qudit index {i} out of range [1, {q}]")


def gate_matrix(g: ElementaryGate, q: int, ring: LaurentRing | None = None) -> SymplecticMatrix:
    """Matrix of an elementary gate on ``q`` qudits per site."""
    if ring is None:
        for attr in ("f", "a", "c"):
            if hasattr(g, attr):
                ring = getattr(g, attr).ring
                break
        else:
            raise DomainError("a ring is required for a Hadamard gate")
    n = 2 * q

    def E(i, j, u):
        return elementary(ring, n, i, j, u)

    if isinstance(g, Hadamard):
        _check_index(g.i, q)
        i = g.i
        m = E(i, i + q, -1) @ E(i + q, i, 1) @ E(i, i + q, -1)
    elif isinstance(g, ControlPhase):
        _check_index(g.i, q)
        f = ring(g.f)
        if f != f.dagger():
            raise DomainError(f"control-phase parameter {f} is not self-conjugate")
        m = E(g.i + q, g.i, f)
    elif isinstance(g, ControlX):
        _check_index(g.i, q)
        _check_index(g.j, q)
        if g.i == g.j:
            raise DomainError("control-X needs two distinct qudits")
        a = ring(g.a)
        m = E(g.i, g.j, a) @ E(g.j + q, g.i + q, -a.dagger())
    elif isinstance(g, ExtraJ):
        _check_index(g.i, q)
        c = ring(g.c)
        if not c.is_unit():
            raise DomainError(f"extra gate parameter {c} is not a unit")
        m = E(g.i, g.i, c - 1) @ E(g.i + q, g.i + q, c.dagger().inverse() - 1)
    else:
        raise TypeError(f"unknown gate {g!r}")
    return SymplecticMatrix(m)


# -- Pauli vectors ----------------------------------------------------------------

def pauli_vector(ring: LaurentRing, x_part, z_part) -> PolyMatrix:
    """Column ``(x_part; z_part)`` of length ``2q``."""
    if len(x_part) != len(z_part):
        raise ShapeError("X and Z parts must have the same length")
    return PolyMatrix.column(ring, list(x_part) + list(z_part))


def pairing(u: PolyMatrix, v: PolyMatrix) -> LaurentPoly:
    """Commutation polynomial ``u^dagger lambda_q v``."""
    if u.cols != 1 or v.cols != 1 or u.rows != v.rows or u.rows % 2:
        raise ShapeError(f"pairing needs two columns of equal even length, got {u.shape}, {v.shape}")
    u.ring.check(v.ring)
    q = u.rows // 2
    r = u.dagger() @ lambda_form(u.ring, q) @ v
    return r[0, 0]


def commutation_exponent(u: PolyMatrix, v: PolyMatrix) -> int:
    """Constant term of :func:`pairing`: the phase exponent of exchanging ``u`` and ``v``."""
    return pairing(u, v).constant_term()
