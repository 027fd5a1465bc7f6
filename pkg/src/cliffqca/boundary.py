"""Boundary algebra of a symplectic matrix along one axis.

Writing ``Q = A + z B`` with ``A, B`` free of ``z``, the columns of ``B`` span
the operators that stick out of a half space; a free basis ``B0`` of their
span carries the antihermitian form ``Xi = dagger(B0) lambda B0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistencyError, NormalizationError, PreconditionError, QuillenSuslinError
from .forms import AntihermitianForm
from .groebner import Caps, DEFAULT_CAPS, ModuleBasis, check_complex_exact, determinantal_is_unit
from .ring import LaurentRing, PolyMatrix, determinant, rank
from .symplectic import SymplecticMatrix, lambda_form


@dataclass(frozen=True)
class BoundarySplit:
    axis: int
    A: PolyMatrix
    B: PolyMatrix

    @property
    def ring(self) -> LaurentRing:
        return self.A.ring

    @property
    def q(self) -> int:
        return self.A.rows // 2

    def identities(self) -> dict:
        """The three structural relations between ``A`` and ``B``."""
        lam = lambda_form(self.ring, self.q)
        A, B = self.A, self.B
        zero = PolyMatrix.zeros(self.ring, A.cols, B.cols)
        return {
            "AdagLB": A.dagger() @ lam @ B == zero,
            "sum": A.dagger() @ lam @ A + B.dagger() @ lam @ B == lam,
            "BLAdag": B @ lam @ A.dagger() == PolyMatrix.zeros(self.ring, B.rows, A.rows),
        }

    def to_json(self) -> dict:
        return {"axis": self.axis, "A": self.A.to_json(), "B": self.B.to_json()}


def split_z(q: SymplecticMatrix | PolyMatrix, axis) -> BoundarySplit:
    """Split ``Q = A + z B``; every entry must have ``z``-degree in {0, 1}."""
    m = q.matrix if isinstance(q, SymplecticMatrix) else q
    ring = m.ring
    ax = ring.index(axis)
    for a in m.entries():
        lo, hi = a.degree_range(ax)
        if lo < 0 or hi > 1:
            raise NormalizationError(
                f"variable {ring.names[ax]} appears with exponent in [{lo}, {hi}]; "
                "compose with a shift and coarse-grain so that only exponents 0 and 1 occur"
            )
    A = m.map(lambda a: a.coefficient_in(ax, 0))
    B = m.map(lambda a: a.coefficient_in(ax, 1))
    sub = ring.drop(ax)
    if m.rows == 0:
        A = PolyMatrix.zeros(sub, 0, 0)
        B = PolyMatrix.zeros(sub, 0, 0)
    split = BoundarySplit(ax, A, B)
    bad = [k for k, ok in split.identities().items() if not ok]
    if bad:
        raise InconsistencyError(f"boundary identities fail: {bad}")
    return split


def _shortcut(b: PolyMatrix, cols: list, r: int) -> PolyMatrix | None:
    """Last ``r`` nonzero columns, accepted when their pairing is invertible."""
    if b.rows % 2 or r == 0 or r % 2:
        return None
    cand = b.submatrix(None, cols[-r:])
    lam = lambda_form(b.ring, b.rows // 2)
    xi = cand.dagger() @ lam @ cand
    if not determinant(xi).is_unit():
        return None
    xi_inv = xi.inverse()
    for j in cols:
        c = b.col(j)
        a = xi_inv @ cand.dagger() @ lam @ c
        if cand @ a != c:
            return None
    return cand


def free_basis(b: PolyMatrix, caps: Caps = DEFAULT_CAPS) -> PolyMatrix:
    """Columns forming a free basis of the column span of ``b``."""
    ring = b.ring
    cols = [j for j in range(b.cols) if not b.col(j).is_zero()]
    if not cols:
        return PolyMatrix.zeros(ring, b.rows, 0)
    r = rank(b)
    # a certified shortcut already proves the span free, so I_r(b) is unit
    cand = _shortcut(b, cols, r)
    if cand is not None:
        return cand
    if not determinantal_is_unit(b, r, caps):
        raise PreconditionError(f"I_{r} of the matrix is not the unit ideal; its column span is not free")
    kept: list = []
    for j in cols:
        c = b.col(j)
        if kept and ModuleBasis(b.submatrix(None, kept), caps).member(c):
            continue
        kept.append(j)
    basis = b.submatrix(None, kept)
    if len(kept) != r or rank(basis) != r:
        raise QuillenSuslinError(
            "constructive Quillen-Suslin is not implemented for this input: "
            f"greedy selection kept {len(kept)} columns for rank {r}"
        )
    return basis


def antihermitian_form(q: SymplecticMatrix | PolyMatrix, axis, caps: Caps = DEFAULT_CAPS) -> AntihermitianForm:
    """``Xi = dagger(B0) lambda B0`` for the split of ``q`` along ``axis``."""
    return boundary_data(q, axis, caps)[2]


def boundary_data(q, axis, caps: Caps = DEFAULT_CAPS) -> tuple:
    """``(split, B0, Xi)`` for the split of ``q`` along ``axis``."""
    split = split_z(q, axis)
    b0 = free_basis(split.B, caps)
    lam = lambda_form(split.ring, split.q)
    xi = AntihermitianForm(b0.dagger() @ lam @ b0)
    return split, b0, xi


def boundary_commutant_check(q: SymplecticMatrix | PolyMatrix, axis, hops: PolyMatrix,
                             caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff ``ker(dagger(B) lambda) == im hops``.

    ``B`` is the ``z``-coefficient of ``Q``; the kernel of the ``z``-coefficient
    of ``dagger(Q) lambda`` is the same module.
    """
    split = split_z(q, axis)
    lam = lambda_form(split.ring, split.q)
    n = split.B.dagger() @ lam
    if hops.cols == 0:
        hops = PolyMatrix.zeros(split.ring, split.B.rows, 1)
    return check_complex_exact(hops, n, caps).verdict

