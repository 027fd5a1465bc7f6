"""The antihermitian form type shared by the boundary and Witt modules."""

from __future__ import annotations

from sympy.ntheory import sqrt_mod

from .errors import InconsistencyError, NotAntihermitianError
from .ring import LaurentRing, PolyMatrix, determinant


def _lex_positive(e: tuple) -> bool:
    for x in e:
        if x:
            return x > 0
    return False


class AntihermitianForm:
    """Invertible ``Xi`` with ``Xi == -dagger(Xi)`` and zero constant diagonal."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: PolyMatrix):
        problems = form_problems(matrix)
        if problems:
            raise NotAntihermitianError("; ".join(problems))
        self.matrix = matrix

    @property
    def ring(self) -> LaurentRing:
        return self.matrix.ring

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __eq__(self, other):
        return isinstance(other, AntihermitianForm) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"AntihermitianForm(dim={self.dim}, over {self.ring})\n{self.matrix.pretty()}"

    def determinant(self) -> int:
        """``det Xi``; always a nonzero constant of F_p."""
        d = determinant(self.matrix)
        if not d.is_constant():
            raise InconsistencyError(f"determinant {d} of an antihermitian form is not constant")
        return d.constant_term()

    def det_sqrt(self) -> int:
        """Smallest ``c`` in F_p with ``c**2 == det Xi``."""
        d = self.determinant()
        roots = sqrt_mod(d, self.ring.p, all_roots=True)
        if not roots:
            raise InconsistencyError(f"determinant {d} is not a square mod {self.ring.p}")
        return min(roots)

    def split(self) -> PolyMatrix:
        """A matrix ``M`` with ``Xi == M - dagger(M)``.

        Off-diagonal entries above the diagonal go into ``M``; each diagonal
        entry contributes its terms with lex-positive exponent.
        """
        xi = self.matrix
        ring = xi.ring
        n = xi.rows
        grid = [[ring.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                grid[i][j] = xi[i, j]
            h = xi[i, i]
            grid[i][i] = type(h)(ring, {e: c for e, c in h.terms.items() if _lex_positive(e)})
        m = PolyMatrix(ring, grid, rows=n, cols=n)
        if m - m.dagger() != xi:
            raise InconsistencyError("M-splitting failed to reproduce the form")
        return m

    def to_json(self) -> dict:
        return self.matrix.to_json()

    @classmethod
    def from_json(cls, data) -> AntihermitianForm:
        return cls(PolyMatrix.from_json(data))


def form_problems(matrix: PolyMatrix) -> list:
    """Reasons why ``matrix`` is not a valid antihermitian form (empty if valid)."""
    out = []
    if not matrix.is_square():
        return [f"form must be square, got {matrix.shape}"]
    if matrix.rows % 2:
        out.append(f"form dimension {matrix.rows} is odd")
    if matrix != -matrix.dagger():
        out.append("matrix is not antihermitian")
    for i in range(matrix.rows):
        if matrix[i, i].constant_term():
            out.append(f"diagonal entry {i} has nonzero constant term")
    if not out and not determinant(matrix).is_unit():
        out.append("determinant is not a unit")
    return out
