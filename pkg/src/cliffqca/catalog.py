"""Concrete matrices of the nontrivial three-dimensional Clifford QCA.

Every table below is stored as text and parsed over F_p with the unit
``f`` bound as a parameter (``1/4`` and ``1/(4f)`` become modular inverses).  :func:`build_bundle`
re-checks all structural identities, so a typo in any entry fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .boundary import boundary_data
from .errors import DomainError, InconsistencyError
from .forms import AntihermitianForm
from .groebner import Caps, DEFAULT_CAPS, ExactnessCertificate, check_complex_exact
from .ring import LaurentPoly, LaurentRing, PolyMatrix, hstack, inv_mod
from .symplectic import commutation_exponent, is_symplectic, lambda_form, pairing

SIGMA_TORIC = (
    ("y - 1", "0"),
    ("1 - x", "0"),
    ("0", "1/x - 1"),
    ("0", "1/y - 1"),
)

# sigma_QCA = SIGMA_QCA_FIRST + SIGMA_TORIC @ SIGMA_QCA_HOPPING
SIGMA_QCA_FIRST = (
    ("z*f + f", "0"),
    ("0", "z*f + f"),
    ("0", "y*z - y"),
    ("x - x*z", "0"),
)
SIGMA_QCA_HOPPING = (
    ("x*z*f + f", "-f*y - f*z"),
    ("0", "0"),
)
SIGMA_QCA = (
    ("f*y + f*x*z*y + f*z - f*x*z", "-f*y^2 + f*y - f*z*y + f*z"),
    ("-f*z*x^2 - f*x + f*z*x + f", "x*y*f - y*f + x*z*f + f"),
    ("0", "y*z - y"),
    ("x - x*z", "0"),
)

Q_TABLE = (
    ("x*y*z/4 - x*z/4 + z/(4*y) + 1/4", "x*z*y^2/4 + z*y/4 - x*z*y/4 + z/4",
     "f*y + f*x*z*y + f*z - f*x*z", "-f*y^2 + f*y - f*z*y + f*z"),
    ("-z*x^2/4 + z*x/(4*y) + x/4 + 1/(4*y)", "-y*z*x^2/4 + y*z*x/4 + z*x/4 + 1/4",
     "-f*z*x^2 - f*x + f*z*x + f", "x*y*f - y*f + x*z*f + f"),
    ("-x*z*y/(4*f) - y/(4*f) + x*z/(4*f) - 1/(4*f)", "x*y*z/(4*f) - y/(4*f*x)",
     "0", "y*z - y"),
    ("x*y/(4*f) - x*z/(4*f*y)", "-x*z*y/(4*f) + y/(4*f) - x*z/(4*f) - 1/(4*f)",
     "x - x*z", "0"),
)

XI_TABLE = (
    ("f/x - f*x", "x*f + x*y*f - y*f + f"),
    ("-f/x + f/y - f/(x*y) - f", "f*y - f/y"),
)

SIGMA_BD = ("f*x*(y - 1)*y", "-f*(x - 1)*x*y", "(x - 1)*y", "x*(y - 1)")

B_TOP = (
    ("-x*f + x*y*f + f", "f - f*y"),
    ("f*x - f*x^2", "f*x"),
    ("0", "y"),
    ("-x", "0"),
)

H_X = ("x*y/2*y", "x*y/2*(1 - x)", "0", "x*y/2*x/f")
H_Y = ("x*y/2*(y - y^2)", "x*y/2*(x*y - y + 1)", "x*y/2*(-y/f)", "0")

XI_P2 = (
    ("x + 1/x", "1", "0", "(1 + x)*(1 + y)"),
    ("1", "y + 1/y", "(1 + x)*(1 + y)", "0"),
    ("0", "(1 + 1/x)*(1 + 1/y)", "x + 1/x", "1"),
    ("(1 + 1/x)*(1 + 1/y)", "0", "1", "y + 1/y"),
)

# The boundary basis picked by the shortcut (last two columns of the
# z-coefficient of Q) relates to the tabulated form by B0 -> B0 diag(1, x).
XI_BASIS_CHANGE = ("1", "x")

# Sign fixed once so that (p, f, n) = (3, 1, 1) gives 1/(4f); held fixed after.
SPIN_SIGN = 1


@dataclass(frozen=True)
class ExampleBundle:
    p: int
    f: int
    ring3: LaurentRing
    ring2: LaurentRing
    sigma_toric: PolyMatrix
    sigma_qca: PolyMatrix
    Q: PolyMatrix
    xi: PolyMatrix
    sigma_bd: PolyMatrix
    b_top: PolyMatrix
    h_x: PolyMatrix
    h_y: PolyMatrix

    def members(self) -> dict:
        return {
            "sigma_toric": self.sigma_toric,
            "sigma_qca": self.sigma_qca,
            "Q": self.Q,
            "xi": self.xi,
            "sigma_bd": self.sigma_bd,
            "b_top": self.b_top,
            "h_x": self.h_x,
            "h_y": self.h_y,
        }


def _check_pf(p: int, f: int) -> int:
    if p == 2:
        raise DomainError("the odd-prime family needs p odd; use xi_p2() for p = 2")
    if f % p == 0:
        raise DomainError(f"f = {f} is not a unit mod {p}")
    return f % p


def bundle_checks(b: ExampleBundle) -> dict:
    """All structural identities of a bundle, by name."""
    lam = lambda_form(b.ring2, 2)
    zero_col = PolyMatrix.zeros(b.ring2, 2, 1)
    x, y = b.ring2.gens()
    composed = PolyMatrix.parse(b.ring3, SIGMA_QCA_FIRST, f=b.f) + b.sigma_toric @ PolyMatrix.parse(
        b.ring3, SIGMA_QCA_HOPPING, f=b.f)
    b_coeff = b.sigma_qca.map(lambda a: a.coefficient_in("z", 1))
    diag = PolyMatrix.diag(b.ring2, [b.ring2.parse(s) for s in XI_BASIS_CHANGE])
    computed = boundary_data(b.Q, "z")[2].matrix
    return {
        "Q symplectic": is_symplectic(b.Q),
        "sigma_QCA is the right half of Q": b.Q.submatrix(None, [2, 3]) == b.sigma_qca,
        "sigma_QCA composition": composed == b.sigma_qca,
        "B_top is the z-coefficient of sigma_QCA": b_coeff == b.b_top,
        "pairing(sigma_bd, h_x) = x - 1": pairing(b.sigma_bd, b.h_x) == x - 1,
        "pairing(sigma_bd, h_y) = y - 1": pairing(b.sigma_bd, b.h_y) == y - 1,
        "B_top^dag lambda h_x = 0": b.b_top.dagger() @ lam @ b.h_x == zero_col,
        "B_top^dag lambda h_y = 0": b.b_top.dagger() @ lam @ b.h_y == zero_col,
        "Xi antihermitian": AntihermitianForm(b.xi) is not None,
        "det Xi = 4 f^2": AntihermitianForm(b.xi).determinant() == 4 * b.f * b.f % b.p,
        "Xi from Q in the catalog basis": diag.dagger() @ computed @ diag == b.xi,
    }


@lru_cache(maxsize=64)
def build_bundle(p: int, f: int) -> ExampleBundle:
    """Parse and verify every tabulated matrix of the ``(p, f)`` family."""
    f = _check_pf(p, f)
    r3 = LaurentRing(p, ("x", "y", "z"))
    r2 = LaurentRing(p, ("x", "y"))
    b = ExampleBundle(
        p=p,
        f=f,
        ring3=r3,
        ring2=r2,
        sigma_toric=PolyMatrix.parse(r3, SIGMA_TORIC),
        sigma_qca=PolyMatrix.parse(r3, SIGMA_QCA, f=f),
        Q=PolyMatrix.parse(r3, Q_TABLE, f=f),
        xi=PolyMatrix.parse(r2, XI_TABLE, f=f),
        sigma_bd=PolyMatrix.column(r2, [r2.parse(s, f=f) for s in SIGMA_BD]),
        b_top=PolyMatrix.parse(r2, B_TOP, f=f),
        h_x=PolyMatrix.column(r2, [r2.parse(s, f=f) for s in H_X]),
        h_y=PolyMatrix.column(r2, [r2.parse(s, f=f) for s in H_Y]),
    )
    failed = [name for name, ok in bundle_checks(b).items() if not ok]
    if failed:
        raise InconsistencyError(f"catalog identities fail for p={p}, f={f}: {failed}")
    return b


def xi_p2() -> AntihermitianForm:
    """The 4 x 4 qubit boundary form over F_2[x, y]."""
    ring = LaurentRing(2, ("x", "y"))
    return AntihermitianForm(PolyMatrix.parse(ring, XI_P2))


def perturbed_sigma_bd(b: ExampleBundle) -> PolyMatrix:
    """``sigma_bd`` with the lex-first term of its first entry deleted."""
    entries = b.sigma_bd.vector()
    first = entries[0]
    e0 = first.sorted_terms()[0][0]
    entries[0] = LaurentPoly(first.ring, {e: c for e, c in first.terms.items() if e != e0})
    return PolyMatrix.column(b.ring2, entries)


def surface_exactness(p: int, f: int, perturb: bool = False, caps: Caps = DEFAULT_CAPS) -> ExactnessCertificate:
    """Certificate that ``ker((B_top | sigma_bd)^dag lambda) == im sigma_bd``.

    With ``perturb``, the image side uses :func:`perturbed_sigma_bd`.
    """
    b = build_bundle(p, f)
    lam = lambda_form(b.ring2, 2)
    n = hstack(b.b_top, b.sigma_bd).dagger() @ lam
    m = perturbed_sigma_bd(b) if perturb else b.sigma_bd
    return check_complex_exact(m, n, caps)


def strings(p: int, f: int, n: int) -> tuple:
    """Hopping strings ``t1, t2, t3`` ending on the +x, +y and -x axes."""
    if n < 1:
        raise DomainError("string length must be at least 1")
    b = build_bundle(p, f)
    x, y = b.ring2.gens()
    sx = sum((x ** k for k in range(n)), b.ring2.zero())
    sy = sum((y ** k for k in range(n)), b.ring2.zero())
    t1 = b.h_x * sx
    t2 = b.h_y * sy
    t3 = b.h_x * (-(x ** -n) * sx)
    return t1, t2, t3


def spin_from_strings(t1: PolyMatrix, t2: PolyMatrix, t3: PolyMatrix) -> int:
    """Phase exponent of ``t1 t2^dag t3 = theta t3 t2^dag t1``."""
    p = t1.ring.p
    t2d = -t2
    m = commutation_exponent(t1, t2d) + commutation_exponent(t1, t3) + commutation_exponent(t2d, t3)
    return SPIN_SIGN * m % p


def topological_spin(p: int, f: int, n: int) -> int:
    """Spin exponent ``m`` of the surface charge; equals ``1/(4f)`` in F_p."""
    m = spin_from_strings(*strings(p, f, n))
    expected = inv_mod(4 * f, p)
    if m != expected:
        raise InconsistencyError(f"spin {m} differs from 1/(4f) = {expected} at p={p}, f={f}, n={n}")
    return m


def smallest_nonsquare(p: int) -> int:
    """Least quadratic nonresidue mod an odd prime ``p``."""
    for g in range(2, p):
        if pow(g, (p - 1) // 2, p) == p - 1:
            return g
    raise DomainError(f"no nonsquare mod {p}")


def pair_form_roots(p: int, f: int) -> list:
    """All nonzero ``(u, v)`` with ``f (u^2 + v^2) == 0`` mod ``p`` (exhaustive)."""
    return [(u, v) for u in range(p) for v in range(p) if (u or v) and f * (u * u + v * v) % p == 0]
