import pytest

from cliffqca import catalog
from cliffqca.boundary import (antihermitian_form, boundary_commutant_check, boundary_data, free_basis, split_z)
from cliffqca.errors import NormalizationError, NotAntihermitianError, PreconditionError
from cliffqca.forms import AntihermitianForm
from cliffqca.groebner import Ideal, is_unit_ideal, module_membership
from cliffqca.ring import LaurentRing, PolyMatrix, coarse_grain, hstack, rank
from cliffqca.symplectic import lambda_form
from cliffqca.witt import qca_from_form

R = LaurentRing(3, ("x", "y", "z"))


def test_split_identity():
    s = split_z(PolyMatrix.identity(R, 4), "z")
    assert s.A == PolyMatrix.identity(s.ring, 4)
    assert s.B.is_zero()
    assert s.ring.names == ("x", "y")
    assert all(s.identities().values())


def test_split_example_matrix():
    b = catalog.build_bundle(3, 1)
    s = split_z(b.Q, "z")
    z = b.ring3.gen("z")
    assert s.A.change_ring(b.ring3, [0, 1]) + s.B.change_ring(b.ring3, [0, 1]) * z == b.Q
    assert s.B.submatrix(None, [2, 3]) == b.b_top
    assert all(s.identities().values())


def test_split_rejects_out_of_range_exponents():
    z = R.gen("z")
    m = PolyMatrix.diag(R, [z ** 2] * 4)
    with pytest.raises(NormalizationError, match="coarse-grain"):
        split_z(m, "z")
    # the prescribed normalization makes it splittable
    cg = coarse_grain(m, "z", 2)
    assert set(split_z(cg, "z_2").identities().values()) == {True}


def test_free_basis_examples():
    r = LaurentRing(3, ("x",))
    x = r.gen("x")
    assert free_basis(PolyMatrix(r, [[1, x], [0, 0]])) == PolyMatrix(r, [[1], [0]])
    b = catalog.build_bundle(3, 1)
    B = split_z(b.Q, "z").B
    b0 = free_basis(B)
    assert b0 == B.submatrix(None, [2, 3])
    for j in range(B.cols):
        assert module_membership(b0, B.col(j)).member
    assert free_basis(PolyMatrix.zeros(r, 2, 2)).shape == (2, 0)


def test_free_basis_requires_unit_determinantal_ideal():
    r = LaurentRing(3, ("x",))
    x = r.gen("x")
    with pytest.raises(PreconditionError):
        free_basis(PolyMatrix(r, [[x - 1, 0], [0, 0]]))


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_antihermitian_form_matches_catalog(p):
    for f in (1, catalog.smallest_nonsquare(p)):
        b = catalog.build_bundle(p, f)
        xi = antihermitian_form(b.Q, "z")
        d = PolyMatrix.diag(b.ring2, [b.ring2.parse(s) for s in catalog.XI_BASIS_CHANGE])
        assert d.dagger() @ xi.matrix @ d == b.xi
        assert xi.determinant() == 4 * f * f % p
        c = xi.det_sqrt()
        assert c * c % p == xi.determinant()


def test_identity_gives_empty_form():
    xi = antihermitian_form(PolyMatrix.identity(R, 4), "z")
    assert xi.dim == 0


def test_qubit_form_through_a_qca():
    xi = catalog.xi_p2()
    q = qca_from_form(xi, "z")
    assert antihermitian_form(q, "z") == xi


def test_form_validation():
    r = LaurentRing(3, ("x",))
    x = r.gen("x")
    with pytest.raises(NotAntihermitianError):
        AntihermitianForm(PolyMatrix(r, [[1, 0], [0, 1]]))
    with pytest.raises(NotAntihermitianError):
        AntihermitianForm(PolyMatrix(r, [[0, x - 1], [1 - x ** -1, 0]]))
    with pytest.raises(NotAntihermitianError):
        AntihermitianForm(PolyMatrix(r, [[x - x ** -1]]))


@pytest.mark.parametrize("n", [2, 3])
def test_coarse_graining_stability(n):
    b = catalog.build_bundle(3, 1)
    xi = antihermitian_form(b.Q, "z")
    cg = coarse_grain(b.Q, "z", n)
    xi_n = antihermitian_form(cg, f"z_{n}")
    assert xi_n.dim == xi.dim
    assert xi_n.determinant() == xi.determinant()


def test_boundary_commutant_check():
    b = catalog.build_bundle(3, 1)
    hops = hstack(b.h_x, b.h_y)
    assert boundary_commutant_check(b.Q, "z", hops)
    assert not boundary_commutant_check(b.Q, "z", PolyMatrix.zeros(b.ring2, 4, 2))


def test_identity_commutant_is_everything():
    # B = 0, so the kernel is the whole module and only a spanning set of hops is exact
    ring = R.drop("z")
    ident = PolyMatrix.identity(R, 4)
    assert boundary_commutant_check(ident, "z", PolyMatrix.identity(ring, 4))
    assert not boundary_commutant_check(ident, "z", PolyMatrix.zeros(ring, 4, 0))


def test_boundary_algebra_ranks_and_ideals():
    b = catalog.build_bundle(5, 2)
    s, b0, xi = boundary_data(b.Q, "z")
    ra, rb = rank(s.A), rank(s.B)
    assert (ra, rb) == (2, 2)
    assert is_unit_ideal(Ideal.determinantal(s.A, ra))
    assert is_unit_ideal(Ideal.determinantal(s.B, rb))
    lam = lambda_form(s.ring, 2)
    assert b0.dagger() @ lam @ b0 == xi.matrix
