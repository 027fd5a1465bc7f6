import json

import numpy as np
import pytest
from hypothesis import given

from cliffqca import catalog
from cliffqca.boundary import split_z
from cliffqca.errors import DomainError, NotSymplecticError, ShapeError
from cliffqca.ring import LaurentPoly, LaurentRing, PolyMatrix, determinant
from cliffqca.symplectic import (ControlPhase, ControlX, ExtraJ, Hadamard, SymplecticMatrix, commutation_exponent,
                                 compose, det_class, elementary, gate_matrix, inverse, is_symplectic, lambda_form,
                                 pairing, pauli_vector)

from conftest import matrices

R = LaurentRing(5, ("x", "y"))


def test_is_symplectic_examples():
    lam = lambda_form(R, 1)
    assert is_symplectic(lam)
    assert is_symplectic(catalog.build_bundle(3, 1).Q)
    grid = PolyMatrix.identity(R, 2).tolist()
    grid[0][1] = R.gen("x")
    grid[0][0] = R.gen("x")
    assert not is_symplectic(PolyMatrix(R, grid))
    with pytest.raises(ShapeError):
        is_symplectic(PolyMatrix.identity(R, 3))
    with pytest.raises(NotSymplecticError):
        SymplecticMatrix(PolyMatrix(R, grid))


def test_gate_examples():
    h = gate_matrix(Hadamard(1), 1, R).matrix
    assert h == PolyMatrix(R, [[0, -1], [1, 0]])
    x = R.gen("x")
    j = gate_matrix(ExtraJ(1, x), 1).matrix
    assert j == PolyMatrix.diag(R, [x, x])
    assert determinant(j) == x ** 2
    a = R.parse("x + 2*y")
    cx = gate_matrix(ControlX(1, 2, a), 2).matrix
    assert cx == elementary(R, 4, 1, 2, a) @ elementary(R, 4, 4, 3, -a.dagger())


def test_gate_invariant_violations():
    x = R.gen("x")
    with pytest.raises(DomainError):
        gate_matrix(ControlPhase(1, x), 1)
    with pytest.raises(DomainError):
        gate_matrix(ControlX(1, 1, x), 2)
    with pytest.raises(DomainError):
        gate_matrix(ExtraJ(1, 1 + x), 1)
    with pytest.raises(DomainError):
        gate_matrix(Hadamard(3), 2, R)


def _random_gate(rng, q, ring):
    kind = rng.integers(0, 4)
    p = ring.p

    def rpoly(k=2):
        return LaurentPoly(ring, {tuple(int(v) for v in rng.integers(-2, 3, size=ring.nvars)): int(rng.integers(1, p))
                                  for _ in range(k)})
    i = int(rng.integers(1, q + 1))
    if kind == 0:
        return Hadamard(i)
    if kind == 1:
        m = rpoly()
        return ControlPhase(i, m + m.dagger())
    if kind == 2 and q > 1:
        j = int(rng.choice([k for k in range(1, q + 1) if k != i]))
        return ControlX(i, j, rpoly())
    c = ring.monomial(tuple(int(v) for v in rng.integers(-2, 3, size=ring.nvars)), int(rng.integers(1, p)))
    return ExtraJ(i, c)


def random_word(rng, q, ring, length):
    gates = [_random_gate(rng, q, ring) for _ in range(length)]
    m = SymplecticMatrix(PolyMatrix.identity(ring, 2 * q))
    for g in gates:
        m = compose(m, gate_matrix(g, q, ring))
    return gates, m


@pytest.mark.parametrize("seed", range(12))
def test_gates_and_group_laws(seed):
    rng = np.random.default_rng(seed)
    p = int(rng.choice([2, 3, 5, 7]))
    ring = LaurentRing(p, ("x", "y"))
    q = int(rng.integers(1, 4))
    gates, w = random_word(rng, q, ring, int(rng.integers(1, 7)))
    ident = PolyMatrix.identity(ring, 2 * q)
    for g in gates:
        gm = gate_matrix(g, q, ring)
        assert is_symplectic(gm.matrix)
        d = determinant(gm.matrix)
        if isinstance(g, ExtraJ):
            assert d == g.c * g.c.dagger().inverse()
        else:
            assert d == ring.one()
    assert compose(w, inverse(w)).matrix == ident
    assert compose(inverse(w), w).matrix == ident
    _, w2 = random_word(rng, q, ring, 3)
    _, w3 = random_word(rng, q, ring, 3)
    assert compose(compose(w, w2), w3) == compose(w, compose(w2, w3))
    assert inverse(compose(w, w2)) == compose(inverse(w2), inverse(w))
    # det_class exponents add
    e = lambda c: next(iter(c.terms))
    s = tuple(a + b for a, b in zip(e(det_class(w)), e(det_class(w2))))
    assert e(det_class(compose(w, w2))) == s


def test_inverse_examples():
    lam = SymplecticMatrix(lambda_form(R, 1))
    assert inverse(lam).matrix == -lam.matrix
    qm = SymplecticMatrix(catalog.build_bundle(3, 1).Q)
    assert compose(qm, inverse(qm)).matrix == PolyMatrix.identity(qm.ring, 4)


def test_inverse_splits_over_z_inverse():
    b = catalog.build_bundle(3, 1)
    s = split_z(b.Q, "z")
    lam = lambda_form(b.ring3, 2)
    z = b.ring3.gen("z")
    A = s.A.change_ring(b.ring3, [0, 1])
    B = s.B.change_ring(b.ring3, [0, 1])
    expected = -(lam @ (A.dagger() + B.dagger() * z ** -1) @ lam)
    assert inverse(SymplecticMatrix(b.Q)).matrix == expected


def test_det_class_examples():
    assert det_class(lambda_form(R, 2)) == R.one()
    x = R.gen("x")
    assert det_class(gate_matrix(ExtraJ(1, x), 1)) == x
    q = catalog.build_bundle(3, 1).Q
    c = det_class(q)
    assert c * c.dagger().inverse() == determinant(q)


def test_pairing_examples():
    X = pauli_vector(R, [1], [0])
    Z = pauli_vector(R, [0], [1])
    assert pairing(X, Z) == R.one()
    assert commutation_exponent(X, Z) == 1
    b = catalog.build_bundle(3, 1)
    x, y = b.ring2.gens()
    assert pairing(b.sigma_bd, b.h_x) == x - 1


@given(matrices(R, 4, 1), matrices(R, 4, 1))
def test_pairing_antisymmetry(u, v):
    assert pairing(u, v) == -pairing(v, u).dagger()
    assert pairing(u, u).constant_term() == 0


def test_json_has_q_field():
    m = SymplecticMatrix(catalog.build_bundle(3, 1).Q)
    doc = m.to_json()
    assert doc["q"] == 2
    back = SymplecticMatrix.from_json(json.loads(json.dumps(doc)))
    assert back == m
