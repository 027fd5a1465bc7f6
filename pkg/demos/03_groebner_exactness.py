"""
Ideals, Groebner bases and exact sequences
==========================================

Laurent ideals are handled through a saturated polynomial model.  The
same engine answers membership, dimension and exactness questions.
"""

from cliffqca import (Ideal, LaurentRing, PolyMatrix, check_complex_exact, grade, groebner_basis, krull_dimension,
                      module_membership, surface_exactness)
from cliffqca.groebner import Caps

R = LaurentRing(3, ("x", "y"))
x, y = R.gens()

I = Ideal(R, [x - 1, y - 1])
gb = groebner_basis(I)
print("basis:", [g.pretty() for g in gb.basis])
print("x*y - 1 in I:", gb.contains(x * y - 1))
print("x + 1  in I:", gb.contains(x + 1))
print("dim R/I =", krull_dimension(I), " grade I =", grade(I))

# x - 1 and x - 2 cannot vanish together, so the ideal is the whole ring
print("unit ideal:", groebner_basis(Ideal(R, [x - 1, x - 2])).is_unit())

# module membership comes with a certificate that is re-checked term by term
gens = PolyMatrix(R, [[x - 1, 0], [0, y - 1]])
v = PolyMatrix.column(R, [(x - 1) * y, (y - 1) * x])
res = module_membership(gens, v)
print("member:", res.member, " coefficients:", [c.pretty() for c in res.coefficients.vector()])

# a split exact sequence and the surface code boundary
r1 = LaurentRing(3, ("x",))
print(check_complex_exact(PolyMatrix(r1, [[1], [0]]), PolyMatrix(r1, [[0, 1]])).to_json())
print(surface_exactness(3, 1).to_json())

# deleting a single term breaks exactness
print(surface_exactness(3, 1, perturb=True).reasons)

# every Buchberger run has a budget
try:
    surface_exactness(3, 1, caps=Caps(max_basis=1))
except Exception as exc:
    print(type(exc).__name__, exc)
