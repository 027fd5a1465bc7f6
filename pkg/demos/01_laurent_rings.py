"""
Laurent polynomials over a prime field
======================================

Exact arithmetic in F_p[x^+-1, y^+-1], the involution that inverts
every variable, and matrices of such polynomials.
"""

from cliffqca import LaurentRing, PolyMatrix, coarse_grain, determinant

R = LaurentRing(5, ("x", "y"))
x, y = R.gens()

# negative exponents are first class; coefficients live in F_5
a = (x - 1) * (y + x ** -1)
print("a        =", a.pretty())
print("dagger a =", a.dagger().pretty())

# monomials are exactly the units
print("x^2*y is a unit:", (3 * x ** 2 * y).is_unit(), (3 * x ** 2 * y).inverse().pretty())
print("1 + x is a unit:", (1 + x).is_unit())

# the parser accepts the same notation the printer emits
assert R.parse(a.pretty()) == a

# matrices: dagger is transpose followed by the involution
m = PolyMatrix(R, [[x, 1 + y], [0, x ** -1]])
print(m.pretty())
print("det m =", determinant(m).pretty())
print("m @ m^-1 == 1:", m @ m.inverse() == PolyMatrix.identity(R, 2))

# coarse graining along y with period 2: the new variable stands for y^2
cg = coarse_grain(PolyMatrix(R, [[y]]), "y", 2)
print(cg.ring.names)
print(cg.pretty())

# canonical JSON is stable byte for byte
doc = m.dumps()
print(doc)
assert PolyMatrix.from_json(__import__("json").loads(doc)) == m
