"""
From a three dimensional QCA to its boundary form
=================================================

Split Q = A + zB, pick a basis of the image of B and restrict the
symplectic form to it.  The result is an invertible antihermitian
matrix over the two dimensional boundary ring.
"""

from cliffqca import (LaurentRing, PolyMatrix, antihermitian_form, boundary_commutant_check, build_bundle,
                      coarse_grain, split_z)
from cliffqca.ring import hstack
from cliffqca.catalog import XI_BASIS_CHANGE
from cliffqca.errors import NormalizationError

b = build_bundle(3, 1)
print("Q_{3,1} acts on", b.Q.rows // 2, "qutrits per site")

s = split_z(b.Q, "z")
print("boundary identities:", s.identities())

xi = antihermitian_form(b.Q, "z")
print(xi.matrix.pretty())
print("det Xi =", xi.determinant(), "   (4 f^2 mod p)")

# in the basis used by the catalog the form matches the tabulated Xi_{3,1}
d = PolyMatrix.diag(b.ring2, [b.ring2.parse(e) for e in XI_BASIS_CHANGE])
print("matches catalog:", d.dagger() @ xi.matrix @ d == b.xi)

# the hopping operators h_x, h_y span the boundary operators commuting with the bulk
print("commutant check:", boundary_commutant_check(b.Q, "z", hstack(b.h_x, b.h_y)))

# matrices reaching z^2 are refused until coarse grained
R = LaurentRing(3, ("x", "z"))
z = R.gen("z")
wide = PolyMatrix.diag(R, [z ** 2, z ** 2])
try:
    split_z(wide, "z")
except NormalizationError as exc:
    print("refused:", exc)
cg = coarse_grain(wide, "z", 2)
print("after coarse graining:", split_z(cg, "z_2").identities())
