"""
Witt reduction in one dimension
===============================

Over F_p[x^+-1] every invertible antihermitian form with zero constant
diagonal is congruent to a hyperbolic one.  The reduction returns the
congruence E explicitly so it can be checked independently.
"""

import numpy as np

from cliffqca import (LaurentRing, build_bundle, determinant, exponent_witness, inverse_witness, lambda_form,
                      qca_from_form, witt_reduce_d1, xi_p2)
from cliffqca.witt import scramble

R = LaurentRing(5, ("x",))
rng = np.random.default_rng(7)

# hide lambda_2 behind a random change of basis, then recover it
E0, xi = scramble(R, 2, 2, rng)
print(xi.pretty())
w = witt_reduce_d1(xi)
print("E^dagger Xi E == lambda:", w.E.dagger() @ xi @ w.E == lambda_form(R, 2))
print("det E =", determinant(w.E).pretty())

# any form plus its inverse is hyperbolic
print("qubit form:", inverse_witness(xi_p2()).verified)

# two or four copies of a boundary form cancel, depending on p mod 4
for p, n in ((5, 2), (3, 4)):
    print(f"p={p}: {n} copies hyperbolic ->", exponent_witness(build_bundle(p, 1).xi, n).verified)

# and every such form is the boundary of some QCA one dimension up
q = qca_from_form(xi, "z")
print("reconstructed QCA on", q.matrix.rows // 2, "qudits, axes", q.ring.names)
