"""
Topological spin and Gauss sums
===============================

String operators on the boundary of Q_{p,f} braid with spin
exp(2 pi i m / p), m = 1/(4f).  The quadratic form f u^2 behind this is
classified by its square class and by a Gauss sum.
"""

from cliffqca import build_bundle, classify_theta, gauss_sum, solve_sum_of_squares, sqrt_minus_one, topological_spin
from cliffqca.catalog import pair_form_roots, smallest_nonsquare

for p in (3, 5, 7):
    for f in (1, smallest_nonsquare(p)):
        ms = [topological_spin(p, f, n) for n in (1, 2, 3)]
        print(f"p={p} f={f}: m = {ms}   expected {pow(4 * f, -1, p)}")

b = build_bundle(5, 2)
print("sigma_bd =", [e.pretty() for e in b.sigma_bd.vector()])

for p, f in ((5, 1), (5, 2), (7, 1), (7, 3)):
    c = classify_theta(p, f)
    print(f"theta(p={p}, f={f}): square={c.square} group={c.group}  F={gauss_sum(p, f):.6f}")

# a hyperbolic plane needs -1 = u^2 + v^2, which p = 3 mod 4 supplies without sqrt(-1)
for p in (3, 5, 7, 11, 13):
    print(p, "sqrt(-1) =", sqrt_minus_one(p), " u^2+v^2+1=0 at", solve_sum_of_squares(p))

# for p = 3 mod 4 the form f(u^2 + v^2) has no nonzero root
print(pair_form_roots(7, 1), pair_form_roots(5, 1)[:2])
