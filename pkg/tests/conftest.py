import os
import sys

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from cliffqca.ring import LaurentPoly, LaurentRing, PolyMatrix  # noqa: E402

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def polys(ring: LaurentRing, max_terms: int = 4, max_exp: int = 2):
    """Random Laurent polynomials with small support."""
    exps = st.tuples(*[st.integers(-max_exp, max_exp)] * ring.nvars)
    coeff = st.integers(1, ring.p - 1)
    return st.dictionaries(exps, coeff, max_size=max_terms).map(lambda d: LaurentPoly(ring, d))


def matrices(ring: LaurentRing, rows: int, cols: int, **kw):
    return st.lists(polys(ring, **kw), min_size=rows * cols, max_size=rows * cols).map(
        lambda vals: PolyMatrix(ring, [vals[i * cols:(i + 1) * cols] for i in range(rows)], rows=rows, cols=cols)
    )
