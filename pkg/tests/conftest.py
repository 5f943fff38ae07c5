from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from derham_lc.algebra import Polynomial, VariableContext

settings.register_profile("ci", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

XY = VariableContext(("x", "y"))
XYZ = VariableContext(("x", "y", "z"))

coefficients = st.one_of(
    st.integers(-5, 5),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


def polynomials(ctx, max_terms=4, max_exp=3):
    mono = st.tuples(*[st.integers(0, max_exp) for _ in range(ctx.arity)])
    return st.dictionaries(mono, coefficients, max_size=max_terms).map(
        lambda d: Polynomial(ctx, d))


def nonzero_polynomials(ctx, **kw):
    return polynomials(ctx, **kw).filter(lambda p: not p.is_zero())


@pytest.fixture
def xy():
    return XY.gens()


@pytest.fixture
def xyz():
    return XYZ.gens()
