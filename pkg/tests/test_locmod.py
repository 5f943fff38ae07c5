import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from derham_lc.algebra import VariableContext, differentiate
from derham_lc.derham import exact_rank
from derham_lc.locmod import (
    Intent,
    LocalFraction,
    LocalizedModuleSpec,
    SpecError,
    TruncationWindow,
    WindowError,
    add,
    apply_partial,
    assemble_koszul,
    enumerate_basis,
    image_window,
    in_submodule,
    inclusion_matrix,
    koszul_differential,
    normalize,
    partial_images,
    same_in_localization,
    same_in_module,
    scale,
    window_basis,
)

from conftest import XY, polynomials

x, y = XY.gens()
HYPERBOLA = LocalizedModuleSpec.local_cohomology([x * y + 1])
LINE = LocalizedModuleSpec.local_cohomology([y + x])
PLAIN = LocalizedModuleSpec.localization([x * y + 1])
RING = LocalizedModuleSpec.polynomial_ring(XY)
TWO = LocalizedModuleSpec(XY, (x, y + 1), frozenset({0}))


def frac(spec, num, k):
    return LocalFraction.of(spec, num, k)


def test_intents():
    assert HYPERBOLA.intent is Intent.LOCAL_COHOMOLOGY
    assert PLAIN.intent is Intent.PLAIN
    assert TWO.intent is Intent.LOCALIZED
    assert RING.m == 0


def test_spec_refuses_non_complete_intersection():
    ctx = VariableContext(("x", "y", "z"))
    X, Y, Z = ctx.gens()
    with pytest.raises(SpecError):
        LocalizedModuleSpec.local_cohomology([X * Y, X * Z])


def test_spec_refuses_zero_divisor_and_associates():
    with pytest.raises(SpecError):
        LocalizedModuleSpec.localized_local_cohomology([x * y], [x])
    with pytest.raises(SpecError):
        LocalizedModuleSpec.localization([x, 2 * x])
    with pytest.raises(SpecError):
        LocalizedModuleSpec.local_cohomology([x, 1 - x])


def test_normalize_examples():
    f = x * y + 1
    u = normalize(frac(PLAIN, f * x, 2), PLAIN)
    assert u.numerator == x and u.exponents == (1,)
    v = frac(PLAIN, x, 1)
    assert normalize(v, PLAIN) == v
    w = normalize(frac(PLAIN, f**3, 2), PLAIN)
    assert w.numerator == f and w.exponents == (0,)


def test_apply_partial_examples():
    f = x * y + 1
    u = apply_partial(frac(PLAIN, XY.one(), 1), 1, PLAIN)
    assert same_in_localization(u, frac(PLAIN, -x, 2), PLAIN)
    assert apply_partial(frac(PLAIN, XY.constant(5), 0), 0, PLAIN).is_zero()


def test_apply_partial_quotient_rule_in_z():
    # d/dz (m / z^i) = d/dz(m) / z^i - i m / z^(i+1)
    ctx = VariableContext(("x", "z"))
    X, Z = ctx.gens()
    spec = LocalizedModuleSpec.localization([Z])
    m = X**2 * Z + 3 * X
    for i in range(4):
        lhs = apply_partial(frac(spec, m, i), 1, spec)
        rhs = add(frac(spec, differentiate(m, 1), i), frac(spec, -i * m, i + 1), spec)
        assert same_in_localization(lhs, rhs, spec)


def test_submodule_membership():
    f = x * y + 1
    assert in_submodule(frac(HYPERBOLA, x**3 + 1, 0), HYPERBOLA)
    assert in_submodule(frac(HYPERBOLA, f * x, 1), HYPERBOLA)
    assert not in_submodule(frac(HYPERBOLA, x, 1), HYPERBOLA)
    # x/f and (x + f)/f agree modulo R
    assert same_in_module(frac(HYPERBOLA, x, 1), frac(HYPERBOLA, x + f * y**2, 1), HYPERBOLA)
    assert not in_submodule(frac(PLAIN, XY.one(), 0), PLAIN)


def test_enumerate_basis_examples():
    B = enumerate_basis(HYPERBOLA, TruncationWindow(1, 0))
    assert B.monomials == [(0, 0)]
    assert str(B.element(0)) == "(1)/(f1)"
    B = enumerate_basis(RING, TruncationWindow(0, 2))
    assert sorted(B.monomials) == sorted(m for m in itertools.product(range(3), repeat=2) if sum(m) <= 2)
    assert enumerate_basis(HYPERBOLA, TruncationWindow(0, 7)).dim == 0


def test_enumerate_basis_hand_oracle():
    # (k=1, D=2) for R_f/R with f = xy + 1: numerators of degree <= 2 modulo
    # the multiples of f of degree <= 2, i.e. modulo the span of f itself.
    B = enumerate_basis(HYPERBOLA, TruncationWindow(1, 2))
    assert B.dim == 6 - 1
    assert (1, 1) not in B.monomials


def test_assemble_koszul_one_variable():
    ctx = VariableContext(("x",))
    spec = LocalizedModuleSpec.polynomial_ring(ctx)
    W = TruncationWindow(0, 2)
    K = assemble_koszul(spec, W, W)
    d1 = K.differentials[1].to_dense()
    assert d1 == [[0, 1, 0], [0, 0, 2], [0, 0, 0]]
    assert exact_rank(d1) == 2


def test_assemble_koszul_window_too_small():
    with pytest.raises(WindowError):
        assemble_koszul(HYPERBOLA, TruncationWindow(2, 4), TruncationWindow(2, 4))


def test_matrix_entries_match_apply_partial():
    W = TruncationWindow(2, 4)
    tgt = image_window(HYPERBOLA, W)
    P = partial_images(HYPERBOLA, W, tgt)
    T = window_basis(HYPERBOLA, tgt)
    for b in range(P.src.dim):
        u = P.src.element(b)
        for var in range(2):
            assert P.images[b][var] == T.coordinates(apply_partial(u, var, HYPERBOLA))


def test_inclusion_is_injective_and_consistent():
    small, big = TruncationWindow(2, 4), TruncationWindow(3, 6)
    E = inclusion_matrix(HYPERBOLA, small, big)
    assert exact_rank(E) == window_basis(HYPERBOLA, small).dim
    S, B = window_basis(HYPERBOLA, small), window_basis(HYPERBOLA, big)
    for j in range(S.dim):
        assert E.cols[j] == B.coordinates(S.element(j))


@settings(max_examples=30)
@given(st.sampled_from([RING, HYPERBOLA, LINE, PLAIN, TWO]), st.integers(1, 3), st.integers(0, 5))
def test_d_squared_is_zero(spec, k, D):
    W = TruncationWindow(k, D + (k - 1) * max(spec.product_degree, 0))
    W1 = image_window(spec, W)
    W2 = image_window(spec, W1)
    for i in range(2, spec.n + 1):
        a = koszul_differential(spec, i, W, W1)
        b = koszul_differential(spec, i - 1, W1, W2)
        assert (b @ a).is_zero()


@settings(max_examples=30)
@given(st.sampled_from([HYPERBOLA, LINE, PLAIN, TWO]), st.integers(0, 3), st.integers(0, 6))
def test_basis_dims_monotone(spec, k, D):
    d = window_basis(spec, TruncationWindow(k, D)).dim
    assert window_basis(spec, TruncationWindow(k, D + 1)).dim >= d
    assert window_basis(spec, TruncationWindow(k + 1, D + spec.product_degree)).dim >= d


fractions_strategy = st.tuples(polynomials(XY, max_terms=3, max_exp=2), st.integers(0, 2))
specs_for_fractions = st.sampled_from([PLAIN, HYPERBOLA, TWO])


@settings(max_examples=1000)
@given(specs_for_fractions, fractions_strategy, st.integers(0, 1), st.integers(0, 1))
def test_partials_commute_on_fractions(spec, nk, i, j):
    num, k = nk
    u = frac(spec, num, k)
    a = apply_partial(apply_partial(u, i, spec), j, spec)
    b = apply_partial(apply_partial(u, j, spec), i, spec)
    assert same_in_localization(a, b, spec)


@settings(max_examples=1000)
@given(specs_for_fractions, fractions_strategy, polynomials(XY, max_terms=2, max_exp=2),
       st.integers(0, 1))
def test_leibniz_on_fractions(spec, nk, p, i):
    num, k = nk
    u = frac(spec, num, k)
    lhs = apply_partial(scale(p, u, spec), i, spec)
    rhs = add(scale(differentiate(p, i), u, spec), scale(p, apply_partial(u, i, spec), spec), spec)
    assert same_in_localization(lhs, rhs, spec)


@settings(max_examples=20)
@given(st.integers(0, 4), st.integers(0, 8))
def test_laurent_kernel_is_z_free(k, D):
    # on K[x][z, 1/z] the kernel of d/dz on a window is exactly K[x] there
    ctx = VariableContext(("x", "z"))
    X, Z = ctx.gens()
    spec = LocalizedModuleSpec.localization([Z])
    W = TruncationWindow(k, D)
    P = partial_images(spec, W, image_window(spec, W))
    dz_rank = exact_rank([[P.images[b][1].get(r, 0) for b in range(P.src.dim)]
                          for r in range(P.tgt.dim)]) if P.src.dim else 0
    kernel = P.src.dim - dz_rank
    assert kernel == max(0, D - k + 1)
