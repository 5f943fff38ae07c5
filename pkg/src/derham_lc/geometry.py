"""Projective closure, degree and points at infinity of affine curves, and
certified generic linear forms."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Polynomial, VariableContext, dehomogenize_poly, homogenize_poly
from .groebner import (
    GREVLEX,
    GroebnerError,
    Ideal,
    buchberger,
    ideal_membership,
    krull_dimension,
    hilbert_degree,
    same_ideal,
    zero_dim_point_count,
)

DEFAULT_HOMOGENIZER = "w"


class GenericityError(RuntimeError):
    """No certified linear form was found within the retry budget."""


def _homogenizer(ctx: VariableContext, z: Optional[str]) -> str:
    if z is None:
        z = ctx.fresh_name(DEFAULT_HOMOGENIZER)
    if z in ctx.names:
        raise ValueError(f"homogenizing variable {z!r} clashes with {ctx.names}")
    return z


def projective_closure(P: Ideal, z: Optional[str] = None) -> Ideal:
    """P* = <f* : f in P>, from a degree-compatible Groebner basis of P."""
    z = _homogenizer(P.ctx, z)
    big = P.ctx.extend(z)
    G = buchberger(P, GREVLEX)
    return Ideal(big, tuple(homogenize_poly(g, z, big) for g in G.basis))


def dehomogenize_ideal(I: Ideal, z: str) -> Ideal:
    small = I.ctx.drop(z)
    return Ideal(small, tuple(dehomogenize_poly(g, z) for g in I.gens))


def _require_curve(P: Ideal):
    try:
        d = krull_dimension(P)
    except GroebnerError as exc:
        raise ValueError(f"{P} is the unit ideal") from exc
    if d != 1:
        raise ValueError(f"expected a curve (dim R/P = 1), got dimension {d}")


def curve_degree(P: Ideal) -> int:
    _require_curve(P)
    return hilbert_degree(projective_closure(P))


def projective_point_count(cone: Ideal) -> int:
    """Distinct points of Proj for a homogeneous ideal with finitely many.

    Chart i is x_i = 1 with x_0 = ... = x_{i-1} = 0, so each point is counted
    on exactly one chart.
    """
    ctx = cone.ctx
    total = 0
    for i in range(ctx.arity):
        gens = list(cone.gens) + [ctx.var(i) - 1] + [ctx.var(j) for j in range(i)]
        total += zero_dim_point_count(Ideal(ctx, tuple(gens)))
    return total


def cone_at_infinity(P: Ideal, z: Optional[str] = None) -> Ideal:
    """P* restricted to the hyperplane z = 0, as a homogeneous ideal in the x's."""
    closure = projective_closure(P, z)
    z = closure.ctx.names[-1]
    ctx = P.ctx
    zero_z = [ctx.var(i) for i in range(ctx.arity)] + [ctx.zero()]
    return Ideal(ctx, tuple(g.substitute(zero_z) for g in closure.gens))


def points_at_infinity(P: Ideal) -> int:
    _require_curve(P)
    return projective_point_count(cone_at_infinity(P))


@dataclass
class Certificate:
    not_in_ideal: bool
    distinct_count: int
    degree: int
    none_at_infinity: bool
    seed: int
    attempts: int = 1

    @property
    def distinct_count_matches(self) -> bool:
        return self.distinct_count == self.degree

    @property
    def accepted(self) -> bool:
        return self.not_in_ideal and self.distinct_count_matches and self.none_at_infinity

    def as_dict(self):
        return {
            "z_not_in_P": self.not_in_ideal,
            "distinct_count": self.distinct_count,
            "degree": self.degree,
            "distinct_count_equals_degree": self.distinct_count_matches,
            "none_at_infinity": self.none_at_infinity,
            "seed": self.seed,
            "attempts": self.attempts,
        }


@dataclass
class GenericLinearForm:
    z: Polynomial
    coefficients: tuple
    certificate: Certificate


@dataclass
class CurveGeometry:
    P: Ideal
    closure: Ideal
    degree: int
    points_at_infinity: int

    def as_dict(self):
        return {
            "ideal": [str(g) for g in self.P.gens],
            "closure": [str(g) for g in self.closure.gens],
            "variables": list(self.closure.ctx.names),
            "degree": self.degree,
            "points_at_infinity": self.points_at_infinity,
        }


def curve_geometry(P: Ideal) -> CurveGeometry:
    _require_curve(P)
    closure = projective_closure(P)
    return CurveGeometry(P, closure, hilbert_degree(closure), points_at_infinity(P))


def certify_linear_form(P: Ideal, z: Polynomial, seed: int = 0, degree: int = None) -> Certificate:
    """Check the two properties a generic hyperplane section must have.

    The affine section V(P, z) must consist of deg(C) distinct points, and the
    hyperplane must miss every point of the curve at infinity.
    """
    if degree is None:
        degree = curve_degree(P)
    if not z.is_homogeneous() or z.degree() != 1:
        raise ValueError(f"{z} is not a linear form")
    G = buchberger(P)
    not_in = not ideal_membership(z, G)
    count = 0
    if not_in:
        try:
            count = zero_dim_point_count(P + z)
        except GroebnerError:
            count = -1  # positive-dimensional section, never generic
    cone = cone_at_infinity(P)
    at_inf = projective_point_count(cone + z)
    return Certificate(not_in, count, degree, at_inf == 0, seed)


def generic_linear_form(P: Ideal, seed: int = 0, bound: int = 10,
                        max_attempts: int = 20) -> GenericLinearForm:
    """Draw seeded random integer linear forms until one is certified generic."""
    _require_curve(P)
    degree = curve_degree(P)
    rng = random.Random(seed)
    ctx = P.ctx
    b = bound
    for attempt in range(1, max_attempts + 1):
        coeffs = [0] * ctx.arity
        while not any(coeffs):
            coeffs = [rng.randint(-b, b) for _ in range(ctx.arity)]
        z = Polynomial(ctx, {tuple(int(i == j) for j in range(ctx.arity)): c
                             for i, c in enumerate(coeffs) if c})
        cert = certify_linear_form(P, z, seed, degree)
        cert.attempts = attempt
        if cert.accepted:
            return GenericLinearForm(z, tuple(coeffs), cert)
        b += bound
    raise GenericityError(
        f"no certified generic linear form for {P} after {max_attempts} attempts "
        f"(seed {seed}); the curve may violate the hypotheses")


def dehomogenization_roundtrip(P: Ideal) -> bool:
    closure = projective_closure(P)
    return same_ideal(dehomogenize_ideal(closure, closure.ctx.names[-1]), P)
