"""Commutative Groebner bases over Q and the ideal-theoretic tools built on them.

Buchberger's algorithm with the normal selection strategy and the
Gebauer-Moeller installation of both Buchberger criteria.  Everything returned
is a *reduced* basis, so bases can be compared for ideal equality.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    Monomial,
    Polynomial,
    VariableContext,
    as_rational,
    differentiate,
    divide,
    embed,
    restrict,
)


class GroebnerError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.

    A block order compares the first ``split`` variables by grevlex and breaks
    ties by grevlex on the remaining ones, so it eliminates the first block.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split < 0:
            raise ValueError("block split must be non-negative")

    def key(self, m: Monomial) -> Tuple[int, ...]:
        if self.kind == "grevlex":
            return (sum(m),) + tuple(-e for e in reversed(m))
        if self.kind == "lex":
            return m
        a, b = m[: self.split], m[self.split:]
        return ((sum(a),) + tuple(-e for e in reversed(a))
                + (sum(b),) + tuple(-e for e in reversed(b)))

    def is_graded(self) -> bool:
        return self.kind == "grevlex"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def leading_monomial(p: Polynomial, order: MonomialOrder = GREVLEX) -> Monomial:
    if p.is_zero():
        raise ValueError("zero polynomial has no leading monomial")
    return max(p.monomials(), key=order.key)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    """Ideal of ``ctx`` given by generators; an empty tuple is the zero ideal."""

    ctx: VariableContext
    gens: Tuple[Polynomial, ...]

    def __post_init__(self):
        gens = tuple(g for g in self.gens if not g.is_zero())
        for g in gens:
            if g.ctx != self.ctx:
                raise ValueError(f"generator {g} lives in {g.ctx.names}, not {self.ctx.names}")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def of(cls, *gens: Polynomial) -> "Ideal":
        if not gens:
            raise ValueError("need at least one generator to infer the context")
        return cls(gens[0].ctx, tuple(gens))

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Polynomial):
            other = Ideal(self.ctx, (other,))
        if other.ctx != self.ctx:
            raise ValueError("context mismatch")
        return Ideal(self.ctx, self.gens + other.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


@dataclass
class GroebnerBasis:
    ideal: Ideal
    order: MonomialOrder
    basis: List[Polynomial]
    leading: List[Monomial] = field(default_factory=list)

    @property
    def ctx(self) -> VariableContext:
        return self.ideal.ctx

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def contains(self, p: Polynomial) -> bool:
        return ideal_membership(p, self)

    def standard_monomials(self, max_degree: int = None):
        """Monomials outside the initial ideal (all of them when finite)."""
        return standard_monomials(self.leading, self.ctx.arity, max_degree)


# ---------------------------------------------------------------------------
# reduction


def _reduce_dict(terms: Dict[Monomial, object], basis, leads, key, full=True):
    """Reduce ``terms`` modulo monic ``basis`` (list of dicts) with leading ``leads``."""
    work = dict(terms)
    heap = [tuple(-v for v in key(m)) + (m,) for m in work]
    heapq.heapify(heap)
    rem: Dict[Monomial, object] = {}
    while heap:
        m = heapq.heappop(heap)[-1]
        c = work.pop(m, None)
        if c is None:
            continue
        for g, lm in zip(basis, leads):
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, shift))
                    old = work.get(t)
                    if old is None:
                        work[t] = -c * gc
                        heapq.heappush(heap, tuple(-v for v in key(t)) + (t,))
                    else:
                        v = old - c * gc
                        if v:
                            work[t] = v
                        else:
                            del work[t]
                break
        else:
            rem[m] = c
            if not full:
                rem.update(work)
                break
    return {m: as_rational(c) for m, c in rem.items()}


def _monic(terms: Dict[Monomial, object], key):
    lm = max(terms, key=key)
    lc = terms[lm]
    if lc == 1:
        return dict(terms), lm
    inv = Fraction(1) / lc
    return {m: as_rational(c * inv) for m, c in terms.items()}, lm


def _spoly(f, lf, g, lg):
    lcm = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    out: Dict[Monomial, object] = {}
    for m, c in f.items():
        t = tuple(a + b for a, b in zip(m, sf))
        out[t] = out.get(t, 0) + c
    for m, c in g.items():
        t = tuple(a + b for a, b in zip(m, sg))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` (deterministic for fixed input and order)."""
    key = order.key
    ctx = I.ctx
    if not I.gens:
        return GroebnerBasis(I, order, [], [])

    polys: List[Dict[Monomial, object]] = []
    leads: List[Monomial] = []
    active: List[int] = []
    pairs: List[Tuple[int, int]] = []

    def update(h: int):
        nonlocal pairs, active
        lh = leads[h]
        cand = [(g, _lcm(leads[g], lh)) for g in active]
        kept = []
        for idx, (g, l) in enumerate(cand):
            if _coprime(leads[g], lh):
                kept.append((g, l))
                continue
            others = cand[idx + 1:] + kept
            if not any(_divides(l2, l) and l2 != l for _, l2 in others) and \
                    not any(l2 == l for _, l2 in kept):
                kept.append((g, l))
        new_pairs = [(g, h) for g, l in kept if not _coprime(leads[g], lh)]
        survivors = []
        for a, b in pairs:
            lab = _lcm(leads[a], leads[b])
            if (_divides(lh, lab) and _lcm(leads[a], lh) != lab
                    and _lcm(leads[b], lh) != lab):
                continue
            survivors.append((a, b))
        pairs = survivors + new_pairs
        active = [g for g in active if not _divides(lh, leads[g])] + [h]

    for gen in sorted(I.gens, key=lambda p: key(leading_monomial(p, order))):
        red = _reduce_dict(gen.terms, [polys[i] for i in active], [leads[i] for i in active], key)
        if not red:
            continue
        red, lm = _monic(red, key)
        polys.append(red)
        leads.append(lm)
        update(len(polys) - 1)

    while pairs:
        best = min(range(len(pairs)),
                   key=lambda j: key(_lcm(leads[pairs[j][0]], leads[pairs[j][1]])))
        a, b = pairs.pop(best)
        s = _spoly(polys[a], leads[a], polys[b], leads[b])
        if not s:
            continue
        red = _reduce_dict(s, [polys[i] for i in active], [leads[i] for i in active], key)
        if not red:
            continue
        red, lm = _monic(red, key)
        polys.append(red)
        leads.append(lm)
        if not any(lm):
            pairs = []
            active = [len(polys) - 1]
            break
        update(len(polys) - 1)

    # minimal basis, then interreduce
    chosen = []
    for i in active:
        if not any(j != i and _divides(leads[j], leads[i]) and
                   (leads[j] != leads[i] or j < i) for j in active):
            chosen.append(i)
    chosen.sort(key=lambda i: key(leads[i]), reverse=True)
    basis_d = [polys[i] for i in chosen]
    basis_l = [leads[i] for i in chosen]
    reduced = []
    for idx, (p, lm) in enumerate(zip(basis_d, basis_l)):
        others = [q for j, q in enumerate(basis_d) if j != idx]
        olead = [q for j, q in enumerate(basis_l) if j != idx]
        tail = {m: c for m, c in p.items() if m != lm}
        tail = _reduce_dict(tail, others, olead, key) if tail else {}
        tail[lm] = 1
        reduced.append(Polynomial(ctx, tail))
    return GroebnerBasis(I, order, reduced, basis_l)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    if p.ctx != G.ctx:
        raise ValueError(f"context mismatch: {p.ctx.names} vs {G.ctx.names}")
    if not G.basis:
        return p
    terms = _reduce_dict(p.terms, [g.terms for g in G.basis], G.leading, G.order.key)
    return Polynomial(p.ctx, terms, _trusted=True)


def ideal_membership(p: Polynomial, G: GroebnerBasis) -> bool:
    return normal_form(p, G).is_zero()


def same_ideal(I: Ideal, J: Ideal) -> bool:
    if I.ctx != J.ctx:
        return False
    return [str(g) for g in buchberger(I).basis] == [str(g) for g in buchberger(J).basis]


# ---------------------------------------------------------------------------
# elimination and saturation


def eliminate(I: Ideal, drop: Sequence[str]) -> Ideal:
    """I intersected with the subring on the variables not in ``drop``.

    The result lives in the smaller context (dropped names removed).
    """
    drop = list(drop)
    ctx = I.ctx
    for name in drop:
        ctx.index(name)
    keep = [v for v in ctx.names if v not in drop]
    perm_ctx = VariableContext(tuple(drop) + tuple(keep))
    sub_ctx = VariableContext(tuple(keep))
    J = Ideal(perm_ctx, tuple(embed(g, perm_ctx) for g in I.gens))
    G = buchberger(J, MonomialOrder("block", len(drop)))
    gens = []
    for g in G.basis:
        if any(m[i] for m in g.monomials() for i in range(len(drop))):
            continue
        gens.append(restrict(g, sub_ctx))
    return Ideal(sub_ctx, tuple(gens))


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^infinity via the extra-variable trick."""
    ctx = I.ctx
    t = ctx.fresh_name("t")
    big = VariableContext((t,) + ctx.names)
    tv = big.var(0)
    gens = [embed(g, big) for g in I.gens] + [tv * embed(f, big) - 1]
    out = eliminate(Ideal(big, tuple(gens)), [t])
    return Ideal(ctx, tuple(embed(g, ctx) for g in out.gens))


def colon_is_trivial(I: Ideal, f: Polynomial) -> bool:
    """True when ``f`` is a nonzerodivisor modulo ``I``."""
    return same_ideal(saturate(I, f), I)


# ---------------------------------------------------------------------------
# dimension and Hilbert series


def _independent(leads: Sequence[Monomial], subset) -> bool:
    s = set(subset)
    return not any(all((i in s) or e == 0 for i, e in enumerate(m)) for m in leads)


def krull_dimension(I: Ideal) -> int:
    """dim R/I via maximal independent sets of variables modulo in(I)."""
    G = buchberger(I)
    if G.is_unit():
        raise GroebnerError("unit ideal has no Krull dimension")
    n = I.ctx.arity
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            if _independent(G.leading, subset):
                return size
    return 0


def height(I: Ideal) -> int:
    return I.ctx.arity - krull_dimension(I)


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(_divides(o, m) for o in out):
            out.append(m)
    return out


def _padd(a, b, sign=1):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += sign * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def hilbert_numerator(monos: Sequence[Monomial]) -> List[int]:
    """N(t) with HS(R/(monos)) = N(t)/(1-t)^n, as a coefficient list."""
    gens = _minimalize(monos)
    if not gens:
        return [1]
    if any(sum(m) == 0 for m in gens):
        return [0]
    if all(_coprime(a, b) for a, b in itertools.combinations(gens, 2)):
        out = [1]
        for m in gens:
            out = _pmul(out, [1] + [0] * (sum(m) - 1) + [-1])
        return out
    # pivot on the last generator: N(M) = N(M') - t^deg(m) N(M' : m)
    m = gens[-1]
    rest = gens[:-1]
    colon = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
    return _padd(hilbert_numerator(rest),
                 [0] * sum(m) + hilbert_numerator(colon), -1)


def hilbert_data(I: Ideal) -> Tuple[int, int, List[int]]:
    """(d, degree, Q) with HS(R/I) = Q(t)/(1-t)^d and Q(1) = degree != 0.

    ``I`` must be homogeneous and proper.
    """
    if not I.is_homogeneous():
        raise GroebnerError("Hilbert degree needs a homogeneous ideal")
    G = buchberger(I)
    if G.is_unit():
        raise GroebnerError("unit ideal")
    num = hilbert_numerator(G.leading)
    d = I.ctx.arity
    while sum(num) == 0:
        # divide by (1 - t)
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q or [0]
        d -= 1
    return d, sum(num), num


def hilbert_degree(I: Ideal) -> int:
    """Degree of Proj(R/I), the normalized leading coefficient of its Hilbert polynomial."""
    return hilbert_data(I)[1]


def standard_monomials(leads: Sequence[Monomial], n: int, max_degree: int = None):
    """Monomials not divisible by any of ``leads``.

    Without ``max_degree`` the set must be finite (zero-dimensional case).
    """
    out = []
    seen = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for m in frontier:
            if any(_divides(l, m) for l in leads):
                continue
            out.append(m)
            if max_degree is not None and sum(m) >= max_degree:
                continue
            for i in range(n):
                t = m[:i] + (m[i] + 1,) + m[i + 1:]
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
        if max_degree is None and len(out) > 10 ** 6:
            raise GroebnerError("quotient is not finite dimensional")
    return out


def quotient_dimension(I: Ideal) -> int:
    """dim_K R/I for a zero-dimensional ideal."""
    G = buchberger(I)
    if G.is_unit():
        return 0
    if krull_dimension(I) != 0:
        raise GroebnerError("ideal is not zero-dimensional")
    return len(G.standard_monomials())


# ---------------------------------------------------------------------------
# zero-dimensional point counting


def _univariate_ctx():
    return VariableContext(("u",))


def _to_univariate(coeffs: Sequence) -> Polynomial:
    ctx = _univariate_ctx()
    return Polynomial(ctx, {(i,): c for i, c in enumerate(coeffs) if c})


def univariate_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        _, r = divide(a, b)
        a, b = b, r
    if a.is_zero():
        return a
    lc = a.coefficient(leading_monomial(a))
    return a.scale(Fraction(1) / lc)


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p') for a univariate polynomial (characteristic zero)."""
    g = univariate_gcd(p, differentiate(p, 0))
    q, r = divide(p, g)
    assert r.is_zero()
    return q


def minimal_polynomial(G: GroebnerBasis, i: int) -> List:
    """Coefficients (low to high) of the minimal polynomial of x_i modulo ``G``."""
    basis = G.standard_monomials()
    index = {m: j for j, m in enumerate(basis)}
    ctx = G.ctx
    x = ctx.var(i)
    # incremental elimination: rows are reduced vectors with a record of combos
    echelon: List[Tuple[int, Dict[int, Fraction], Dict[int, Fraction]]] = []
    power = ctx.one()
    for deg in range(len(basis) + 1):
        nf = normal_form(power, G)
        vec = {index[m]: Fraction(c) for m, c in nf.items()}
        combo = {deg: Fraction(1)}
        for piv, row, rc in echelon:
            c = vec.get(piv)
            if c:
                for k, v in row.items():
                    nv = vec.get(k, 0) - c * v
                    if nv:
                        vec[k] = nv
                    else:
                        vec.pop(k, None)
                for k, v in rc.items():
                    combo[k] = combo.get(k, 0) - c * v
        if not vec:
            coeffs = [combo.get(j, 0) for j in range(deg + 1)]
            lc = coeffs[-1]
            return [as_rational(c / lc) for c in coeffs]
        piv = min(vec)
        inv = 1 / vec[piv]
        echelon.append((piv, {k: v * inv for k, v in vec.items()},
                        {k: v * inv for k, v in combo.items()}))
        power = normal_form(power * x, G)
    raise GroebnerError("no minimal polynomial found")  # pragma: no cover


def radical_zero_dim(I: Ideal) -> Ideal:
    """Radical of a zero-dimensional ideal (adjoin squarefree minimal polynomials)."""
    G = buchberger(I)
    if G.is_unit():
        return I
    if krull_dimension(I) != 0:
        raise GroebnerError("ideal is not zero-dimensional")
    extra = []
    for i in range(I.ctx.arity):
        mp = _to_univariate(minimal_polynomial(G, i))
        sq = squarefree_part(mp)
        xi = I.ctx.var(i)
        extra.append(sq.substitute([xi]))
    return Ideal(I.ctx, tuple(G.basis) + tuple(extra))


def zero_dim_point_count(I: Ideal) -> int:
    """Number of distinct points of V(I) over the algebraic closure."""
    G = buchberger(I)
    if G.is_unit():
        return 0
    if krull_dimension(I) != 0:
        raise GroebnerError("positive-dimensional ideal: point count undefined")
    return quotient_dimension(radical_zero_dim(I))
