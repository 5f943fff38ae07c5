"""Sparse multivariate polynomials with exact rational coefficients.

Coefficients are kept as Python ``int`` whenever they are integral and as
``fractions.Fraction`` otherwise; both compare equal to the corresponding
rational, so callers never need to care which one they get.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Rational = Union[int, Fraction]
Monomial = Tuple[int, ...]

# Sentinel for deg(0).
NEG_INF = float("-inf")


def as_rational(c) -> Rational:
    """Normalize ``c`` to an ``int`` if integral, else to a ``Fraction``."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not exact")
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _quo(a: Rational, b: Rational) -> Rational:
    if type(a) is int and type(b) is int:
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return as_rational(Fraction(a) / b)


@dataclass(frozen=True)
class VariableContext:
    """Ordered, named variables x_1..x_n of a polynomial ring over Q."""

    names: Tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        for name in names:
            if not name.isidentifier():
                raise ValueError(f"invalid variable name {name!r}")

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def extend(self, name: str) -> "VariableContext":
        if name in self.names:
            raise ValueError(f"variable {name!r} already present")
        return VariableContext(self.names + (name,))

    def drop(self, name: str) -> "VariableContext":
        i = self.index(name)
        return VariableContext(self.names[:i] + self.names[i + 1:])

    def fresh_name(self, base: str = "t") -> str:
        if base not in self.names:
            return base
        i = 0
        while f"{base}{i}" in self.names:
            i += 1
        return f"{base}{i}"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.arity: c})

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        if not 0 <= i < self.arity:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.arity
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.arity))

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): c})


def _display_key(m: Monomial):
    # graded lex, descending when sorted with reverse=True
    return (sum(m), m)


class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to rationals."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: VariableContext, terms: Mapping[Monomial, object] = None,
                 _trusted: bool = False):
        self.ctx = ctx
        if _trusted:
            self._terms = terms
        else:
            clean: Dict[Monomial, Rational] = {}
            n = ctx.arity
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != n:
                    raise ValueError(f"monomial {m} has wrong arity for {ctx.names}")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = as_rational(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
            self._terms = clean
        self._hash = None

    # -- basic access -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Rational]:
        return self._terms

    def items(self):
        return self._terms.items()

    def monomials(self):
        return self._terms.keys()

    def coefficient(self, m: Monomial) -> Rational:
        return self._terms.get(tuple(m), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Rational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.ctx.arity, 0)

    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(m) for m in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return NEG_INF
        return max(m[i] for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def variables_used(self) -> set:
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ValueError(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")
            return other
        return self.ctx.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ctx, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return self.ctx.zero()
        return Polynomial(self.ctx, {m: as_rational(v * c) for m, v in self._terms.items()},
                          _trusted=True)

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        c = as_rational(c)
        if not c:
            return self.ctx.zero()
        out = {}
        for m, v in self._terms.items():
            out[tuple(a + b for a, b in zip(m, mono))] = as_rational(v * c)
        return Polynomial(self.ctx, out, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[Monomial, Rational] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ctx, {m: as_rational(c) for m, c in out.items() if c},
                          _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            q = exact_divide(self, c)
            if q is None:
                raise ArithmeticError(f"{c} does not divide {self}")
            return q
        return self.scale(Fraction(1) / as_rational(c))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ctx == other.ctx and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitutions ----------------------------------------
    def diff(self, i: int) -> "Polynomial":
        return differentiate(self, i)

    def evaluate(self, point: Sequence) -> Rational:
        total = 0
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x ** e
            total += v
        return as_rational(total)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map x_i -> images[i]; the images may live in another context."""
        if len(images) != self.ctx.arity:
            raise ValueError("need one image per variable")
        if not self._terms:
            return images[0].ctx.zero() if images else self
        target = images[0].ctx if images else self.ctx
        powers = [dict() for _ in images]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        out = target.zero()
        for m, c in self._terms.items():
            t = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    t = t * pw(i, e)
            out = out + t
        return out

    def content_primitive(self) -> Tuple[Fraction, "Polynomial"]:
        """Return (c, q) with self = c*q and q having coprime integer coefficients."""
        from math import gcd

        if not self._terms:
            return Fraction(0), self
        den = 1
        for c in self._terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        ints = {m: int(c * den) for m, c in self._terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lead = max(ints, key=_display_key)
        if ints[lead] < 0:
            g = -g
        return Fraction(g, den), Polynomial(self.ctx, {m: v // g for m, v in ints.items()},
                                              _trusted=True)

    # -- printing -----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _display_key(t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (name if e == 1 else f"{name}^{e}")
                for name, e in zip(self.ctx.names, m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"Polynomial({self!s} in {','.join(self.ctx.names)})"


def differentiate(p: Polynomial, i: int) -> Polynomial:
    """Partial derivative with respect to the variable at index ``i``."""
    n = p.ctx.arity
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for arity {n}")
    out = {}
    for m, c in p.items():
        e = m[i]
        if e:
            out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
    return Polynomial(p.ctx, out, _trusted=True)


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def divide(p: Polynomial, q: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Multivariate division of ``p`` by the single polynomial ``q`` (grevlex)."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.ctx != q.ctx:
        raise ValueError("context mismatch")
    lq = max(q.monomials(), key=grevlex_key)
    lc = q.coefficient(lq)
    rest = [(m, c) for m, c in q.items() if m != lq]
    work = dict(p.terms)
    quot: Dict[Monomial, Rational] = {}
    rem: Dict[Monomial, Rational] = {}
    while work:
        m = max(work, key=grevlex_key)
        c = work.pop(m)
        if all(a >= b for a, b in zip(m, lq)):
            shift = tuple(a - b for a, b in zip(m, lq))
            f = _quo(c, lc)
            quot[shift] = f
            for mm, cc in rest:
                t = tuple(a + b for a, b in zip(mm, shift))
                v = work.get(t, 0) - f * cc
                if v:
                    work[t] = as_rational(v)
                else:
                    work.pop(t, None)
        else:
            rem[m] = c
    return Polynomial(p.ctx, quot, _trusted=True), Polynomial(p.ctx, rem, _trusted=True)


def exact_divide(p: Polynomial, q: Polynomial):
    """Return ``r`` with ``p == q*r`` or ``None`` when ``q`` does not divide ``p``."""
    quot, rem = divide(p, q)
    return quot if rem.is_zero() else None


def _rational_inverse(A):
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [[as_rational(x) for x in row[n:]] for row in M]


def invert_matrix(A):
    """Exact inverse of a square rational matrix; raises ``ValueError`` if singular."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    return _rational_inverse(A)


def linear_change(p: Polynomial, A) -> Polynomial:
    """Substitute x_i -> sum_j A[i][j] x_j.  ``A`` must be square and invertible."""
    n = p.ctx.arity
    if len(A) != n or any(len(row) != n for row in A):
        raise ValueError(f"matrix must be {n}x{n}")
    invert_matrix(A)  # raises on singular input
    ctx = p.ctx
    images = []
    for row in A:
        images.append(Polynomial(ctx, {tuple(int(i == j) for i in range(n)): a
                                       for j, a in enumerate(row) if a}))
    return p.substitute(images)


def homogenize_poly(p: Polynomial, z: str, ctx: VariableContext = None) -> Polynomial:
    """f* = z^deg(f) f(x/z), living in the context with ``z`` appended."""
    if z in p.ctx.names:
        raise ValueError(f"variable {z!r} already present")
    target = ctx if ctx is not None else p.ctx.extend(z)
    if target.names != p.ctx.names + (z,):
        raise ValueError("target context must append the homogenizing variable")
    if p.is_zero():
        return target.zero()
    d = p.degree()
    return Polynomial(target, {m + (d - sum(m),): c for m, c in p.items()}, _trusted=True)


def dehomogenize_poly(p: Polynomial, z: str) -> Polynomial:
    """Set ``z = 1`` and drop it from the context."""
    i = p.ctx.index(z)
    target = p.ctx.drop(z)
    out: Dict[Monomial, Rational] = {}
    for m, c in p.items():
        mm = m[:i] + m[i + 1:]
        out[mm] = out.get(mm, 0) + c
    return Polynomial(target, out)


def embed(p: Polynomial, ctx: VariableContext) -> Polynomial:
    """Reinterpret ``p`` in a context containing all of its variable names."""
    idx = [ctx.index(name) for name in p.ctx.names]
    out = {}
    for m, c in p.items():
        e = [0] * ctx.arity
        for i, a in zip(idx, m):
            e[i] = a
        out[tuple(e)] = c
    return Polynomial(ctx, out, _trusted=True)


def restrict(p: Polynomial, ctx: VariableContext) -> Polynomial:
    """Inverse of :func:`embed`; fails if ``p`` uses a variable missing from ``ctx``."""
    keep = [p.ctx.index(name) for name in ctx.names]
    dropped = set(range(p.ctx.arity)) - set(keep)
    out = {}
    for m, c in p.items():
        if any(m[i] for i in dropped):
            raise ValueError(f"{p} involves variables outside {ctx.names}")
        out[tuple(m[i] for i in keep)] = c
    return Polynomial(ctx, out, _trusted=True)


def poly_from_dict(ctx: VariableContext, terms: Mapping[Iterable[int], object]) -> Polynomial:
    return Polynomial(ctx, {tuple(m): c for m, c in terms.items()})
