"""Localizations and Cech quotients of R = Q[x_1..x_n] as concrete D-modules.

A :class:`LocalizedModuleSpec` with denominators f_1..f_m and quotient set Q
describes

    M = R_{f_1...f_m} / sum_{j in Q} R_{f_1...f_j^...f_m}

which covers R itself (m = 0), plain localizations (Q empty), top local
cohomology H^m_{(f)}(R) (Q everything) and its localizations at the remaining
denominators.  Elements are :class:`LocalFraction` values ``g / prod f_j^k_j``.

Write F = f_1...f_m.  An element g/F^k lies in the submodule exactly when g is
in the numerator ideal I_k = (f_j^k : j in Q).  That needs f_Q to be a regular
sequence and every other denominator to be a nonzerodivisor modulo (f_Q);
both are checked when a LocalizedModuleSpec is built.  Normal forms modulo a graded
Groebner basis of I_k then give canonical coordinates on every truncation
window {g/F^k : deg g <= D}: the window is spanned by the standard monomials
of degree <= D.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from gmpy2 import mpq
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .algebra import Monomial, Polynomial, VariableContext, as_rational, differentiate, exact_divide
from .groebner import (
    GREVLEX,
    GroebnerBasis,
    Ideal,
    buchberger,
    colon_is_trivial,
    height,
    standard_monomials,
)


class SpecError(ValueError):
    pass


class WindowError(ValueError):
    """An element or image does not fit the requested truncation window."""


class Intent(str, Enum):
    PLAIN = "plain-localization"
    LOCAL_COHOMOLOGY = "local-cohomology"
    LOCALIZED = "localized-local-cohomology"


@dataclass(frozen=True)
class LocalizedModuleSpec:
    ctx: VariableContext
    denominators: Tuple[Polynomial, ...] = ()
    quotient_set: FrozenSet[int] = frozenset()
    intent: Optional[Intent] = None
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        dens = tuple(self.denominators)
        q = frozenset(self.quotient_set)
        object.__setattr__(self, "denominators", dens)
        object.__setattr__(self, "quotient_set", q)
        m = len(dens)
        if not q <= set(range(m)):
            raise SpecError(f"quotient set {sorted(q)} not within 0..{m - 1}")
        for f in dens:
            if f.ctx != self.ctx:
                raise SpecError(f"denominator {f} not in context {self.ctx.names}")
            if f.is_zero() or f.is_constant():
                raise SpecError(f"denominator {f} must be a non-constant polynomial")
        for a, b in itertools.combinations(dens, 2):
            r = exact_divide(a, b)
            if r is not None and r.is_constant():
                raise SpecError(f"denominators {a} and {b} are associate")
        if not q:
            derived = Intent.PLAIN
        elif len(q) == m:
            derived = Intent.LOCAL_COHOMOLOGY
        else:
            derived = Intent.LOCALIZED
        if self.intent is None:
            object.__setattr__(self, "intent", derived)
        elif Intent(self.intent) != derived:
            raise SpecError(f"intent {self.intent} does not match quotient set {sorted(q)}")
        else:
            object.__setattr__(self, "intent", Intent(self.intent))
        if self.check and q:
            self._check_regular()

    def _check_regular(self):
        fq = [self.denominators[j] for j in sorted(self.quotient_set)]
        I = Ideal(self.ctx, tuple(fq))
        if buchberger(I).is_unit():
            raise SpecError(f"{I} is the unit ideal; the quotient module is zero")
        h = height(I)
        if h != len(fq):
            raise SpecError(
                f"ideal {I} has height {h} but {len(fq)} generators; the Cech quotient "
                f"is not top local cohomology for non complete intersections")
        for j, f in enumerate(self.denominators):
            if j not in self.quotient_set and not colon_is_trivial(I, f):
                raise SpecError(f"{f} is a zero divisor modulo {I}")

    # -- derived data -------------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.denominators)

    @property
    def n(self) -> int:
        return self.ctx.arity

    @property
    def product(self) -> Polynomial:
        out = self.ctx.one()
        for f in self.denominators:
            out = out * f
        return out

    @property
    def product_degree(self) -> int:
        return sum(f.degree() for f in self.denominators)

    def describe(self) -> dict:
        return {
            "variables": list(self.ctx.names),
            "denominators": [str(f) for f in self.denominators],
            "quotient_set": sorted(self.quotient_set),
            "intent": self.intent.value,
        }

    # -- constructors -------------------------------------------------------
    @classmethod
    def polynomial_ring(cls, ctx: VariableContext) -> "LocalizedModuleSpec":
        return cls(ctx)

    @classmethod
    def local_cohomology(cls, gens: Sequence[Polynomial], check=True) -> "LocalizedModuleSpec":
        gens = tuple(gens)
        return cls(gens[0].ctx, gens, frozenset(range(len(gens))), check=check)

    @classmethod
    def localization(cls, gens: Sequence[Polynomial]) -> "LocalizedModuleSpec":
        gens = tuple(gens)
        return cls(gens[0].ctx, gens, frozenset())

    @classmethod
    def localized_local_cohomology(cls, gens: Sequence[Polynomial], extra: Sequence[Polynomial],
                                   check=True) -> "LocalizedModuleSpec":
        gens = tuple(gens) + tuple(extra)
        return cls(gens[0].ctx, gens, frozenset(range(len(gens) - len(extra))), check=check)


# ---------------------------------------------------------------------------
# numerator ideals and powers of F (cached per spec)


@lru_cache(maxsize=256)
def numerator_basis(spec: LocalizedModuleSpec, k: int) -> Optional[GroebnerBasis]:
    """Graded reduced Groebner basis of I_k, or ``None`` when I_k = 0."""
    if not spec.quotient_set:
        return None
    gens = tuple(spec.denominators[j] ** k for j in sorted(spec.quotient_set))
    return buchberger(Ideal(spec.ctx, gens), GREVLEX)


@lru_cache(maxsize=256)
def product_power(spec: LocalizedModuleSpec, e: int) -> Polynomial:
    return spec.product ** e


@lru_cache(maxsize=256)
def _fast_terms(spec: LocalizedModuleSpec, what: str, arg: int = 0):
    """Term lists with mpq coefficients for the assembly loops."""
    if what == "power":
        p = product_power(spec, arg)
    elif what == "product":
        p = spec.product
    else:
        p = differentiate(spec.product, arg)
    return tuple((m, mpq(c)) for m, c in p.items())


class MonomialNormalForms:
    """Memoized normal forms of single monomials modulo a Groebner basis.

    Coefficients are gmpy2 ``mpq`` values, which compare and hash like
    :class:`fractions.Fraction` but are much faster in this inner loop.

    The normal form is linear, so the normal form of a numerator is the sum of
    the cached forms of its monomials.  Each monomial is reduced once by one
    step with the first basis element whose leading monomial divides it; the
    remaining terms are smaller and come from the cache.
    """

    def __init__(self, G: GroebnerBasis):
        self.rules = []
        for g, lead in zip(G.basis, G.leading):
            lc = g.coefficient(lead)
            tail = [(m, -mpq(c) / mpq(lc)) for m, c in g.items() if m != lead]
            self.rules.append((lead, tail))
        self.cache: Dict[Monomial, Dict[Monomial, object]] = {}

    def _rule(self, m: Monomial):
        for lead, tail in self.rules:
            if all(a <= b for a, b in zip(lead, m)):
                return lead, tail
        return None

    def of(self, m: Monomial) -> Dict[Monomial, object]:
        cache = self.cache
        if m in cache:
            return cache[m]
        stack = [m]
        while stack:
            top = stack[-1]
            if top in cache:
                stack.pop()
                continue
            rule = self._rule(top)
            if rule is None:
                cache[top] = {top: 1}
                stack.pop()
                continue
            lead, tail = rule
            shifted = [(tuple(a - b + c for a, b, c in zip(top, lead, u)), c) for u, c in tail]
            missing = [t for t, _ in shifted if t not in cache]
            if missing:
                stack.extend(missing)
                continue
            out: Dict[Monomial, object] = {}
            for t, c in shifted:
                for mm, v in cache[t].items():
                    nv = out.get(mm, 0) + c * v
                    if nv:
                        out[mm] = nv
                    else:
                        out.pop(mm, None)
            cache[top] = out
            stack.pop()
        return cache[m]

    def reduce(self, terms) -> Dict[Monomial, object]:
        out: Dict[Monomial, object] = {}
        for m, c in terms.items():
            for mm, v in self.of(m).items():
                nv = out.get(mm, 0) + c * v
                if nv:
                    out[mm] = nv
                else:
                    out.pop(mm, None)
        return out


@lru_cache(maxsize=16)
def monomial_normal_forms(spec: LocalizedModuleSpec, k: int) -> Optional[MonomialNormalForms]:
    G = numerator_basis(spec, k)
    return None if G is None else MonomialNormalForms(G)


def reduce_numerator(spec: LocalizedModuleSpec, k: int, g) -> Dict[Monomial, object]:
    """Normal form of the numerator ``g`` (a Polynomial or term dict) at level k."""
    terms = g.terms if isinstance(g, Polynomial) else g
    if not terms:
        return {}
    nfs = monomial_normal_forms(spec, k)
    if nfs is None:
        return dict(terms)
    return nfs.reduce(terms)


# ---------------------------------------------------------------------------
# fractions


@dataclass(frozen=True)
class LocalFraction:
    """numerator / prod_j f_j^exponents[j], an element of R_F."""

    numerator: Polynomial
    exponents: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be non-negative")

    @classmethod
    def of(cls, spec: LocalizedModuleSpec, numerator: Polynomial, exponents=None) -> "LocalFraction":
        if exponents is None:
            exponents = (0,) * spec.m
        elif isinstance(exponents, int):
            exponents = (exponents,) * spec.m
        if len(exponents) != spec.m:
            raise ValueError(f"need {spec.m} exponents")
        return cls(numerator, tuple(exponents))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __str__(self):
        dens = [f"f{j + 1}^{k}" if k > 1 else f"f{j + 1}"
                for j, k in enumerate(self.exponents) if k]
        if not dens:
            return f"({self.numerator})"
        return f"({self.numerator})/({'*'.join(dens)})"


def normalize(u: LocalFraction, spec: LocalizedModuleSpec) -> LocalFraction:
    """Cancel every f_j that divides the numerator while its exponent is positive."""
    if len(u.exponents) != spec.m:
        raise ValueError("exponent vector length does not match the number of denominators")
    if u.numerator.is_zero():
        return LocalFraction(u.numerator, (0,) * spec.m)
    num = u.numerator
    exps = list(u.exponents)
    for j, f in enumerate(spec.denominators):
        while exps[j] > 0:
            q = exact_divide(num, f)
            if q is None:
                break
            num = q
            exps[j] -= 1
    return LocalFraction(num, tuple(exps))


def lift(u: LocalFraction, spec: LocalizedModuleSpec, k: int) -> Polynomial:
    """Numerator of ``u`` over the common denominator F^k."""
    if any(e > k for e in u.exponents):
        raise WindowError(f"exponents {u.exponents} exceed level {k}")
    out = u.numerator
    for f, e in zip(spec.denominators, u.exponents):
        if k > e:
            out = out * f ** (k - e)
    return out


def level(u: LocalFraction) -> int:
    return max(u.exponents, default=0)


def same_in_localization(u: LocalFraction, v: LocalFraction, spec: LocalizedModuleSpec) -> bool:
    k = max(level(u), level(v))
    return lift(u, spec, k) == lift(v, spec, k)


def add(u: LocalFraction, v: LocalFraction, spec: LocalizedModuleSpec) -> LocalFraction:
    k = tuple(max(a, b) for a, b in zip(u.exponents, v.exponents))
    nu, nv = u.numerator, v.numerator
    for f, a, b, c in zip(spec.denominators, u.exponents, v.exponents, k):
        if c > a:
            nu = nu * f ** (c - a)
        if c > b:
            nv = nv * f ** (c - b)
    return normalize(LocalFraction(nu + nv, k), spec)


def scale(p: Polynomial, u: LocalFraction, spec: LocalizedModuleSpec) -> LocalFraction:
    return normalize(LocalFraction(p * u.numerator, u.exponents), spec)


def in_submodule(u: LocalFraction, spec: LocalizedModuleSpec) -> bool:
    """True when ``u`` is zero in the quotient module."""
    if u.is_zero():
        return True
    if spec.m == 0 or not spec.quotient_set:
        return False
    k = level(u)
    return not reduce_numerator(spec, k, lift(u, spec, k))


def same_in_module(u: LocalFraction, v: LocalFraction, spec: LocalizedModuleSpec) -> bool:
    return in_submodule(add(u, scale(spec.ctx.constant(-1), v, spec), spec), spec)


def apply_partial(u: LocalFraction, i: int, spec: LocalizedModuleSpec) -> LocalFraction:
    """d/dx_i by the quotient rule over the common denominator F^(K+1)."""
    if not 0 <= i < spec.n:
        raise IndexError(f"variable index {i} out of range")
    if u.is_zero():
        return u
    K = level(u)
    if K == 0:
        return LocalFraction(differentiate(u.numerator, i), (0,) * spec.m)
    g = lift(u, spec, K)
    F = spec.product
    num = differentiate(g, i) * F - g * differentiate(F, i) * K
    return normalize(LocalFraction(num, (K + 1,) * spec.m), spec)


# ---------------------------------------------------------------------------
# truncation windows


@dataclass(frozen=True, order=True)
class TruncationWindow:
    """Span of {g / F^k : deg g <= D}."""

    k: int
    D: int

    def __post_init__(self):
        if self.k < 0 or self.D < 0:
            raise ValueError("window parameters must be non-negative")

    def __str__(self):
        return f"(k={self.k}, D={self.D})"


def image_window(spec: LocalizedModuleSpec, W: TruncationWindow) -> TruncationWindow:
    """Smallest window guaranteed to contain every d/dx_i of ``W``."""
    if spec.m == 0:
        return TruncationWindow(W.k, W.D)
    return TruncationWindow(W.k + 1, W.D + spec.product_degree - 1)


def contains_window(spec: LocalizedModuleSpec, small: TruncationWindow,
                    big: TruncationWindow) -> bool:
    if spec.m == 0:
        return small.D <= big.D
    return big.k >= small.k and big.D - small.D >= (big.k - small.k) * spec.product_degree


class WindowBasis:
    """Ordered basis {x^a / F^k} of a quotient window and its coordinate map."""

    def __init__(self, spec: LocalizedModuleSpec, window: TruncationWindow):
        self.spec = spec
        self.window = window
        k, D = window.k, window.D
        n = spec.n
        if spec.m == 0 or not spec.quotient_set:
            monos = standard_monomials([], n, D)
        elif k == 0:
            monos = []
        else:
            G = numerator_basis(spec, k)
            monos = [] if G.is_unit() else standard_monomials(G.leading, n, D)
        monos.sort(key=GREVLEX.key)
        self.monomials: List[Monomial] = monos
        self.index: Dict[Monomial, int] = {m: j for j, m in enumerate(monos)}

    def __len__(self):
        return len(self.monomials)

    @property
    def dim(self) -> int:
        return len(self.monomials)

    @property
    def level(self) -> int:
        return 0 if self.spec.m == 0 else self.window.k

    def element(self, j: int) -> LocalFraction:
        m = self.monomials[j]
        return LocalFraction(self.spec.ctx.monomial(m), (self.level,) * self.spec.m)

    def numerator_coordinates(self, terms) -> Dict[int, object]:
        """Coordinates of g/F^level given the numerator g (Polynomial or dict)."""
        nf = reduce_numerator(self.spec, self.level, terms)
        out = {}
        for m, c in nf.items():
            j = self.index.get(m)
            if j is None:
                raise WindowError(f"monomial {m} falls outside window {self.window}")
            out[j] = c
        return out

    def coordinates(self, u: LocalFraction) -> Dict[int, object]:
        """Projection of ``u`` onto quotient coordinates (sparse dict)."""
        u = normalize(u, self.spec)
        if u.is_zero():
            return {}
        return self.numerator_coordinates(lift(u, self.spec, self.level))

    def vector(self, u: LocalFraction) -> List:
        v = [0] * self.dim
        for j, c in self.coordinates(u).items():
            v[j] = c
        return v


@lru_cache(maxsize=128)
def window_basis(spec: LocalizedModuleSpec, window: TruncationWindow) -> WindowBasis:
    return WindowBasis(spec, window)


def enumerate_basis(spec: LocalizedModuleSpec, window: TruncationWindow) -> WindowBasis:
    return window_basis(spec, window)


# ---------------------------------------------------------------------------
# sparse matrices and Koszul differentials


class SparseMatrix:
    """Column-major sparse matrix with exact rational entries."""

    def __init__(self, nrows: int, ncols: int, cols: List[Dict[int, object]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [dict() for _ in range(ncols)]

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    cols[j][i] = as_rational(v)
        return cls(nrows, ncols, cols)

    def to_dense(self) -> List[List]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = []
        for col in other.cols:
            acc: Dict[int, object] = {}
            for k, v in col.items():
                for i, a in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + a * v
            cols.append({i: c for i, c in acc.items() if c})
        return SparseMatrix(self.nrows, other.ncols, cols)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return SparseMatrix(self.nrows, self.ncols + other.ncols, self.cols + other.cols)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def wedge_indices(n: int, i: int) -> List[Tuple[int, ...]]:
    if i < 0 or i > n:
        return []
    return list(itertools.combinations(range(n), i))


def _partial_numerator(spec: LocalizedModuleSpec, mono: Monomial, k: int, var: int):
    """Numerator over F^(k+1) of d/dx_var (x^mono / F^k)."""
    ctx = spec.ctx
    e = mono[var]
    out: Dict[Monomial, object] = {}
    if spec.m == 0:
        if e:
            out[mono[:var] + (e - 1,) + mono[var + 1:]] = e
        return out
    if e:
        base = mono[:var] + (e - 1,) + mono[var + 1:]
        for fm, fc in _fast_terms(spec, "product"):
            t = tuple(a + b for a, b in zip(fm, base))
            out[t] = out.get(t, 0) + e * fc
    if k:
        for fm, fc in _fast_terms(spec, "partial", var):
            t = tuple(a + b for a, b in zip(fm, mono))
            out[t] = out.get(t, 0) - k * fc
    return {m: c for m, c in out.items() if c}


def _shift_mul(terms: Dict[Monomial, object], poly) -> Dict[Monomial, object]:
    """``terms`` times ``poly`` (a Polynomial or a list of (monomial, coefficient))."""
    if not terms:
        return {}
    items = poly.items() if isinstance(poly, Polynomial) else poly
    out: Dict[Monomial, object] = {}
    for m1, c1 in terms.items():
        for m2, c2 in items:
            t = tuple(a + b for a, b in zip(m1, m2))
            out[t] = out.get(t, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


class PartialImages:
    """Coordinates of d/dx_i applied to each basis element of ``src`` in ``tgt``."""

    def __init__(self, spec: LocalizedModuleSpec, src: TruncationWindow, tgt: TruncationWindow):
        self.spec = spec
        self.src = window_basis(spec, src)
        self.tgt = window_basis(spec, tgt)
        need = image_window(spec, src)
        if spec.m and (tgt.k < need.k):
            raise WindowError(f"target window {tgt} too small for images of {src} (need {need})")
        n = spec.n
        k = self.src.level
        lift_by = (_fast_terms(spec, "power", self.tgt.level - k - 1)
                   if spec.m and self.tgt.level > k + 1 else None)
        self.images: List[List[Dict[int, object]]] = []
        for mono in self.src.monomials:
            row = []
            for var in range(n):
                num = _partial_numerator(spec, mono, k, var)
                if lift_by is not None:
                    num = _shift_mul(num, lift_by)
                row.append(self.tgt.numerator_coordinates(num) if num else {})
            self.images.append(row)


@lru_cache(maxsize=64)
def partial_images(spec: LocalizedModuleSpec, src: TruncationWindow,
                   tgt: TruncationWindow) -> PartialImages:
    return PartialImages(spec, src, tgt)


def koszul_differential(spec: LocalizedModuleSpec, i: int, src: TruncationWindow,
                        tgt: TruncationWindow) -> SparseMatrix:
    """Matrix of d_i : L^i (x) C(src) -> L^(i-1) (x) C(tgt).

    d(e_J (x) u) = sum_r (-1)^r e_{J minus j_r} (x) d/dx_{j_r} u.
    """
    n = spec.n
    if not 1 <= i <= n:
        raise ValueError(f"Koszul degree {i} out of range 1..{n}")
    P = partial_images(spec, src, tgt)
    ns, nt = P.src.dim, P.tgt.dim
    lower = {J: a for a, J in enumerate(wedge_indices(n, i - 1))}
    cols = []
    for J in wedge_indices(n, i):
        faces = [(r, lower[J[:r] + J[r + 1:]], J[r]) for r in range(i)]
        for b in range(ns):
            col: Dict[int, object] = {}
            for r, a, var in faces:
                sign = -1 if r % 2 else 1
                off = a * nt
                for row, c in P.images[b][var].items():
                    col[off + row] = col.get(off + row, 0) + sign * c
            cols.append({r: c for r, c in col.items() if c})
    return SparseMatrix(len(lower) * nt, len(cols), cols)


def inclusion_matrix(spec: LocalizedModuleSpec, small: TruncationWindow,
                     big: TruncationWindow, copies: int = 1) -> SparseMatrix:
    """Embedding C(small) -> C(big), repeated block-diagonally ``copies`` times."""
    S = window_basis(spec, small)
    B = window_basis(spec, big)
    if spec.m and big.k < small.k and S.dim:
        raise WindowError(f"window {small} is not inside {big}")
    lift_by = _fast_terms(spec, "power", B.level - S.level) if spec.m else None
    base = []
    for mono in S.monomials:
        num = {mono: 1}
        if lift_by is not None and B.level > S.level:
            num = _shift_mul(num, lift_by)
        base.append(B.numerator_coordinates(num))
    cols = []
    for c in range(copies):
        off = c * B.dim
        for col in base:
            cols.append({off + r: v for r, v in col.items()})
    return SparseMatrix(copies * B.dim, copies * S.dim, cols)


@dataclass
class KoszulComplex:
    spec: LocalizedModuleSpec
    window: TruncationWindow
    target: TruncationWindow
    differentials: Dict[int, SparseMatrix]

    def chain_dim(self, i: int) -> int:
        from math import comb
        return comb(self.spec.n, i) * window_basis(self.spec, self.window).dim


def assemble_koszul(spec: LocalizedModuleSpec, W: TruncationWindow,
                    W_plus: TruncationWindow) -> KoszulComplex:
    """Koszul differentials d_1..d_n from chains over ``W`` into chains over ``W_plus``."""
    need = image_window(spec, W)
    if spec.m and (W_plus.k < need.k or W_plus.D < need.D):
        raise WindowError(f"window {W_plus} cannot hold the images of {W}; need at least {need}")
    if spec.m == 0 and W_plus.D < W.D:
        raise WindowError(f"window {W_plus} cannot hold the images of {W}")
    return KoszulComplex(spec, W, W_plus,
                         {i: koszul_differential(spec, i, W, W_plus) for i in range(1, spec.n + 1)})
