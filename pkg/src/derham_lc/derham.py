"""De Rham (Koszul) homology of localized modules by nested truncation windows.

For an outer window W the cycles Z_i are computed exactly, because the
differential is evaluated in a window large enough to hold every image.  The
boundaries that land in W are found by pushing chains from enlarged windows
W', W'', ... and intersecting their images with the chains over W.  The
apparent dimension dim Z_i - dim(B_i cap C_i(W)) can only overshoot the true
dim H_i when a boundary needs a preimage outside the probe windows, so every
number carries its window trace.
"""

from __future__ import annotations

import heapq
import logging
import time
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from math import comb, gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .locmod import (
    LocalizedModuleSpec,
    SparseMatrix,
    TruncationWindow,
    contains_window,
    image_window,
    inclusion_matrix,
    koszul_differential,
    window_basis,
)

log = logging.getLogger(__name__)


class StabilizationError(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    """Raised once the wall-clock deadline has passed; the window in progress is dropped."""


# ---------------------------------------------------------------------------
# exact rank


def _integer_rows(A) -> List[Dict[int, int]]:
    """Rows of ``A`` scaled to primitive integer vectors (rank preserving)."""
    if isinstance(A, SparseMatrix):
        rows: List[Dict[int, object]] = [dict() for _ in range(A.nrows)]
        for j, col in enumerate(A.cols):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
    else:
        rows = [{j: v for j, v in enumerate(row) if v} for row in A]
    out = []
    for row in rows:
        if not row:
            continue
        den = 1
        for v in row.values():
            d = int(getattr(v, "denominator", 1))
            if d != 1:
                den = den * d // gcd(den, d)
        r = {j: int(v * den) for j, v in row.items()}
        g = 0
        for v in r.values():
            g = gcd(g, v)
        if g > 1:
            r = {j: v // g for j, v in r.items()}
        out.append(r)
    return out


def sparse_rank(A, deadline: float = None) -> int:
    """Rank over Q by sparse fraction-free elimination.

    Pivots follow a Markowitz-style rule (sparsest column, then sparsest row);
    eliminated rows are divided by their content so entries stay small.
    With a ``deadline`` the elimination is abandoned whole (BudgetExceeded)
    once it passes; nothing partial escapes.
    """
    rows = _integer_rows(A)
    col_rows: Dict[int, set] = {}
    for r, row in enumerate(rows):
        for j in row:
            col_rows.setdefault(j, set()).add(r)
    heap = [(len(s), j) for j, s in col_rows.items()]
    heapq.heapify(heap)
    alive = set(range(len(rows)))
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        s = col_rows.get(c)
        if s is None or len(s) != cnt:
            if s:
                heapq.heappush(heap, (len(s), c))
            continue
        if cnt == 0:
            del col_rows[c]
            continue
        if deadline is not None and rank % 64 == 0 and time.perf_counter() > deadline:
            raise BudgetExceeded("time budget used up during an elimination")
        r = min(s, key=lambda x: (len(rows[x]), x))
        piv = rows[r]
        pv = piv[c]
        for r2 in list(s):
            if r2 == r:
                continue
            row2 = rows[r2]
            a = row2[c]
            g = gcd(pv, a)
            m2, mp = pv // g, a // g
            new = {}
            for j, v in row2.items():
                new[j] = v * m2
            for j, v in piv.items():
                nv = new.get(j, 0) - mp * v
                if nv:
                    new[j] = nv
                else:
                    new.pop(j, None)
            cont = 0
            for v in new.values():
                cont = gcd(cont, v)
                if cont == 1:
                    break
            if cont > 1:
                new = {j: v // cont for j, v in new.items()}
            old_support = row2.keys()
            for j in old_support - new.keys():
                col_rows[j].discard(r2)
                heapq.heappush(heap, (len(col_rows[j]), j))
            for j in new.keys() - old_support:
                col_rows.setdefault(j, set()).add(r2)
                heapq.heappush(heap, (len(col_rows[j]), j))
            rows[r2] = new
            if not new:
                alive.discard(r2)
        for j in piv:
            if j != c:
                col_rows[j].discard(r)
                heapq.heappush(heap, (len(col_rows[j]), j))
        del col_rows[c]
        alive.discard(r)
        rows[r] = {}
        rank += 1
    return rank


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a dense rational matrix by Bareiss fraction-free elimination."""
    M = [[v for v in row] for row in rows]
    if not M or not M[0]:
        return 0
    # clear denominators row by row
    for i, row in enumerate(M):
        den = 1
        for v in row:
            d = int(getattr(v, "denominator", 1))
            if d != 1:
                den = den * d // gcd(den, d)
        M[i] = [int(v * den) for v in row]
    nrows, ncols = len(M), len(M[0])
    prev = 1
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        piv = next((r for r in range(rank, nrows) if M[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for r in range(rank + 1, nrows):
            a = M[r][col]
            M[r] = [(p * M[r][j] - a * M[rank][j]) // prev for j in range(ncols)]
        prev = p
        rank += 1
        col += 1
    return rank


def exact_rank(A, deadline: float = None) -> int:
    """Rank over the rationals of a :class:`SparseMatrix` or dense list of rows."""
    if isinstance(A, SparseMatrix):
        if A.nrows == 0 or A.ncols == 0:
            return 0
        return sparse_rank(A, deadline)
    if not A or not A[0]:
        return 0
    if len(A) * len(A[0]) <= 400:
        return bareiss_rank(A)
    return sparse_rank(A, deadline)


# ---------------------------------------------------------------------------
# schedules and results


@dataclass(frozen=True)
class WindowSchedule:
    """Growing outer windows (k0 + t*dk, D0 + t*dD), t = 0, 1, ..."""

    k0: int = 3
    D0: int = 8
    dk: int = 1
    dD: int = 3
    probe: int = 2
    span: int = 3
    max_windows: int = 8

    def __post_init__(self):
        for name in ("k0", "D0", "dk", "dD", "probe", "span", "max_windows"):
            if getattr(self, name) <= 0:
                raise ValueError(f"schedule parameter {name} must be positive")

    @classmethod
    def parse(cls, text: str, **extra) -> "WindowSchedule":
        parts = [int(p) for p in text.split(",")]
        if len(parts) != 6:
            raise ValueError("schedule must be k0,D0,dk,dD,p,s")
        return cls(*parts, **extra)

    def window(self, t: int) -> TruncationWindow:
        return TruncationWindow(self.k0 + t * self.dk, self.D0 + t * self.dD)

    def adapted(self, spec: LocalizedModuleSpec) -> "WindowSchedule":
        """Raise D0 and dD so the first window holds every constant (D0 >= k0 deg F),
        windows nest, and the slack D - k deg F grows with every window."""
        if spec.m == 0:
            return self
        d = spec.product_degree
        return replace(self, D0=max(self.D0, self.k0 * d), dD=max(self.dD, self.dk * d + 1))

    def as_list(self) -> List[int]:
        return [self.k0, self.D0, self.dk, self.dD, self.probe, self.span]


@dataclass
class WindowRecord:
    window: Tuple[int, int]
    chain_dims: List[int]
    cycles: List[int]
    boundaries: List[int]
    boundaries_previous_probe: List[int]
    dims: List[int]
    probe_exhausted: List[bool]
    seconds: float

    @property
    def reliable(self) -> bool:
        return not any(self.probe_exhausted)


@dataclass
class DeRhamResult:
    n: int
    dims: Optional[List[int]]
    chi: Optional[int]
    chi_c: Optional[int]
    stabilized: bool
    window_trace: List[WindowRecord]
    schedule: WindowSchedule
    status: str = "stabilized"
    spec: Optional[dict] = None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dims": self.dims,
            "chi": self.chi,
            "chi_c": self.chi_c,
            "stabilized": self.stabilized,
            "status": self.status,
            "schedule": self.schedule.as_list(),
            "spec": self.spec,
            "window_trace": [
                {
                    "window": list(r.window),
                    "chain_dims": r.chain_dims,
                    "cycles": r.cycles,
                    "boundaries": r.boundaries,
                    "boundaries_previous_probe": r.boundaries_previous_probe,
                    "dims": r.dims,
                    "probe_exhausted": r.probe_exhausted,
                }
                for r in self.window_trace
            ],
        }


def euler_characteristic(dims: Sequence[int]) -> int:
    return sum((-1) ** i * d for i, d in enumerate(dims))


def chi(result: DeRhamResult) -> int:
    """sum_i (-1)^i dim H_i."""
    if not result.stabilized or result.dims is None:
        raise StabilizationError("Euler characteristic of an unstabilized result")
    return euler_characteristic(result.dims)


def chi_c(result: DeRhamResult) -> int:
    """De Rham cohomology version: (-1)^n chi."""
    return (-1) ** result.n * chi(result)


# ---------------------------------------------------------------------------
# the computation


class HomologyEngine:
    """Caches differential ranks across the overlapping windows of a schedule."""

    def __init__(self, spec: LocalizedModuleSpec, deadline: float = None):
        self.spec = spec
        self.deadline = deadline
        self._rank: Dict[Tuple[int, TruncationWindow], int] = {}

    def rank(self, A) -> int:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise BudgetExceeded("time budget used up between eliminations")
        return exact_rank(A, self.deadline)

    def chain_dim(self, i: int, W: TruncationWindow) -> int:
        return comb(self.spec.n, i) * window_basis(self.spec, W).dim

    def differential_rank(self, i: int, W: TruncationWindow) -> int:
        n = self.spec.n
        if i < 1 or i > n:
            return 0
        key = (i, W)
        if key not in self._rank:
            d = koszul_differential(self.spec, i, W, image_window(self.spec, W))
            self._rank[key] = self.rank(d)
        return self._rank[key]

    def cycles(self, i: int, W: TruncationWindow) -> int:
        return self.chain_dim(i, W) - self.differential_rank(i, W)

    def boundaries_in(self, i: int, W: TruncationWindow, probe: TruncationWindow) -> int:
        """dim( d_{i+1}(C_{i+1}(probe)) cap C_i(W) )."""
        n = self.spec.n
        if i >= n or self.chain_dim(i, W) == 0:
            return 0
        amb = image_window(self.spec, probe)
        if self.spec.m:
            # must hold the probe images and W itself
            amb = TruncationWindow(amb.k, max(amb.D, probe.D + self.spec.product_degree))
        if not contains_window(self.spec, W, amb):
            raise StabilizationError(f"window {W} is not nested in probe ambient {amb}")
        img = koszul_differential(self.spec, i + 1, probe, amb)
        emb = inclusion_matrix(self.spec, W, amb, copies=comb(n, i))
        r_img = self.differential_rank(i + 1, probe)
        if r_img == 0:
            return 0
        r_union = self.rank(emb.hstack(img))
        return r_img + self.chain_dim(i, W) - r_union


def homology_dims(spec: LocalizedModuleSpec, W_outer: TruncationWindow,
                  probes: Sequence[TruncationWindow], engine: HomologyEngine = None) -> WindowRecord:
    """Apparent dim H_i for every i at one outer window.

    ``probes`` are the enlarged windows, smallest first; the last two are
    compared to detect a boundary subspace that is still growing.
    """
    engine = engine or HomologyEngine(spec)
    start = time.perf_counter()
    n = spec.n
    chain, cyc, bnd, prev, dims, exhausted = [], [], [], [], [], []
    for i in range(n + 1):
        chain.append(engine.chain_dim(i, W_outer))
        z = engine.cycles(i, W_outer)
        cyc.append(z)
        if probes:
            last = engine.boundaries_in(i, W_outer, probes[-1])
            before = (engine.boundaries_in(i, W_outer, probes[-2]) if len(probes) > 1
                      else engine.boundaries_in(i, W_outer, W_outer))
        else:
            last = before = engine.boundaries_in(i, W_outer, W_outer)
        bnd.append(last)
        prev.append(before)
        dims.append(z - last)
        exhausted.append(last > before)
    return WindowRecord((W_outer.k, W_outer.D), chain, cyc, bnd, prev, dims, exhausted,
                        time.perf_counter() - start)


def forecast_seconds(trace: Sequence[WindowRecord]) -> float:
    """Rough cost of the next window from the growth of the last two."""
    if not trace:
        return 0.0
    last = trace[-1].seconds
    if len(trace) == 1 or trace[-2].seconds <= 0:
        return 2.0 * last
    return last * max(1.0, last / trace[-2].seconds)


def derham_homology(spec: LocalizedModuleSpec, schedule: WindowSchedule = None,
                    max_seconds: float = None, adapt: bool = True) -> DeRhamResult:
    """Run the window schedule until ``span`` consecutive windows agree."""
    schedule = schedule or WindowSchedule()
    if adapt:
        schedule = schedule.adapted(spec)
    start = time.perf_counter()
    engine = HomologyEngine(spec, None if max_seconds is None else start + max_seconds)
    trace: List[WindowRecord] = []
    status = "budget"
    for t in range(schedule.max_windows):
        if max_seconds is not None:
            elapsed = time.perf_counter() - start
            if elapsed > max_seconds or elapsed + forecast_seconds(trace) > max_seconds:
                status = "timeout"
                log.warning("stopping before window %d: %.1fs used of a %.1fs budget",
                            t, elapsed, max_seconds)
                break
        W = schedule.window(t)
        probes = [schedule.window(t + q) for q in range(1, schedule.probe + 1)]
        try:
            rec = homology_dims(spec, W, probes, engine)
        except BudgetExceeded:
            status = "timeout"
            log.warning("window %s abandoned: %.1fs budget used up", (W.k, W.D), max_seconds)
            break
        log.info("window %s dims %s exhausted %s (%.2fs)", rec.window, rec.dims,
                 rec.probe_exhausted, rec.seconds)
        if not rec.reliable:
            log.warning("window %s: boundary dimension still growing at probe depth %d "
                        "in degrees %s; the window does not count towards stabilization",
                        rec.window, schedule.probe,
                        [i for i, e in enumerate(rec.probe_exhausted) if e])
        trace.append(rec)
        tail = trace[-schedule.span:]
        if (len(tail) == schedule.span and all(r.reliable for r in tail)
                and all(r.dims == tail[0].dims for r in tail)):
            dims = list(tail[0].dims)
            x = euler_characteristic(dims)
            return DeRhamResult(spec.n, dims, x, (-1) ** spec.n * x, True, trace, schedule,
                                "stabilized", spec.describe())
    return DeRhamResult(spec.n, None, None, None, False, trace, schedule, status, spec.describe())
