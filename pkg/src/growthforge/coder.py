"""Coding words of the glued-plane homeomorphism and their exact counts.

An orbit with height y in the leaf I_{k_1..k_{L+1}} crosses Y_1, ..., Y_{L+2}
at times T_1 = 0, T_{i+1} = T_i + k_i, one step per crossing.  A length-n
coding word is what a window of n consecutive times sees: a sparse list of
(position, symbol) hits, every other position being the symbol infinity.

Two routes count the words:

* :func:`count_words_bruteforce` slides every window over every tuple and
  deduplicates the words themselves;
* :func:`count_table` groups words by their visible gap pattern and counts
  admissible window offsets per pattern, giving c(n) for all n at once.

:class:`PlaneModel` re-derives individual words by iterating points of the
glued planes with exact rationals; it never looks at the tuple formulas.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .flexibility import (
    CompositePlan,
    ConstructionPlan,
    IntervalTree,
    JumpTuple,
    _raw_tuples,
    build_interval_tree,
)
from .growth import (
    DEFAULT_SLACK,
    GrowthClassVerdict,
    GrowthError,
    Mode,
    Relation,
    Syndetic,
    TabulatedGrowth,
    as_tabulated,
    check_bjp,
    syndetic_transfer,
    trend_factor,
)

THIRD = Fraction(1, 3)
_INF = 1 << 40


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GROWTHFORGE_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CodingWord:
    """Length-n itinerary; ``hits`` lists (position, symbol) pairs, rest is infinity."""

    n: int
    hits: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pos = [p for p, _ in self.hits]
        sym = [i for _, i in self.hits]
        if any(not 0 <= p < self.n for p in pos):
            raise ValueError(f"hit outside window of length {self.n}")
        if any(x >= y for x, y in zip(pos, pos[1:])) or any(x >= y for x, y in zip(sym, sym[1:])):
            raise ValueError("positions and symbols must both increase")

    def symbols(self) -> list:
        """Dense form: symbol index at each position, None for infinity."""
        out = [None] * self.n
        for p, i in self.hits:
            out[p] = i
        return out

    def dump(self) -> str:
        return ",".join(f"{p}:{i}" for p, i in self.hits)


def word_from_window(tup: JumpTuple | Sequence[int], start: int, n: int) -> CodingWord:
    if n < 1:
        raise GrowthError("word length must be >= 1")
    T = tup.hit_times if isinstance(tup, JumpTuple) else JumpTuple(tuple(tup)).hit_times
    hits = tuple((t - start, i) for i, t in enumerate(T, 1) if 0 <= t - start < n)
    return CodingWord(n, hits)


def _hit_times(k: Sequence[int]) -> list[int]:
    T = [0]
    for x in k:
        T.append(T[-1] + x)
    return T


def _tuples(plan: ConstructionPlan, k1_max: int) -> Iterable[tuple[int, ...]]:
    for k1 in range(1, min(k1_max, plan.N) + 1):
        yield from _raw_tuples(plan.factor_row(k1), k1)


def _base_words(L: int, n: int) -> set:
    """The all-infinity word and every single-symbol word."""
    words = {()}
    for i in range(1, L + 3):
        words.update(((p, i),) for p in range(n))
    return words


def enumerate_words(plan: ConstructionPlan, n: int, k1_max: int) -> set:
    """Every length-n word as a hit tuple, by sliding windows (the oracle)."""
    words = _base_words(plan.L, n)
    for k in _tuples(plan, k1_max):
        T = _hit_times(k)
        for s in range(T[0] - n + 1, T[-1] + 1):
            words.add(tuple((t - s, i) for i, t in enumerate(T, 1) if 0 <= t - s < n))
    return words


def count_words_bruteforce(plan: ConstructionPlan, n: int, k1_max: int) -> int:
    return len(enumerate_words(plan, n, k1_max))


# ---------------------------------------------------------------------------
# Pattern counting
# ---------------------------------------------------------------------------
#
# A word with >= 2 hits shows symbols a..b (consecutive), the first at
# position p, and the gaps k_a..k_{b-1}.  A tuple realises it iff the hit
# before a is left of the window (k_{a-1} > p) and the hit after b is right
# of it (k_b >= n - p - span).  For a fixed pattern only the Pareto frontier
# of (k_{a-1}, k_b) over the realising tuples matters.


def _collect_patterns(plan: ConstructionPlan, k1_lo: int, k1_hi: int, max_span: int) -> dict:
    L2 = plan.L + 2
    pats: dict = {}
    for k1 in range(k1_lo, k1_hi + 1):
        for k in _raw_tuples(plan.factor_row(k1), k1):
            T = _hit_times(k)
            for a in range(1, L2):
                prev = k[a - 2] if a > 1 else _INF
                for b in range(a + 1, L2 + 1):
                    span = T[b - 1] - T[a - 1]
                    if span > max_span:
                        break
                    nxt = k[b - 1] if b < L2 else _INF
                    key = (a, k[a - 1:b - 1])
                    pats.setdefault(key, set()).add((prev, nxt))
    return pats


def _merge(dst: dict, src: dict) -> None:
    for key, pairs in src.items():
        if key in dst:
            dst[key] |= pairs
        else:
            dst[key] = pairs


def _pieces(pats: dict) -> np.ndarray:
    """Rows (lo, hi, f, span): offsets p in [lo, hi] have best next-gap f."""
    rows = []
    for (_, gaps), pairs in sorted(pats.items()):
        span = sum(gaps)
        # Pareto frontier, prev descending / next ascending
        front, best = [], -1
        for prev, nxt in sorted(pairs, key=lambda x: (-x[0], -x[1])):
            if nxt > best:
                front.append((prev, nxt))
                best = nxt
        for j, (prev, nxt) in enumerate(front):
            lo = front[j + 1][0] if j + 1 < len(front) else 0
            rows.append((lo, prev - 1, nxt, span))
    return np.array(rows, dtype=np.int64).reshape(-1, 4)


def _count_pieces(pieces: np.ndarray, ns: np.ndarray, chunk: int = 1 << 22) -> np.ndarray:
    out = np.zeros(len(ns), dtype=object)
    step = max(1, chunk // max(1, len(ns)))
    for start in range(0, len(pieces), step):
        blk = pieces[start:start + step]
        lo, hi, f, span = (blk[:, c][:, None] for c in range(4))
        n = ns[None, :]
        top = np.minimum(hi, n - 1 - span)
        bot = np.maximum(np.maximum(lo, n - span - f), 0)
        cnt = np.clip(top - bot + 1, 0, None).sum(axis=0)
        out += cnt.astype(object)
    return out


@dataclass(frozen=True)
class WordCount:
    """Exact c(1..N) with truncation metadata."""

    counts: tuple[int, ...]
    k1_max: int
    L: int

    @property
    def N(self) -> int:
        return len(self.counts)

    def __getitem__(self, n: int) -> int:
        return self.counts[n - 1]

    def complete(self, n: int) -> bool:
        # tuples with k1 >= n-1 have every gap >= n, so they only show single hits
        return self.k1_max >= n - 1

    @property
    def all_complete(self) -> bool:
        return self.complete(self.N)

    def as_growth(self) -> TabulatedGrowth:
        return TabulatedGrowth(self.counts)


def count_table(plan: ConstructionPlan, N: int, k1_max: Optional[int] = None, *,
                strict: bool = True, threads: Optional[int] = None) -> WordCount:
    """c(n) for n = 1..N.

    Pattern extraction is split by k1 across threads; the partial pattern
    maps merge by set union, so the result does not depend on scheduling.
    """
    k1_max = N if k1_max is None else k1_max
    if strict and k1_max < N - 1:
        raise GrowthError(f"k1_max={k1_max} < n-1={N - 1}: counts would be truncated")
    hi = min(k1_max, plan.N, N)
    threads = threads or _threads()
    if threads > 1 and hi > 1:
        bounds = np.linspace(0, hi, threads + 1).astype(int)
        jobs = [(int(bounds[i]) + 1, int(bounds[i + 1])) for i in range(threads)
                if bounds[i + 1] > bounds[i]]
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda j: _collect_patterns(plan, j[0], j[1], N - 1), jobs))
        pats: dict = {}
        for p in parts:
            _merge(pats, p)
    else:
        pats = _collect_patterns(plan, 1, hi, N - 1)
    ns = np.arange(1, N + 1, dtype=np.int64)
    multi = _count_pieces(_pieces(pats), ns)
    base = [1 + (plan.L + 2) * int(n) for n in ns]
    return WordCount(tuple(int(b + m) for b, m in zip(base, multi)), k1_max, plan.L)


def count_words(plan: ConstructionPlan, n: int, k1_max: Optional[int] = None, *,
                strict: bool = True) -> int:
    return count_table(plan, n, n if k1_max is None else k1_max, strict=strict)[n]


def count_table_composite(comp: CompositePlan, N: int, k1_max: Optional[int] = None, *,
                          strict: bool = True) -> WordCount:
    """Stages use disjoint alphabets and share only the all-infinity word."""
    tables = [count_table(p, N, k1_max, strict=strict) for p in comp.stages]
    K = len(tables)
    counts = tuple(sum(t[n] for t in tables) - (K - 1) for n in range(1, N + 1))
    return WordCount(counts, tables[0].k1_max, max(p.L for p in comp.stages))


def count_words_composite(comp: CompositePlan, n: int, k1_max: Optional[int] = None, *,
                          strict: bool = True) -> int:
    return count_table_composite(comp, n, n if k1_max is None else k1_max, strict=strict)[n]


def translation_counts(N: int) -> WordCount:
    """Single wandering set crossed once per orbit (compactified translation).

    Enumerated as windows over the lone hit: n single-symbol words plus
    the all-infinity word.
    """
    counts = []
    for n in range(1, N + 1):
        words = {()}
        for s in range(-n + 1, 1):
            words.add(((-s, 1),))
        counts.append(len(words))
    return WordCount(tuple(counts), N, 0)


# ---------------------------------------------------------------------------
# Sandwich verification
# ---------------------------------------------------------------------------


def lower_bound(plan: ConstructionPlan, n: int) -> int:
    """k * sum_{k1<=k} e(k1) for n = k(2L+2)."""
    k = n // (2 * plan.L + 2)
    return k * sum(plan.e[:k])


def upper_bound(plan: ConstructionPlan, n: int) -> int:
    return (2 * plan.L + 3) * n * sum(plan.e[:n])


@dataclass(frozen=True)
class SyndeticReport:
    verdict: GrowthClassVerdict
    d1: Fraction
    d2: Fraction
    trend: float
    bjp: Optional[Fraction]
    points: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.verdict.relation is Relation.EQUIV


def verify_syndetic_bounds(plan: ConstructionPlan, counts: WordCount, horizon: int, *,
                           slack: Fraction = DEFAULT_SLACK) -> SyndeticReport:
    """d1 a(n) <= c(n) <= d2 a(n) on S = (2L+2)N, then transfer to all n via BJP."""
    if horizon > counts.N or not counts.complete(horizon):
        raise GrowthError("counts incomplete up to the horizon")
    gap = 2 * plan.L + 2
    S = Syndetic(gap, gap)
    pts = tuple(S.points(horizon))
    target = as_tabulated(plan.target, horizon)
    ratios = [Fraction(counts[n]) / Fraction(target[n]) for n in pts]
    d1, d2 = min(ratios), max(ratios)
    trend = trend_factor(np.log(np.array([float(r) for r in ratios])))
    cg = counts.as_growth().truncate(horizon)
    C = check_bjp(cg, horizon)
    if C is None:
        raise GrowthError("word counts fail the bounded jump check")
    if d2 / d1 > slack or not 0.5 <= trend <= 2.0:
        v = GrowthClassVerdict(Relation.NO_VERDICT, d1, d2, horizon, Mode.EMPIRICAL)
    else:
        v = syndetic_transfer(cg, target, S, horizon, bjp=C)
    return SyndeticReport(v, d1, d2, trend, C, pts)


# ---------------------------------------------------------------------------
# Plane model oracle
# ---------------------------------------------------------------------------


class PlaneModel:
    """Planes P_1..P_{L+2} glued along upper half planes by x -> x + phi_i(y).

    phi_i is the step function read off the interval tree: it equals -k_i
    on every depth-i interval with last index k_i.
    """

    def __init__(self, tree: IntervalTree):
        self.tree = tree
        self.L = tree.L

    @classmethod
    def from_plan(cls, plan: ConstructionPlan, k1_max: int) -> "PlaneModel":
        return cls(build_interval_tree(plan, k1_max))

    def phis(self, y: Fraction) -> list[int]:
        """phi_1(y), ..., phi_{L+1}(y); boundary heights are rejected."""
        chain = self.tree.locate(y)
        leaf = chain[-1]
        if y == leaf.lo or y == leaf.hi:
            raise GrowthError(f"height {y} lies on an interval boundary")
        return [-node.prefix[-1] for node in chain]

    @staticmethod
    def in_Y(x: Fraction, y: Fraction) -> bool:
        return -THIRD <= x <= THIRD and 0 <= y <= 1


def simulate_orbit(model: PlaneModel, y, x0, start: int, n: int) -> CodingWord:
    """Iterate T(x, y) = (x+1, y) from time ``start`` and record visits to Y_i.

    The point is tracked in one plane at a time; once it has passed Y_i it is
    carried to plane i+1 by Phi_i.  Every representation is checked at every
    step to make sure no other Y_j is visited in between.

    Translations and gluings move x by integers, so x = x0 + k with k an
    integer throughout; the tests on x become exact integer bounds on k.
    """
    if n < 1:
        raise GrowthError("word length must be >= 1")
    y, x0 = Fraction(y), Fraction(x0)
    # x in [-1/3, 1/3]  <=>  k_lo <= k <= k_hi;  x > 1/3  <=>  k > k_hi
    k_lo, k_hi = math.ceil(-THIRD - x0), math.floor(THIRD - x0)
    k = start
    L2 = model.L + 2
    if y > 1 or y < 0:
        return CodingWord(n)
    if y == 0:
        # lower boundary line of P_1 is not glued
        return CodingWord(n, tuple((m, 1) for m in range(n) if k_lo <= k + m <= k_hi))
    phi = model.phis(y)
    plane = 1
    while plane < L2 and k > k_hi:
        k += phi[plane - 1]
        plane += 1
    hits = []
    for m in range(n):
        reps, kr = [], k
        for j in range(plane, L2 + 1):
            if k_lo <= kr <= k_hi:
                reps.append(j)
            if j < L2:
                kr += phi[j - 1]
        assert len(reps) <= 1 and (not reps or reps[0] == plane), reps
        if reps:
            hits.append((m, plane))
        k += 1
        if plane < L2 and k > k_hi:
            k += phi[plane - 1]
            plane += 1
    return CodingWord(n, tuple(hits))


def leaf_height(node) -> Fraction:
    """Midpoint of a leaf, strictly inside it."""
    return (node.lo + node.hi) / 2


# ---------------------------------------------------------------------------
# Output formats
# ---------------------------------------------------------------------------


def counts_to_csv(counts: WordCount, target=None) -> str:
    lines = ["n,c,ratio,complete"]
    tab = as_tabulated(target, counts.N) if target is not None else None
    for n in range(1, counts.N + 1):
        ratio = "" if tab is None else f"{float(Fraction(counts[n]) / Fraction(tab[n])):.12g}"
        lines.append(f"{n},{counts[n]},{ratio},{int(counts.complete(n))}")
    return "\n".join(lines) + "\n"


def dump_words(words: Iterable, n: int) -> str:
    body = sorted(words)
    return "\n".join([str(n)] + [",".join(f"{p}:{i}" for p, i in w) for w in body]) + "\n"
