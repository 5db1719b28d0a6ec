"""Generalized entropy of finite metric systems.

Counts (n, eps)-separated sets, (n, eps)-spanning sets and refined open
covers for a map on a finite metric space, and reads h and h_pol off the
resulting growth sequences through the entropy projections.

Minimum spanning sets and maximum separated sets are hard in general;
greedy constructions in index order are used by default, and exact
exhaustive search below small size thresholds.  Every count is realised by
an actual set, so greedy separated counts are lower bounds and greedy
spanning / cover counts are upper bounds.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .growth import (
    GrowthError,
    GrowthExpr,
    Projection,
    TabulatedGrowth,
    ordered_chain,
    pi_E,
    pi_P,
)

EXACT_POINTS = 16
EXACT_SETS = 20


@dataclass(frozen=True, eq=False)
class FiniteSystem:
    """Points 0..P-1 with a distance matrix and a self-map ``next``."""

    dist: np.ndarray
    next: np.ndarray
    name: str = "system"

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=float)
        f = np.asarray(self.next, dtype=np.int64)
        P = len(f)
        if d.shape != (P, P):
            raise GrowthError(f"distance matrix shape {d.shape} does not match {P} points")
        if np.any(d < 0) or np.any(np.diag(d) != 0) or not np.array_equal(d, d.T):
            raise GrowthError("distance must be nonnegative, symmetric, zero on the diagonal")
        if np.any(f < 0) or np.any(f >= P):
            raise GrowthError("map image outside the point set")
        object.__setattr__(self, "dist", d)
        object.__setattr__(self, "next", f)

    @property
    def P(self) -> int:
        return len(self.next)

    @property
    def diameter(self) -> float:
        return float(self.dist.max())

    def check_triangle(self, rtol: float = 1e-12) -> bool:
        # float positions: allow rounding at the scale of the diameter
        d, tol = self.dist, rtol * self.diameter
        return all(np.all(d <= d[:, [k]] + d[[k], :] + tol) for k in range(self.P))

    def orbit(self, n: int) -> np.ndarray:
        """Row k holds f^k applied to every point, k < n."""
        out = np.empty((n, self.P), dtype=np.int64)
        out[0] = np.arange(self.P)
        for k in range(1, n):
            out[k] = self.next[out[k - 1]]
        return out

    def dyn_matrix(self, n: int) -> np.ndarray:
        """Bowen distance d_n for all pairs."""
        D = self.dist.copy()
        o = np.arange(self.P)
        for _ in range(1, n):
            o = self.next[o]
            np.maximum(D, self.dist[np.ix_(o, o)], out=D)
        return D


def dyn_dist(sys: FiniteSystem, x: int, y: int, n: int) -> float:
    if n < 1:
        raise GrowthError("n must be >= 1")
    best = 0.0
    for _ in range(n):
        best = max(best, sys.dist[x, y])
        x, y = sys.next[x], sys.next[y]
    return best


# ---------------------------------------------------------------------------
# Desk-scale systems
# ---------------------------------------------------------------------------


def _circle_dist(pos: np.ndarray, length: float = 1.0) -> np.ndarray:
    diff = np.abs(pos[:, None] - pos[None, :])
    return np.minimum(diff, length - diff)


def circle_grid(P: int) -> np.ndarray:
    """Arc distance between the points k/P on the unit-length circle."""
    return _circle_dist(np.arange(P) / P)


def doubling_map(P: int = 1024) -> FiniteSystem:
    return FiniteSystem(circle_grid(P), (2 * np.arange(P)) % P, f"doubling-{P}")


def rotation(P: int = 16, step: int = 1) -> FiniteSystem:
    return FiniteSystem(circle_grid(P), (np.arange(P) + step) % P, f"rotation-{P}")


def identity_map(P: int = 16) -> FiniteSystem:
    return FiniteSystem(circle_grid(P), np.arange(P), f"identity-{P}")


def translation_toy(M: int = 64, scale: float = 4.0) -> FiniteSystem:
    """x -> x+1 on {-M..M} with the point at infinity fixed (M -> infinity).

    The integers sit on a circle of length 2 through x/(|x|+scale), and
    infinity is the antipode of 0, as in the one-point compactification.
    """
    xs = np.arange(-M, M + 1, dtype=float)
    pos = np.append(xs / (np.abs(xs) + scale), 1.0)
    inf = len(xs)
    nxt = np.append(np.arange(1, len(xs) + 1), inf)
    return FiniteSystem(_circle_dist(pos, 2.0), nxt, f"translation-{M}")


def system_from_dict(data: dict) -> FiniteSystem:
    """Structured text: {"points": [[x, ...], ...] | "matrix": [[...]], "map": [...]}."""
    if "builtin" in data:
        kind, _, size = str(data["builtin"]).partition(":")
        makers = {"doubling": doubling_map, "rotation": rotation,
                  "translation": translation_toy, "identity": identity_map}
        if kind not in makers:
            raise GrowthError(f"unknown builtin system {kind!r}")
        return makers[kind](int(size)) if size else makers[kind]()
    f = data["map"]
    if "matrix" in data:
        d = np.array([[float(Fraction(str(v))) for v in row] for row in data["matrix"]])
    elif "points" in data:
        pts = np.array([[float(Fraction(str(v))) for v in p] for p in data["points"]])
        d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))
    else:
        raise GrowthError("system needs 'points' or 'matrix'")
    return FiniteSystem(d, np.array(f), data.get("name", "system"))


def load_system(text: str) -> FiniteSystem:
    return system_from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# Separated and spanning sets
# ---------------------------------------------------------------------------


def _greedy_separated(D: np.ndarray, eps: float, seed: Sequence[int] = ()) -> list[int]:
    chosen = list(seed)
    blocked = np.zeros(len(D), dtype=bool)
    for x in chosen:
        blocked |= D[x] < eps
    for x in range(len(D)):
        if not blocked[x]:
            chosen.append(x)
            blocked |= D[x] < eps
    return sorted(chosen)


def is_separated(D: np.ndarray, eps: float, E: Sequence[int]) -> bool:
    E = list(E)
    sub = D[np.ix_(E, E)]
    return bool(np.all(sub[~np.eye(len(E), dtype=bool)] >= eps))


def is_maximal_separated(D: np.ndarray, eps: float, E: Sequence[int]) -> bool:
    if not is_separated(D, eps, E):
        return False
    inside = set(E)
    return all(np.any(D[x, list(E)] < eps) for x in range(len(D)) if x not in inside)


def _greedy_spanning(D: np.ndarray, eps: float) -> list[int]:
    B = D < eps
    gains = B.sum(axis=1).astype(np.int64)
    covered = np.zeros(len(D), dtype=bool)
    chosen = []
    while not covered.all():
        x = int(np.argmax(gains))
        chosen.append(x)
        new = B[x] & ~covered
        covered |= new
        gains -= B[:, new].sum(axis=1)
    return chosen


def _exact_separated(D: np.ndarray, eps: float) -> int:
    P = len(D)
    conflict = [sum(1 << y for y in range(P) if y != x and D[x, y] < eps) for x in range(P)]
    best = 0

    def grow(cands: int, size: int):
        nonlocal best
        if size + bin(cands).count("1") <= best:
            return
        if not cands:
            best = max(best, size)
            return
        x = (cands & -cands).bit_length() - 1
        grow(cands & ~conflict[x] & ~(1 << x), size + 1)
        grow(cands & ~(1 << x), size)

    grow((1 << P) - 1, 0)
    return best


def _exact_spanning(D: np.ndarray, eps: float) -> int:
    P = len(D)
    balls = [sum(1 << y for y in range(P) if D[x, y] < eps) for x in range(P)]
    full = (1 << P) - 1
    for k in range(1, P + 1):
        for combo in itertools.combinations(balls, k):
            acc = 0
            for b in combo:
                acc |= b
            if acc == full:
                return k
    return P


def separated_count(sys: FiniteSystem, n: int, eps: float, *, exact: bool = False) -> int:
    """Size of a maximal (n, eps)-separated set (greedy, index order)."""
    if eps <= 0:
        raise GrowthError("eps must be positive")
    D = sys.dyn_matrix(n)
    if exact:
        if sys.P > EXACT_POINTS:
            raise GrowthError(f"exact search limited to {EXACT_POINTS} points")
        return _exact_separated(D, eps)
    return len(_greedy_separated(D, eps))


def spanning_count(sys: FiniteSystem, n: int, eps: float, *, exact: bool = False) -> int:
    """Size of an (n, eps)-spanning set: the smaller of greedy cover and a maximal separated set."""
    if eps <= 0:
        raise GrowthError("eps must be positive")
    D = sys.dyn_matrix(n)
    if exact:
        if sys.P > EXACT_POINTS:
            raise GrowthError(f"exact search limited to {EXACT_POINTS} points")
        return _exact_spanning(D, eps)
    return min(len(_greedy_spanning(D, eps)), len(_greedy_separated(D, eps)))


# ---------------------------------------------------------------------------
# Open covers
# ---------------------------------------------------------------------------


def _mask(points) -> int:
    m = 0
    for p in points:
        m |= 1 << int(p)
    return m


def _preimage_mask(orbit_k: np.ndarray, target: int) -> int:
    bits = np.array([(target >> int(y)) & 1 for y in range(int(orbit_k.max()) + 1)], dtype=bool)
    return _mask(np.nonzero(bits[orbit_k])[0])


def _drop_dominated(sets: list[int]) -> list[int]:
    sets = sorted(set(sets), key=lambda s: (-bin(s).count("1"), s))
    keep: list[int] = []
    for s in sets:
        if not any(s & k == s for k in keep):
            keep.append(s)
    return keep


def _refine(fam: list[int], pre: list[int]) -> list[int]:
    return _drop_dominated([v & p for v in fam for p in pre if v & p])


def _cover_masks(sys: FiniteSystem, cover: Sequence[Sequence[int]]) -> list[int]:
    masks = [_mask(u) for u in cover]
    if functools_or(masks) != (1 << sys.P) - 1:
        raise GrowthError("input sets do not cover the space")
    return masks


def refined_cover(sys: FiniteSystem, cover: Sequence[Sequence[int]], n: int) -> list[int]:
    """Maximal members of U^n = {U_{i0} & f^-1 U_{i1} & ... & f^-(n-1) U_{i(n-1)}} as bitmasks."""
    masks = _cover_masks(sys, cover)
    orbit = sys.orbit(n)
    fam = _drop_dominated([m for m in masks if m])
    for k in range(1, n):
        fam = _refine(fam, [_preimage_mask(orbit[k], m) for m in masks])
    return fam


def functools_or(masks: Sequence[int]) -> int:
    acc = 0
    for m in masks:
        acc |= m
    return acc


def _min_cover_exact(fam: list[int], full: int) -> int:
    for k in range(1, len(fam) + 1):
        for combo in itertools.combinations(fam, k):
            if functools_or(combo) == full:
                return k
    raise GrowthError("family does not cover")


def _min_cover_bnb(fam: list[int], full: int) -> int:
    best = len(fam)

    def search(covered: int, start_sets: list[int], used: int):
        nonlocal best
        if covered == full:
            best = min(best, used)
            return
        if used + 1 >= best:
            return
        # branch on the lowest uncovered point
        missing = ~covered & full
        p = (missing & -missing)
        for s in start_sets:
            if s & p:
                search(covered | s, start_sets, used + 1)

    search(0, fam, 0)
    return best


def _greedy_cover(fam: list[int], full: int) -> int:
    covered, used = 0, 0
    while covered != full:
        s = max(fam, key=lambda m: bin(m & ~covered).count("1"))
        covered |= s
        used += 1
    return used


def _subcover_size(fam: list[int], full: int) -> int:
    if len(fam) <= EXACT_SETS:
        return _min_cover_bnb(fam, full)
    return _greedy_cover(fam, full)


def cover_count(sys: FiniteSystem, cover: Sequence[Sequence[int]], n: int) -> int:
    """Smallest subcover of U^n: branch-and-bound for <= 20 sets, greedy otherwise."""
    return _subcover_size(refined_cover(sys, cover, n), (1 << sys.P) - 1)


def cover_counts(sys: FiniteSystem, cover: Sequence[Sequence[int]], N: int) -> list[int]:
    """a_{f,U}(1..N), repaired so the sequence is nondecreasing with jumps <= #U.

    Refining a subcover of U^n by one more step gives a subcover of U^{n+1}
    at most #U times larger, and restricting a subcover of U^m gives a
    subcover of U^n for n < m; both are used to clean greedy noise.
    """
    masks = _cover_masks(sys, cover)
    full = (1 << sys.P) - 1
    orbit = sys.orbit(N)
    fam = _drop_dominated([m for m in masks if m])
    fwd: list[int] = []
    for n in range(1, N + 1):
        if n > 1:
            fam = _refine(fam, [_preimage_mask(orbit[n - 1], m) for m in masks])
        c = _subcover_size(fam, full)
        fwd.append(min(c, len(masks) * fwd[-1]) if fwd else c)
    for n in range(N - 2, -1, -1):
        fwd[n] = min(fwd[n], fwd[n + 1])
    return fwd


def crossing_covers(sys: FiniteSystem, centre: int, radii: Sequence[int] = (0, 1, 2)
                    ) -> list[list[list[int]]]:
    """Two-set covers {B, X \\ B} with B the index block of the given radius around ``centre``."""
    out = []
    for r in radii:
        B = list(range(max(0, centre - r), min(sys.P, centre + r + 1)))
        inside = set(B)
        out.append([[i for i in range(sys.P) if i not in inside], B])
    return out


# ---------------------------------------------------------------------------
# Samples and class estimation
# ---------------------------------------------------------------------------


def eps_ladder(sys: FiniteSystem, rungs: int = 6) -> list[float]:
    return [sys.diameter / 2 ** j for j in range(1, rungs + 1)]


@dataclass(frozen=True)
class GrowthSample:
    """Per-eps count sequences for one method; eps strictly decreasing."""

    method: str
    epsilons: tuple[float, ...]
    sequences: tuple[TabulatedGrowth, ...]
    tag: str = "greedy"

    def __post_init__(self):
        if any(a <= b for a, b in zip(self.epsilons, self.epsilons[1:])):
            raise GrowthError("eps ladder must be strictly decreasing")
        for coarse, fine in zip(self.sequences, self.sequences[1:]):
            if any(x > y for x, y in zip(coarse.values, fine.values)):
                raise GrowthError("counts must not decrease as eps shrinks")

    @property
    def horizon(self) -> int:
        return min(len(s) for s in self.sequences)

    def to_csv(self) -> str:
        lines = ["method,eps,n,count,tag"]
        for eps, seq in zip(self.epsilons, self.sequences):
            for n, v in enumerate(seq.values, 1):
                lines.append(f"{self.method},{eps!r},{n},{v},{self.tag}")
        return "\n".join(lines) + "\n"


def sample_system(sys: FiniteSystem, N: int, epsilons: Optional[Sequence[float]] = None
                  ) -> tuple[GrowthSample, GrowthSample]:
    """Spanning and separated samples on an eps ladder, n = 1..N.

    Separated sets are grown incrementally in n (a set separated at n stays
    separated at n+1), counts are maximised over coarser rungs and spanning
    counts minimised over longer / finer cells; every reported value is the
    size of a genuine separated or spanning set.
    """
    eps = list(epsilons) if epsilons is not None else eps_ladder(sys)
    R = len(eps)
    sep = np.zeros((R, N), dtype=np.int64)
    span = np.zeros((R, N), dtype=np.int64)
    seeds: list[list[int]] = [[] for _ in range(R)]
    exact = sys.P <= EXACT_POINTS
    for n in range(1, N + 1):
        D = sys.dyn_matrix(n)
        for j, e in enumerate(eps):
            E = _greedy_separated(D, e, seeds[j])
            seeds[j] = E
            if exact:
                sep[j, n - 1] = _exact_separated(D, e)
                span[j, n - 1] = _exact_spanning(D, e)
            else:
                sep[j, n - 1] = len(E)
                span[j, n - 1] = min(len(E), len(_greedy_spanning(D, e)))
    # a coarser-rung separated set is separated for finer eps too
    sep = np.maximum.accumulate(sep, axis=0)
    # spanning for a finer / longer cell spans every coarser / shorter one
    span = np.minimum.accumulate(span[::-1], axis=0)[::-1]
    span = np.minimum.accumulate(span[:, ::-1], axis=1)[:, ::-1]
    halving = all(math.isclose(a / 2, b) for a, b in zip(eps, eps[1:]))
    if halving:
        # g_eps <= s_eps <= g_{eps/2}
        assert np.all(span <= sep) and np.all(sep[:-1] <= span[1:]), "interleaving violated"
    tag = "exact" if exact else "greedy"
    mk = lambda arr: tuple(TabulatedGrowth(int(v) for v in row) for row in arr)
    return (GrowthSample("spanning", tuple(eps), mk(span), tag),
            GrowthSample("separated", tuple(eps), mk(sep), tag))


def cover_sample(sys: FiniteSystem, covers: Sequence[Sequence[Sequence[int]]], N: int,
                 labels: Optional[Sequence[float]] = None) -> GrowthSample:
    """Cover counts for a sequence of successively finer covers."""
    seqs = tuple(TabulatedGrowth(cover_counts(sys, c, N)) for c in covers)
    labels = labels or [1.0 / (k + 1) for k in range(len(covers))]
    return GrowthSample("cover", tuple(labels), seqs, "greedy")


def interval_cover(P: int, pieces: int, overlap: int = 1) -> list[list[int]]:
    """Cover of the circle grid 0..P-1 by ``pieces`` arcs overlapping by ``overlap`` points."""
    w = P // pieces
    return [[(k * w + i) % P for i in range(-overlap, w + overlap)] for k in range(pieces)]


@dataclass(frozen=True)
class ClassEstimate:
    representative: TabulatedGrowth
    window: tuple[int, int]
    h: Projection
    h_pol: Projection
    fitted: GrowthExpr
    per_rung: tuple[tuple[float, float], ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "class": str(self.fitted),
            "h": float(self.h.value),
            "h_pol": float(self.h_pol.value),
            "window": list(self.window),
            "per_rung": [list(x) for x in self.per_rung],
        }


def growth_window(seq: TabulatedGrowth, horizon: Optional[int] = None) -> tuple[int, int]:
    """Tail half of the pre-saturation range of a count sequence.

    Counts on a finite space stop growing once every point is distinguished;
    the window ends where the sequence reaches its final value.
    """
    h = horizon or len(seq)
    vals = seq.values[:h]
    end = next(n for n in range(1, h + 1) if vals[n - 1] == vals[-1])
    if end == 1:
        return max(1, math.ceil(h / 2)), h
    lo = min(max(1, math.ceil(end / 2)), max(1, end - 2))
    return lo, end


def _fit_class(h: float, h_pol: float, flat: bool) -> GrowthExpr:
    if flat:
        return GrowthExpr()
    if h > 0.1:
        return GrowthExpr(r=Fraction(h).limit_denominator(100))
    half = Fraction(round(2 * h_pol), 2)
    if abs(h_pol - half) <= 0.1:
        return GrowthExpr(t=half)
    return GrowthExpr(t=Fraction(h_pol).limit_denominator(4))


def estimate_class(samples: GrowthSample, horizon: Optional[int] = None) -> ClassEstimate:
    """Class of the sup over the eps rungs with its h and h_pol estimates."""
    if len(samples.sequences) < 3:
        raise GrowthError("need at least 3 eps rungs")
    h = horizon or samples.horizon
    seqs = [s.truncate(h) for s in samples.sequences]
    chain = ordered_chain(seqs)
    top = chain.top
    win = growth_window(top)
    e = pi_E(top, window=win)
    p = pi_P(top, window=win)
    per = tuple((float(pi_E(s, window=growth_window(s)).value),
                 float(pi_P(s, window=growth_window(s)).value)) for s in seqs)
    flat = top.values[0] == top.values[-1]
    return ClassEstimate(top, win, e, p, _fit_class(float(e.value), float(p.value), flat), per)
