"""Synthesis of the crossing-time sequences for a target order of growth.

Given a target [a(n)] with [n^2] <= [a] <= [n^L], we build integer
sequences a_2(n), ..., a_{L+1}(n) in [1, n] whose products e(n) make

    d(n) = n * sum_{k<=n} e(k)

comparable to a(n) up to constants.  The sequences index a nested tree of
height intervals; each leaf is a tuple (k_1, ..., k_{L+1}) of crossing
times between consecutive wandering sets.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .growth import (
    DEFAULT_SLACK,
    GrowthError,
    GrowthExpr,
    Growth,
    ChainSup,
    Relation,
    as_tabulated,
    check_bjp,
    compare,
    growth_from_dict,
    growth_to_dict,
    pi_P,
)

BURN_IN = 8
# fitted exponents within this of an integer count as that integer
POWER_TOL = 0.05


class PlanRejected(GrowthError):
    """The recurrence could not keep d(n)/a(n) inside the configured slack."""

    def __init__(self, msg: str, diagnostics: Optional[dict] = None):
        super().__init__(msg)
        self.diagnostics = diagnostics or {}


# ---------------------------------------------------------------------------
# Choosing L
# ---------------------------------------------------------------------------


def choose_L(target: Growth, horizon: Optional[int] = None) -> int:
    """Smallest L >= 3 with [target] <= [n^L]."""
    if math.isinf(float(pi_P(target, horizon).value)):
        raise GrowthError(f"{target} exceeds every polynomial; flexibility does not apply")
    low = compare(target, GrowthExpr(2), horizon)
    if not low.geq:
        raise GrowthError(f"{target} lies below [n^2]; outside the construction's range")
    if isinstance(target, GrowthExpr):
        L = max(3, math.ceil(target.t))
        while not compare(target, GrowthExpr(L)).leq:
            L += 1
        return L
    # the half-window compare cannot see degree gaps of 1 at desk horizons,
    # so the exponent fit proposes L and compare only confirms it
    L = max(3, math.ceil(float(pi_P(target, horizon).value) - POWER_TOL))
    while not compare(target, GrowthExpr(L), horizon).leq:
        L += 1
        if L > 64:
            raise GrowthError("no polynomial bound found up to n^64")
    return L


# ---------------------------------------------------------------------------
# Factor split
# ---------------------------------------------------------------------------


def _iroot_ceil(x: int, k: int) -> int:
    """Smallest integer r with r**k >= x."""
    if x <= 1:
        return 1
    r = int(round(x ** (1.0 / k)))
    while r ** k < x:
        r += 1
    while r > 1 and (r - 1) ** k >= x:
        r -= 1
    return r


def _greedy_split(e_value: int, n: int, L: int) -> tuple[int, ...]:
    out, rem = [], e_value
    for slots in range(L, 0, -1):
        a = min(n, _iroot_ceil(rem, slots))
        out.append(a)
        rem //= a
    return tuple(out)


def _pack(m: int, n: int, L: int) -> Optional[tuple[int, ...]]:
    """Write m as a product of L factors in [1, n], or None.

    m must be n-smooth; its prime factors are packed first-fit decreasing,
    which may miss a packing that exists (the caller then moves on).
    """
    primes = []
    for p in range(2, n + 1):
        while m % p == 0:
            primes.append(p)
            m //= p
        if m == 1:
            break
    if m != 1:
        return None
    bins = [1] * L
    for p in sorted(primes, reverse=True):
        fits = [i for i in range(L) if bins[i] * p <= n]
        if not fits:
            return None
        i = max(fits, key=lambda i: (bins[i], -i))
        bins[i] *= p
    return tuple(sorted(bins, reverse=True))


def factor_split(e_value: int, n: int, L: int) -> tuple[int, ...]:
    """Largest product <= ``e_value`` of L factors in [1, n], as a descending tuple.

    Candidates e, e-1, ... are tried down to the greedy balanced split
    (each slot takes ceil(rem^(1/slots)) capped at n), which loses at most
    a factor 2 per slot and so bounds the search.
    """
    if e_value < 1 or e_value > n ** L:
        raise GrowthError(f"e={e_value} outside [1, {n}^{L}]")
    greedy = _greedy_split(e_value, n, L)
    floor = math.prod(greedy)
    out = greedy
    for m in range(e_value, floor, -1):
        packed = _pack(m, n, L)
        if packed is not None:
            out = packed
            break
    prod = math.prod(out)
    assert floor <= prod <= e_value and prod * 2 ** L >= e_value and max(out) <= n
    return out


# ---------------------------------------------------------------------------
# Plans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstructionPlan:
    """Sequences a_2..a_{L+1}, e, d for one target, indexed n = 1..N."""

    L: int
    target: Growth
    N: int
    e: tuple[int, ...]
    factors: tuple[tuple[int, ...], ...]  # factors[i-2][n-1] = a_i(n)
    d: tuple[int, ...]
    requested: tuple[int, ...] = ()
    b1: Optional[Fraction] = None
    b2: Optional[Fraction] = None
    slack_log: tuple[Fraction, ...] = field(default=(), repr=False)

    def a(self, i: int, n: int) -> int:
        return self.factors[i - 2][n - 1]

    def e_at(self, n: int) -> int:
        return self.e[n - 1]

    def d_at(self, n: int) -> int:
        return self.d[n - 1]

    def factor_row(self, n: int) -> tuple[int, ...]:
        return tuple(f[n - 1] for f in self.factors)

    def with_factors(self, factors: Sequence[Sequence[int]]) -> "ConstructionPlan":
        """Copy with replaced factor tables (e and d recomputed, witnesses dropped)."""
        factors = tuple(tuple(f) for f in factors)
        e = tuple(math.prod(f[n] for f in factors) for n in range(self.N))
        return replace(self, factors=factors, e=e, d=tuple(_d_from_e(e)),
                       b1=None, b2=None, slack_log=())

    def check(self) -> None:
        """Assert the plan invariants."""
        for n in range(1, self.N + 1):
            row = self.factor_row(n)
            assert all(1 <= x <= n for x in row), (n, row)
            assert math.prod(row) == self.e_at(n)
        assert list(self.d) == _d_from_e(self.e)
        assert all(x < y for x, y in zip(self.d, self.d[1:]))


def _d_from_e(e: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for n, x in enumerate(e, 1):
        acc += x
        out.append(n * acc)
    return out


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def recurrence(a_n: Fraction, a_next: Fraction, d_n: int, n: int) -> Fraction:
    """e(n+1) that keeps d(n+1)/d(n) = a(n+1)/a(n)."""
    return (a_next / a_n - Fraction(n + 1, n)) * Fraction(d_n, n + 1)


def build_sequences(target: Growth, L: int, N: int, *, slack: Fraction = DEFAULT_SLACK,
                    correct_drift: bool = True, burn_in: int = BURN_IN,
                    level: Optional[Fraction] = None) -> ConstructionPlan:
    """Run the e(n+1) recurrence in exact rationals and split each e into factors.

    The recurrence preserves the ratio d/a but not its level, so rounding and
    factor-split losses would otherwise accumulate.  With ``correct_drift`` the
    recurrence is evaluated on the reference trajectory d*(n) = a(n) d(1)/a(1)
    and the accumulated deficit d*(n) - d(n) is paid back through e(n+1).
    ``level`` overrides the reference ratio d*/a, which defaults to d(1)/a(1).
    """
    if L < 3:
        raise GrowthError("L must be >= 3")
    tab = as_tabulated(target, N)
    if check_bjp(tab, N) is None:
        raise GrowthError(f"{target} fails the bounded jump property; recurrence unbounded")
    a = [Fraction(v) for v in tab.values]
    beta = Fraction(level) if level is not None else Fraction(1) / a[0]  # d(1) = 1
    if beta <= 0:
        raise GrowthError("level must be positive")
    e, req, rows = [1], [1], [(1,) * L]
    total, d = 1, [1]
    for n in range(1, N):
        if correct_drift:
            ref = beta * a[n - 1]
            x = recurrence(a[n - 1], a[n], ref, n) + (ref - d[-1]) / n
        else:
            x = recurrence(a[n - 1], a[n], d[-1], n)
        want = min(max(_round_half_up(x), 1), (n + 1) ** L)
        row = factor_split(want, n + 1, L)
        got = math.prod(row)
        req.append(want)
        e.append(got)
        rows.append(row)
        total += got
        d.append((n + 1) * total)
    ratios = tuple(Fraction(dn) / an for dn, an in zip(d, a))
    tail = ratios[burn_in - 1:] if N >= burn_in else ratios
    b1, b2 = min(tail), max(tail)
    factors = tuple(tuple(r[i] for r in rows) for i in range(L))
    plan = ConstructionPlan(L, target, N, tuple(e), factors, tuple(d), tuple(req),
                            b1, b2, ratios)
    if b2 / b1 > slack:
        raise PlanRejected(
            f"d(n)/a(n) spans [{float(b1):.4g}, {float(b2):.4g}], wider than slack {slack}",
            {"b1": b1, "b2": b2, "slack_log": ratios})
    return plan


# ---------------------------------------------------------------------------
# Crossing tuples and the interval tree
# ---------------------------------------------------------------------------


def _raw_tuples(row: Sequence[int], k1: int) -> Iterator[tuple[int, ...]]:
    # S_{i+1} = 2 i k1 + j with j in 1..a_{i+1}(k1); k_{i+1} = S_{i+1} - S_i
    for js in itertools.product(*(range(1, x + 1) for x in row)):
        ks, S = [k1], k1
        for i, j in enumerate(js, 1):
            S_next = 2 * i * k1 + j
            ks.append(S_next - S)
            S = S_next
        yield tuple(ks)


@dataclass(frozen=True)
class JumpTuple:
    """Crossing times (k_1, ..., k_{L+1}) between consecutive sets Y_i."""

    k: tuple[int, ...]

    @property
    def L(self) -> int:
        return len(self.k) - 1

    @property
    def hit_times(self) -> tuple[int, ...]:
        T = [0]
        for x in self.k:
            T.append(T[-1] + x)
        return tuple(T)

    def sandwich_ok(self) -> bool:
        k1, S = self.k[0], self.k[0]
        for i in range(1, len(self.k)):
            S += self.k[i]
            if not 2 * i * k1 <= S <= (2 * i + 1) * k1:
                return False
        return True


def admissible_tuples(plan: ConstructionPlan, k1: int) -> list[JumpTuple]:
    if not 1 <= k1 <= plan.N:
        raise GrowthError(f"k1={k1} outside 1..{plan.N}")
    return [JumpTuple(k) for k in _raw_tuples(plan.factor_row(k1), k1)]


@dataclass(frozen=True)
class IntervalNode:
    prefix: tuple[int, ...]
    lo: Fraction  # open end
    hi: Fraction  # closed end
    children: tuple["IntervalNode", ...] = ()

    @property
    def depth(self) -> int:
        return len(self.prefix)

    def contains(self, y: Fraction) -> bool:
        return self.lo < y <= self.hi


@dataclass(frozen=True)
class IntervalTree:
    """Nested heights: I_{k1} = (1/(k1+1), 1/k1], children split equally.

    Children of a depth-i node are ordered so that the crossing time k_{i+1}
    decreases with height (the step maps are increasing in y).
    """

    L: int
    k1_max: int
    roots: tuple[IntervalNode, ...]

    def root(self, k1: int) -> IntervalNode:
        return self.roots[k1 - 1]

    def leaves(self, k1: Optional[int] = None) -> Iterator[IntervalNode]:
        stack = [self.root(k1)] if k1 is not None else list(reversed(self.roots))
        while stack:
            node = stack.pop()
            if node.children:
                stack.extend(reversed(node.children))
            else:
                yield node

    def locate(self, y: Fraction) -> list[IntervalNode]:
        """Chain of nodes containing height y, root first."""
        if not 0 < y <= 1:
            raise GrowthError(f"height {y} outside (0, 1]")
        k1 = math.floor(1 / y)
        if k1 > self.k1_max:
            raise GrowthError(f"height {y} lies below the materialised tree")
        node, chain = self.root(k1), []
        while True:
            chain.append(node)
            if not node.children:
                return chain
            node = next(c for c in node.children if c.contains(y))


def build_interval_tree(plan: ConstructionPlan, k1_max: int) -> IntervalTree:
    if k1_max > plan.N:
        raise GrowthError(f"k1_max={k1_max} exceeds plan horizon {plan.N}")

    def grow(prefix, lo, hi, row, k1):
        i = len(prefix)
        if i == plan.L + 1:
            return IntervalNode(prefix, lo, hi)
        m = row[i - 1]
        S = sum(prefix)
        w = (hi - lo) / m
        kids = []
        for j in range(1, m + 1):
            k_next = 2 * i * k1 - S + j
            kids.append(grow(prefix + (k_next,), hi - j * w, hi - (j - 1) * w, row, k1))
        return IntervalNode(prefix, lo, hi, tuple(kids))

    roots = tuple(grow((k1,), Fraction(1, k1 + 1), Fraction(1, k1), plan.factor_row(k1), k1)
                  for k1 in range(1, k1_max + 1))
    return IntervalTree(plan.L, k1_max, roots)


# ---------------------------------------------------------------------------
# Staged composite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompositePlan:
    """One plan per stage of an ordered chain; stage k lives in D_{k-1} minus D_k."""

    stages: tuple[ConstructionPlan, ...]

    @property
    def K(self) -> int:
        return len(self.stages)


def build_stage(target: Growth, N: int, *, L: Optional[int] = None,
                slack: Fraction = DEFAULT_SLACK) -> ConstructionPlan:
    return build_sequences(target, L or choose_L(target, N), N, slack=slack)


def build_composite(chain: ChainSup | Sequence[Growth], K: int, N: int, *,
                    slack: Fraction = DEFAULT_SLACK) -> CompositePlan:
    """Materialise the first K stages; each stage is built independently."""
    items = chain.chain if isinstance(chain, ChainSup) else tuple(chain)
    if K < 1:
        raise GrowthError("composite needs K >= 1 stages")
    if K > len(items):
        raise GrowthError(f"K={K} exceeds chain length {len(items)}")
    for x, y in zip(items[:K], items[1:K]):
        if compare(x, y, N if not isinstance(x, GrowthExpr) or not isinstance(y, GrowthExpr)
                   else None).relation not in (Relation.EQUIV, Relation.STRICTLY_LESS):
            raise GrowthError("stage targets must be nondecreasing")
    return CompositePlan(tuple(build_stage(t, N, slack=slack) for t in items[:K]))


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------


def plan_to_dict(plan: ConstructionPlan) -> dict:
    return {
        "L": plan.L,
        "N": plan.N,
        "target": growth_to_dict(plan.target),
        "e": [str(x) for x in plan.e],
        "factors": {f"a_{i}": list(plan.factors[i - 2]) for i in range(2, plan.L + 2)},
        "d": [str(x) for x in plan.d],
        "b1": None if plan.b1 is None else str(plan.b1),
        "b2": None if plan.b2 is None else str(plan.b2),
    }


def plan_from_dict(data: dict) -> ConstructionPlan:
    L, N = int(data["L"]), int(data["N"])
    factors = tuple(tuple(int(x) for x in data["factors"][f"a_{i}"]) for i in range(2, L + 2))
    e = tuple(int(x) for x in data["e"])
    d = tuple(int(x) for x in data["d"])
    b1 = None if data.get("b1") is None else Fraction(data["b1"])
    b2 = None if data.get("b2") is None else Fraction(data["b2"])
    return ConstructionPlan(L, growth_from_dict(data["target"]), N, e, factors, d, (), b1, b2)


def plan_to_csv(plan: ConstructionPlan) -> str:
    head = ["n", "e"] + [f"a_{i}" for i in range(2, plan.L + 2)] + ["d"]
    lines = [",".join(head)]
    for n in range(1, plan.N + 1):
        row = [n, plan.e_at(n), *plan.factor_row(n), plan.d_at(n)]
        lines.append(",".join(str(x) for x in row))
    return "\n".join(lines) + "\n"
