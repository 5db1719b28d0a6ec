"""Orders of growth: representatives, comparison, suprema and projections.

A class [a(n)] is handled through one of two kinds of representative:

* :class:`GrowthExpr` -- the closed family
  ``n^t * (1+log n)^s * (1+log(1+log n))^u * exp(r*n)``, decided symbolically;
* :class:`TabulatedGrowth` -- a finite nondecreasing prefix a(1..N) of exact
  rationals, decided empirically at a stated horizon.

Empirical verdicts are finite-horizon statements.  They always carry the
horizon and the witness constants so they can be re-checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import mpmath
import numpy as np

MIN_HORIZON = 16
DEFAULT_SLACK = Fraction(64)
TREND_FACTOR = 2.0
# relative outward rounding applied to witnesses derived from floats
_FLOAT_PAD = 1e-9


class GrowthError(ValueError):
    """Raised when an operation's precondition on its inputs fails."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(str(x)) if isinstance(x, str) else Fraction(x)


def _log(v) -> float:
    """Natural log of a positive int / Fraction, safe for huge values."""
    if isinstance(v, Fraction):
        return math.log(v.numerator) - math.log(v.denominator)
    return math.log(v)


def _mpf_to_fraction(x: mpmath.mpf) -> Fraction:
    man, exp = x.man_exp
    man = int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


# ---------------------------------------------------------------------------
# Representatives
# ---------------------------------------------------------------------------


# envelope prefixes are N-independent, so the longest one serves every request
_TAB_CACHE: dict = {}


@dataclass(frozen=True)
class GrowthExpr:
    """``n^t (1+log n)^s (1+log(1+log n))^u e^{r n}`` with rational exponents.

    The represented sequence is the nondecreasing envelope of that formula,
    so it is a member of the space of nondecreasing sequences from n = 1 on.
    """

    t: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    u: Fraction = Fraction(0)
    r: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("t", "s", "u", "r"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.r < 0:
            raise GrowthError("exponential rate r must be >= 0")
        if self.r == 0 and (self.t, self.s, self.u) < (0, 0, 0):
            raise GrowthError(
                f"{self} is eventually decreasing; not an order of growth")

    @property
    def key(self) -> tuple:
        """Lexicographic decision key: exp rate first, then t, s, u."""
        return (self.r, self.t, self.s, self.u)

    @property
    def horizon(self) -> Optional[int]:
        return None

    @property
    def monotone(self) -> bool:
        # with all exponents >= 0 the raw formula is already nondecreasing
        return self.t >= 0 and self.s >= 0 and self.u >= 0

    def _raw_log(self, n: np.ndarray) -> np.ndarray:
        n = n.astype(float)
        ln = np.log(n)
        out = float(self.t) * ln + float(self.r) * n
        if self.s:
            out = out + float(self.s) * np.log1p(ln)
        if self.u:
            out = out + float(self.u) * np.log1p(np.log1p(ln))
        return out

    def log_values(self, N: int) -> np.ndarray:
        raw = self._raw_log(np.arange(1, N + 1))
        return raw if self.monotone else np.maximum.accumulate(raw)

    def exact_value(self, n: int) -> Optional[Fraction]:
        if self.s == 0 and self.u == 0 and self.r == 0 and self.t.denominator == 1:
            return Fraction(n ** int(self.t))
        return None

    def tabulate(self, N: int, prec: int = 96) -> "TabulatedGrowth":
        """Exact-rational prefix of length N (mpmath evaluation when irrational)."""
        if self.exact_value(1) is not None:
            return TabulatedGrowth([n ** int(self.t) for n in range(1, N + 1)])
        vals, best = _TAB_CACHE.get((self, prec), ([], None))
        if len(vals) < N:
            best = self._extend(vals, best, N, prec)
            _TAB_CACHE[(self, prec)] = (vals, best)
        return TabulatedGrowth(vals[:N])

    def _extend(self, vals: list, best, N: int, prec: int):
        """Append terms len(vals)+1..N to vals; returns the running raw max."""
        with mpmath.workprec(prec):
            t, s, u, r = (mpmath.mpf(x.numerator) / x.denominator
                          for x in (self.t, self.s, self.u, self.r))
            for n in range(len(vals) + 1, N + 1):
                ln = mpmath.log(n)
                v = mpmath.power(n, t) * mpmath.exp(r * n)
                if s:
                    v *= mpmath.power(1 + ln, s)
                if u:
                    v *= mpmath.power(1 + mpmath.log(1 + ln), u)
                best = v if best is None or v > best else best
                vals.append(_mpf_to_fraction(best))
        return best

    def __str__(self) -> str:
        def power(base, x):
            if x == 1:
                return base
            return f"{base}^{x}" if x.denominator == 1 and x > 0 else f"{base}^({x})"

        parts = [power(b, x) for b, x in (("n", self.t), ("log(n)", self.s),
                                          ("loglog(n)", self.u)) if x]
        if self.r:
            parts.append("e^n" if self.r == 1 else f"e^({self.r}*n)")
        return "[" + ("*".join(parts) or "1") + "]"


class TabulatedGrowth:
    """Finite prefix ``a(1), ..., a(N)`` of a nondecreasing positive sequence."""

    __slots__ = ("values", "_logs")

    def __init__(self, values: Iterable):
        vals = tuple(v if isinstance(v, int) else _frac(v) for v in values)
        if len(vals) < MIN_HORIZON:
            raise GrowthError(
                f"tabulated sequence needs at least {MIN_HORIZON} terms, got {len(vals)}")
        for i, v in enumerate(vals):
            if v <= 0:
                raise GrowthError(f"non-positive value at n={i + 1}")
            if i and v < vals[i - 1]:
                raise GrowthError(f"sequence decreases at n={i + 1}")
        self.values = vals
        self._logs = None

    @property
    def horizon(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int):
        """1-based access, ``a[n]``."""
        if not 1 <= n <= len(self.values):
            raise IndexError(n)
        return self.values[n - 1]

    def __eq__(self, other) -> bool:
        return isinstance(other, TabulatedGrowth) and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        head = ", ".join(str(v) for v in self.values[:4])
        return f"TabulatedGrowth([{head}, ...], N={len(self.values)})"

    def log_values(self, N: int) -> np.ndarray:
        if N > len(self.values):
            raise GrowthError(f"horizon {N} exceeds tabulated length {len(self.values)}")
        if self._logs is None:
            self._logs = np.array([_log(v) for v in self.values])
        return self._logs[:N]

    def exact_value(self, n: int) -> Fraction:
        return Fraction(self.values[n - 1])

    def truncate(self, N: int) -> "TabulatedGrowth":
        return TabulatedGrowth(self.values[:N])


Growth = Union[GrowthExpr, TabulatedGrowth]


def as_tabulated(a: Growth, N: int) -> TabulatedGrowth:
    if isinstance(a, GrowthExpr):
        return a.tabulate(N)
    if len(a) < N:
        raise GrowthError(f"need {N} terms, representative has {len(a)}")
    return a if len(a) == N else a.truncate(N)


def _available(a: Growth) -> float:
    return math.inf if a.horizon is None else a.horizon


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


class Relation(Enum):
    EQUIV = "EQUIV"
    STRICTLY_LESS = "STRICTLY_LESS"
    STRICTLY_GREATER = "STRICTLY_GREATER"
    NO_VERDICT = "NO_VERDICT"


class Mode(Enum):
    SYMBOLIC = "SYMBOLIC"
    EMPIRICAL = "EMPIRICAL"


@dataclass(frozen=True)
class GrowthClassVerdict:
    relation: Relation
    c1: Optional[Fraction]
    c2: Optional[Fraction]
    horizon: Optional[int]
    mode: Mode

    @property
    def leq(self) -> bool:
        return self.relation in (Relation.EQUIV, Relation.STRICTLY_LESS)

    @property
    def geq(self) -> bool:
        return self.relation in (Relation.EQUIV, Relation.STRICTLY_GREATER)

    def to_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "c1": None if self.c1 is None else str(self.c1),
            "c2": None if self.c2 is None else str(self.c2),
            "horizon": self.horizon,
            "mode": self.mode.value,
        }


class Projection(NamedTuple):
    """Value of an entropy projection; ``estimate`` marks finite-horizon fits."""

    value: Union[Fraction, float]
    estimate: bool

    def __float__(self) -> float:
        return float(self.value)


# ---------------------------------------------------------------------------
# Ratio machinery shared by the empirical checks
# ---------------------------------------------------------------------------


def _check_horizon(horizon: int) -> None:
    if horizon < MIN_HORIZON:
        raise GrowthError(f"horizon must be >= {MIN_HORIZON}, got {horizon}")


def _window(horizon: int, start: float = 0.5) -> tuple[int, int]:
    return max(1, math.ceil(horizon * start)), horizon


def trend_factor(logs: np.ndarray) -> float:
    """Geometric mean of the second half over the first half of a log-series."""
    m = len(logs) // 2
    if m == 0:
        return 1.0
    return math.exp(float(np.mean(logs[len(logs) - m:]) - np.mean(logs[:m])))


def _ratio_witnesses(num: Sequence, den: Sequence, logs: np.ndarray):
    """min / max of num/den; exact when both sides are exact, padded otherwise."""
    if all(x is not None for x in num) and all(x is not None for x in den):
        ratios = [Fraction(x) / Fraction(y) for x, y in zip(num, den)]
        return min(ratios), max(ratios)
    lo, hi = float(np.min(logs)), float(np.max(logs))
    return (Fraction(math.exp(lo) * (1 - _FLOAT_PAD)),
            Fraction(math.exp(hi) * (1 + _FLOAT_PAD)))


def _exact_prefix(a: Growth, ns: Iterable[int]) -> list:
    return [a.exact_value(n) for n in ns]


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def compare(a: Growth, b: Growth, horizon: Optional[int] = None, *,
            slack: Fraction = DEFAULT_SLACK, window: float = 0.5) -> GrowthClassVerdict:
    """Decide the order relation between [a] and [b].

    Two :class:`GrowthExpr` are compared lexicographically on (r, t, s, u).
    Otherwise the ratio a(n)/b(n) is examined on the window
    ``[window*horizon, horizon]``: bounded spread (<= slack) with no trend
    beyond a factor 2 gives EQUIV.  The witnesses c1, c2 are the extreme
    ratios over all of ``[1, horizon]``, so c1*b(n) <= a(n) <= c2*b(n) holds
    at every tabulated n.
    """
    if isinstance(a, GrowthExpr) and isinstance(b, GrowthExpr):
        if a.key == b.key:
            return GrowthClassVerdict(Relation.EQUIV, Fraction(1), Fraction(1), None,
                                      Mode.SYMBOLIC)
        rel = Relation.STRICTLY_LESS if a.key < b.key else Relation.STRICTLY_GREATER
        return GrowthClassVerdict(rel, None, None, None, Mode.SYMBOLIC)

    if horizon is None:
        horizon = int(min(_available(a), _available(b)))
    _check_horizon(horizon)
    if horizon > min(_available(a), _available(b)):
        raise GrowthError("horizon exceeds the available data")

    logs = a.log_values(horizon) - b.log_values(horizon)
    lo, hi = _window(horizon, window)
    w = logs[lo - 1:hi]
    spread = math.exp(float(w.max() - w.min()))
    trend = trend_factor(w)

    ns = range(1, horizon + 1)
    c1, c2 = _ratio_witnesses(_exact_prefix(a, ns), _exact_prefix(b, ns), logs)
    if spread <= slack and 1 / TREND_FACTOR <= trend <= TREND_FACTOR:
        rel = Relation.EQUIV
    elif trend < 1 / TREND_FACTOR or (spread > slack and w[-1] < w[0]):
        rel = Relation.STRICTLY_LESS
    elif trend > TREND_FACTOR or (spread > slack and w[-1] > w[0]):
        rel = Relation.STRICTLY_GREATER
    else:
        rel = Relation.NO_VERDICT
    return GrowthClassVerdict(rel, c1, c2, horizon, Mode.EMPIRICAL)


def pointwise_max(reps: Sequence[Growth], N: int) -> TabulatedGrowth:
    tabs = [as_tabulated(x, N) for x in reps]
    return TabulatedGrowth(max(col) for col in zip(*(t.values for t in tabs)))


def _common_horizon(reps: Sequence[Growth]) -> int:
    lengths = {x.horizon for x in reps if x.horizon is not None}
    if len(lengths) > 1:
        raise GrowthError(f"incompatible horizons {sorted(lengths)}")
    return lengths.pop()


def sup_pair(a: Growth, b: Growth) -> Growth:
    """sup{[a],[b]} = [max(a, b)] at representative level."""
    if isinstance(a, GrowthExpr) and isinstance(b, GrowthExpr):
        return a if a.key >= b.key else b
    return pointwise_max([a, b], _common_horizon([a, b]))


@dataclass(frozen=True)
class ChainSup:
    """Ordered chain [a_1] <= [a_2] <= ... of prefix maxima of a family."""

    chain: tuple

    def __len__(self) -> int:
        return len(self.chain)

    def __getitem__(self, k: int) -> Growth:
        return self.chain[k]

    @property
    def top(self) -> Growth:
        return self.chain[-1]


def ordered_chain(gamma: Sequence[Growth]) -> ChainSup:
    if not gamma:
        raise GrowthError("ordered_chain needs a nonempty family")
    out = [gamma[0]]
    for g in gamma[1:]:
        out.append(sup_pair(out[-1], g))
    return ChainSup(tuple(out))


def _bjp_expr(a: GrowthExpr) -> Fraction:
    c = Fraction(2) ** a.t if (a.t >= 0 and a.t.denominator == 1) else None
    if c is not None and a.s == 0 and a.u == 0 and a.r == 0:
        return c
    bound = (2.0 ** max(float(a.t), 0.0)
             * (1 + math.log(2)) ** max(float(a.s), 0.0)
             * (1 + math.log1p(math.log(2))) ** max(float(a.u), 0.0)
             * math.exp(float(a.r)))
    return Fraction(bound * (1 + _FLOAT_PAD))


def check_bjp(a: Growth, horizon: Optional[int] = None) -> Optional[Fraction]:
    """Bounded-jump constant C with a(n+1) <= C a(n), or None when unbounded.

    Empirically C is the largest one-step ratio below the horizon; the check
    fails when the one-step ratios trend upward by more than a factor 2, or
    when their maximum sits in the final quarter while still increasing.
    """
    if isinstance(a, GrowthExpr):
        return _bjp_expr(a)
    if horizon is None:
        horizon = a.horizon
    _check_horizon(horizon)
    logs = a.log_values(horizon)
    q = np.diff(logs)  # log a(n+1)/a(n), n = 1..horizon-1
    if trend_factor(q) > TREND_FACTOR:
        return None
    k = int(np.argmax(q))
    tail = q[(3 * len(q)) // 4:]
    if k >= (3 * len(q)) // 4 and len(tail) > 1 and np.all(np.diff(tail) >= 0) \
            and tail[-1] > tail[0]:
        return None
    ratios = [a.exact_value(n + 1) / a.exact_value(n) for n in range(1, horizon)]
    return max(ratios)


def _lip_expr(a: GrowthExpr, m: int) -> Optional[tuple[Fraction, Fraction]]:
    if a.r > 0:
        return None
    if a.s == 0 and a.u == 0 and a.t.denominator == 1:
        c = Fraction(m) ** a.t
        return c, c
    lm = math.log(m)
    base = float(m) ** float(a.t)
    s_lo, s_hi = sorted([1.0, (1 + lm) ** float(a.s)])
    u_lo, u_hi = sorted([1.0, (1 + math.log1p(lm)) ** float(a.u)])
    return (Fraction(base * s_lo * u_lo * (1 - _FLOAT_PAD)),
            Fraction(base * s_hi * u_hi * (1 + _FLOAT_PAD)))


def check_lip(a: Growth, m: int = 2, horizon: Optional[int] = None, *,
              slack: Fraction = DEFAULT_SLACK) -> Optional[tuple[Fraction, Fraction]]:
    """Witnesses c1 <= a(mn)/a(n) <= c2 for n <= horizon, or None.

    Needs tabulated data up to m*horizon.  Absent when the ratio spread
    exceeds ``slack`` or trends by more than a factor 2 across the tail window.
    """
    if m < 2:
        raise GrowthError("LIP needs an integer m >= 2")
    if isinstance(a, GrowthExpr):
        return _lip_expr(a, m)
    if horizon is None:
        horizon = a.horizon // m
    _check_horizon(horizon)
    if m * horizon > a.horizon:
        raise GrowthError(f"check_lip needs data up to {m * horizon}, have {a.horizon}")
    logs = a.log_values(m * horizon)
    idx = np.arange(1, horizon + 1)
    r = logs[m * idx - 1] - logs[idx - 1]
    lo, hi = _window(horizon)
    w = r[lo - 1:hi]
    spread = math.exp(float(r.max() - r.min()))
    if spread > slack or not (1 / TREND_FACTOR <= trend_factor(w) <= TREND_FACTOR):
        return None
    ratios = [a.exact_value(m * n) / a.exact_value(n) for n in range(1, horizon + 1)]
    return min(ratios), max(ratios)


@dataclass(frozen=True)
class LipExtension:
    m: int
    witnesses: tuple[Fraction, Fraction]
    chain_bounds: tuple[Fraction, Fraction]
    mode: Mode


def lip_power_extension(a: Growth, m: int, horizon: Optional[int] = None, *,
                        slack: Fraction = DEFAULT_SLACK) -> LipExtension:
    """Extend LIP from m=2 to arbitrary m through the squaring chain.

    a(2^k n)/a(n) is a product of k doubling ratios, and
    a(2^{floor log2 m} n) <= a(mn) <= a(2^{ceil log2 m} n), so the m-ratio
    lies in [c1^floor(log2 m), c2^ceil(log2 m)].
    """
    if m < 2:
        raise GrowthError("LIP needs an integer m >= 2")
    k_hi = max(1, math.ceil(math.log2(m)))
    k_lo = int(math.floor(math.log2(m)))
    if isinstance(a, GrowthExpr):
        base = check_lip(a, 2)
        if base is None:
            raise GrowthError(f"{a} fails LIP at m=2; extension precondition violated")
        got = check_lip(a, m)
        mode = Mode.SYMBOLIC
        h2 = None
    else:
        if horizon is None:
            horizon = a.horizon // 2 ** k_hi
        h2 = 2 ** (k_hi - 1) * horizon
        base = check_lip(a, 2, h2, slack=slack)
        if base is None:
            raise GrowthError("LIP fails at m=2; extension precondition violated")
        got = check_lip(a, m, horizon, slack=slack)
        mode = Mode.EMPIRICAL
    c1, c2 = base
    bounds = (c1 ** k_lo, c2 ** k_hi)
    if got is None:
        raise GrowthError(f"LIP at m={m} not confirmed")
    if mode is Mode.SYMBOLIC:
        # closed-form bounds at m are loose; both intervals are valid, so intersect
        got = (max(got[0], bounds[0]), min(got[1], bounds[1]))
    if got[0] > got[1] or got[0] < bounds[0] or got[1] > bounds[1]:
        raise GrowthError(f"LIP at m={m} not confirmed within the squaring-chain bounds")
    return LipExtension(m, got, bounds, mode)


def _tail_fit(x: np.ndarray, y: np.ndarray) -> float:
    if np.all(y == y[0]):
        return 0.0
    xm = x - x.mean()
    return float(np.dot(xm, y - y.mean()) / np.dot(xm, xm))


def pi_E(a: Growth, horizon: Optional[int] = None, *,
         window: Optional[tuple[int, int]] = None) -> Projection:
    """Exponential projection: the rate r, or a tail-window estimate.

    The estimate is the least-squares slope of log a(n) against n on the
    tail half-window, which is insensitive to the constant factor chosen
    for the representative.
    """
    if isinstance(a, GrowthExpr):
        return Projection(a.r, False)
    lo, hi = window or _window(horizon or a.horizon)
    y = a.log_values(hi)[lo - 1:hi]
    slope = _tail_fit(np.arange(lo, hi + 1, dtype=float), y)
    return Projection(max(slope, 0.0), True)


def pi_P(a: Growth, horizon: Optional[int] = None, *,
         window: Optional[tuple[int, int]] = None) -> Projection:
    """Polynomial projection inf{t : [a] <= [n^t]}."""
    if isinstance(a, GrowthExpr):
        if a.r > 0:
            return Projection(math.inf, False)
        return Projection(max(a.t, Fraction(0)), False)
    lo, hi = window or _window(horizon or a.horizon)
    y = a.log_values(hi)[lo - 1:hi]
    slope = _tail_fit(np.log(np.arange(lo, hi + 1, dtype=float)), y)
    return Projection(max(slope, 0.0), True)


@dataclass(frozen=True)
class Syndetic:
    """Arithmetic progression {offset + k*gap : k >= 0} inside the positive integers."""

    gap: int
    offset: int = 0

    def __post_init__(self):
        if self.gap < 1:
            raise GrowthError("syndetic gap must be >= 1")

    def points(self, horizon: int) -> list[int]:
        start = self.offset if self.offset >= 1 else self.offset + self.gap * (
            (1 - self.offset + self.gap - 1) // self.gap)
        return list(range(start, horizon + 1, self.gap))


def syndetic_transfer(a: Growth, b: Growth, S: Syndetic, horizon: int,
                      bjp: Optional[Fraction] = None) -> GrowthClassVerdict:
    """Extend agreement c1 b <= a <= c2 b from S to all n <= horizon using BJP of a.

    For n between consecutive points of S the bounded jump bridges the gap:
    a(n) >= a(s)/C^gap with s >= n the next point, and a(n) <= C^gap a(s')
    with s' <= n the previous point.  Outside the first/last point of S the
    finitely many direct ratios are folded into the witnesses.
    """
    _check_horizon(horizon)
    C = bjp if bjp is not None else check_bjp(a, horizon)
    if C is None:
        raise GrowthError("syndetic transfer needs a representative with the BJP")
    pts = S.points(horizon)
    if not pts:
        raise GrowthError("syndetic set has no points in the window")
    av = [a.exact_value(n) for n in range(1, horizon + 1)]
    bv = b.tabulate(horizon).values if isinstance(b, GrowthExpr) else b.values[:horizon]
    ratio = [Fraction(x) / Fraction(y) for x, y in zip(av, bv)]
    c1 = min(ratio[s - 1] for s in pts)
    c2 = max(ratio[s - 1] for s in pts)
    bridge = Fraction(C) ** S.gap
    lo, hi = c1 / bridge, c2 * bridge
    edge = [ratio[n - 1] for n in range(1, horizon + 1) if n < pts[0] or n > pts[-1]]
    if edge:
        lo, hi = min(lo, min(edge)), max(hi, max(edge))
    # the bridge is a proof; re-check it on the data anyway
    assert all(lo <= r <= hi for r in ratio), "syndetic bridge violated"
    return GrowthClassVerdict(Relation.EQUIV, lo, hi, horizon, Mode.EMPIRICAL)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def growth_from_dict(spec: dict) -> Growth:
    family = spec.get("family")
    if family == "polylog":
        return GrowthExpr(*(_frac(spec.get(k, "0")) for k in ("t", "s", "u", "r")))
    if family == "tabulated":
        return TabulatedGrowth(
            int(v) if isinstance(v, int) or (isinstance(v, str) and v.lstrip("-").isdigit())
            else _frac(v) for v in spec["values"])
    raise GrowthError(f"unknown growth family {family!r}")


def growth_to_dict(a: Growth) -> dict:
    if isinstance(a, GrowthExpr):
        return {"family": "polylog", "t": str(a.t), "s": str(a.s),
                "u": str(a.u), "r": str(a.r)}
    return {"family": "tabulated", "values": [str(v) for v in a.values]}


def growth_to_csv(a: Growth, N: Optional[int] = None) -> str:
    tab = as_tabulated(a, N or a.horizon)
    lines = ["n,value"] + [f"{n},{v}" for n, v in enumerate(tab.values, 1)]
    return "\n".join(lines) + "\n"
