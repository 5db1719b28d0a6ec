"""Growth-algebra laws checked on random polylog pairs (shared by the property
tests and the acceptance gate)."""
import random
from fractions import Fraction

from growthforge.growth import (
    GrowthError,
    GrowthExpr,
    Relation,
    Syndetic,
    TabulatedGrowth,
    check_bjp,
    check_lip,
    compare,
    lip_power_extension,
    ordered_chain,
    pi_E,
    pointwise_max,
    sup_pair,
    syndetic_transfer,
)

HORIZON = 64
LIP_HORIZON = 128


def random_expr(rng: random.Random) -> GrowthExpr:
    while True:
        t = Fraction(rng.randint(0, 8), 2)
        s = Fraction(rng.randint(-2, 4), 2)
        u = Fraction(rng.randint(-2, 2), 2)
        r = rng.choice([Fraction(0)] * 4 + [Fraction(1, 8), Fraction(1, 2)])
        if r > 0 or (t, s, u) >= (0, 0, 0):
            return GrowthExpr(t, s, u, r)


def corpus(n: int, seed: int):
    rng = random.Random(seed)
    return [(random_expr(rng), random_expr(rng)) for _ in range(n)]


def check_sup(a, b):
    ta, tb = a.tabulate(HORIZON), b.tabulate(HORIZON)
    sup = sup_pair(ta, tb)
    v = compare(sup, pointwise_max([ta, tb], HORIZON), HORIZON)
    assert v.relation is Relation.EQUIV and v.c1 == v.c2 == 1
    s = sup_pair(a, b)
    assert compare(a, s).leq and compare(b, s).leq
    assert s in (a, b)


def check_lip_consequences(a):
    lip = check_lip(a, 2)
    if lip is None:
        assert a.r > 0
        return
    assert check_bjp(a) is not None and pi_E(a).value == 0
    tab = a.tabulate(2 * LIP_HORIZON)
    if check_lip(tab, 2, LIP_HORIZON) is not None:
        assert check_bjp(tab, LIP_HORIZON) is not None
        assert pi_E(tab, LIP_HORIZON).value <= 0.05


def check_lip_extension(a):
    if check_lip(a, 2) is None:
        return
    tab = a.tabulate(8 * HORIZON)
    for m in (3, 4, 8):
        ext = lip_power_extension(a, m)
        lo, hi = ext.chain_bounds
        assert lo <= ext.witnesses[0] <= ext.witnesses[1] <= hi
        # the witnesses bound the actual ratios
        assert all(ext.witnesses[0] <= tab[m * n] / tab[n] <= ext.witnesses[1]
                   for n in range(1, HORIZON + 1))


def check_chain(a, b):
    fam = [a.tabulate(HORIZON), b.tabulate(HORIZON), a.tabulate(HORIZON)]
    chain = ordered_chain(fam)
    for k in range(len(fam)):
        assert chain[k] == pointwise_max(fam[:k + 1], HORIZON)
    for x, y in zip(chain.chain, chain.chain[1:]):
        assert all(p <= q for p, q in zip(x.values, y.values))


def check_syndetic(a):
    b = a.tabulate(HORIZON + 8)
    # agrees with b on 8N and takes the next S-value in between
    a2 = TabulatedGrowth(b[min(-(-n // 8) * 8, HORIZON)] for n in range(1, HORIZON + 1))
    S = Syndetic(8, 8)
    assert all(a2[s] == b[s] for s in S.points(HORIZON))
    v = syndetic_transfer(a2, b, S, HORIZON)
    assert v.relation is Relation.EQUIV
    for n in range(1, HORIZON + 1):
        assert v.c1 * b[n] <= a2[n] <= v.c2 * b[n]


def check_pair(a, b):
    check_sup(a, b)
    check_chain(a, b)
    for x in (a, b):
        check_lip_consequences(x)
        check_lip_extension(x)
        check_syndetic(x)


def run_corpus(n: int = 1000, seed: int = 20260101) -> list:
    """Failures as (index, a, b, error) over n seeded pairs."""
    failures = []
    for i, (a, b) in enumerate(corpus(n, seed)):
        try:
            check_pair(a, b)
        except (AssertionError, GrowthError) as exc:
            failures.append((i, str(a), str(b), repr(exc)))
    return failures
