"""
Realising the class of n^2
==========================

A plan fixes the jump factors a_2, ..., a_{L+1}; counting the coding words
of the resulting plane homeomorphism gives c(n), which is then checked
against n^2 on the syndetic set 8N.
"""

# %%
from fractions import Fraction

from growthforge.coder import count_table, lower_bound, upper_bound, verify_syndetic_bounds
from growthforge.flexibility import build_sequences
from growthforge.growth import GrowthExpr

N = 160
plan = build_sequences(GrowthExpr(2), 3, N)
print("L =", plan.L, " e(n) for n <= 12:", plan.e[:12])

# %%
# Exact word counts.  Every length-n word is a window over one admissible
# jump tuple, so counting is pattern enumeration with exact deduplication.
counts = count_table(plan, N)
print(" n      c(n)   c(n)/n^2")
for n in range(8, N + 1, 24):
    print(f"{n:3d} {counts[n]:9d}   {float(Fraction(counts[n], n * n)):.4f}")

# %%
# The counts sit between the combinatorial sandwich bounds.
n = 8 * 16
print(lower_bound(plan, n), "<=", counts[n], "<=", upper_bound(plan, n))

# %%
# Constant-factor check on 8N, then transfer to all n by bounded jumps.
rep = verify_syndetic_bounds(plan, counts, N)
print("d1 =", rep.d1, " d2 =", rep.d2, " verdict:", rep.verdict.relation.name)
