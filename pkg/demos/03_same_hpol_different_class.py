"""
Equal polynomial entropy, different class
=========================================

n^2 and n^2 log n share the polynomial projection 2, yet the ratio of
their word counts keeps growing like log n.
"""

# %%
from fractions import Fraction
import math

from growthforge.coder import count_table
from growthforge.flexibility import build_sequences, choose_L
from growthforge.growth import GrowthExpr, pi_P

N = 160
counts = {}
for target in (GrowthExpr(2), GrowthExpr(2, 1)):
    plan = build_sequences(target, choose_L(target, N), N)
    counts[str(target)] = count_table(plan, N)
    print(f"{target}: fitted h_pol = {pi_P(counts[str(target)].as_growth()).value:.4f}")

# %%
c1, c2 = counts["[n^2]"], counts["[n^2*log(n)]"]
print(" n   c2/c1   log n")
for n in (16, 40, 80, 120, 160):
    print(f"{n:3d}  {float(Fraction(c2[n], c1[n])):.3f}  {math.log(n):.3f}")
