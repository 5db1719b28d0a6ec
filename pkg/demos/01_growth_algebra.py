"""
Orders of growth as objects
===========================

Growth classes are compared up to constant factors.  Closed-form classes
are decided symbolically, tabulated prefixes empirically with exact
rational witnesses.
"""

# %%
# Closed forms: n^t (log n)^s (log log n)^u e^(rn).
from fractions import Fraction

from growthforge.growth import (
    GrowthExpr, TabulatedGrowth, check_bjp, check_lip, compare,
    lip_power_extension, ordered_chain, pi_E, pi_P,
)

square = GrowthExpr(2)
square_log = GrowthExpr(2, 1)
expo = GrowthExpr(r=Fraction(1, 2))

for a, b in [(square, square_log), (square_log, square), (expo, square)]:
    print(f"{a} vs {b}: {compare(a, b).relation.name}")

# %%
# A tabulated prefix of 4n^2 + n sits in the class of n^2.  The witnesses
# c1, c2 bound the ratio over the whole horizon.
tab = TabulatedGrowth(4 * n * n + n for n in range(1, 129))
v = compare(tab, square, 128)
print(v.relation.name, v.c1, v.c2)

# %%
# Bounded jumps and linear invariance.  The exponential class has bounded
# jumps (constant e^(1/2)) yet fails LIP, which is why its exponential
# projection is positive.
for a in (square, square_log, expo):
    lip = check_lip(a)
    lip = "fails" if lip is None else f"[{float(lip[0]):.3f}, {float(lip[1]):.3f}]"
    print(f"{a}: BJP {float(check_bjp(a)):.3f}, LIP {lip}, "
          f"pi_E {pi_E(a).value}, pi_P {pi_P(a).value}")

# %%
# LIP at m=2 extends to every m through a chain of doublings.
ext = lip_power_extension(square_log, 8)
print("a(8n)/a(n) within", [float(x) for x in ext.witnesses],
      "chain bounds", [float(x) for x in ext.chain_bounds])

# %%
# Suprema of ordered families: the running pointwise max.
chain = ordered_chain([square, square_log, GrowthExpr(3)])
print("chain:", ", ".join(str(c) for c in chain.chain))
