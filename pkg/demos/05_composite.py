"""
Stacking stages
===============

Stages built for an ordered chain of targets live on disjoint alphabets;
the composite count is the sum minus the shared all-infinity word, so the
largest stage sets the class.
"""

# %%
from growthforge.coder import count_table_composite
from growthforge.flexibility import build_composite, build_sequences, plan_to_dict
from growthforge.growth import GrowthExpr, compare, ordered_chain

N = 120
chain = ordered_chain([GrowthExpr(2), GrowthExpr(3)])
comp = build_composite(chain, 2, N)
counts = count_table_composite(comp, N)
v = compare(counts.as_growth(), GrowthExpr(3), N)
print("composite vs n^3:", v.relation.name, v.c1, v.c2)

# %%
# Each stage is exactly the plan it would be on its own.
alone = build_sequences(GrowthExpr(3), 3, N)
print("stage 2 independent:", plan_to_dict(comp.stages[1]) == plan_to_dict(alone))
