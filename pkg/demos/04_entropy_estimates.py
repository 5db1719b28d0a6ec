"""
Entropy of finite systems
=========================

Spanning and separated set counts under the Bowen metric, read off along
a ladder of scales.  Three desk-scale systems: a doubling map, a rigid
rotation and a compactified translation.
"""

# %%
import math

from growthforge.estimator import (
    cover_counts, cover_sample, crossing_covers, doubling_map, estimate_class,
    rotation, sample_system, translation_toy,
)

_, sep = sample_system(doubling_map(1024), 16)
est = estimate_class(sep)
print(f"doubling: h = {float(est.h.value):.4f} (log 2 = {math.log(2):.4f})")

# %%
for s in sample_system(rotation(16), 16):
    e = estimate_class(s)
    print(f"rotation {s.method}: class {e.fitted}, h = {e.h.value}, h_pol = {e.h_pol.value}")

# %%
# The translation toy: one wandering set crossed once per orbit.  A cover
# by that set and its complement sees exactly n+1 distinct itineraries.
toy = translation_toy(160)
(single,) = crossing_covers(toy, 160, radii=(0,))
print("first cover counts:", cover_counts(toy, single, 10))
e = estimate_class(cover_sample(toy, crossing_covers(toy, 160), 128))
print(f"translation: class {e.fitted}, h_pol = {float(e.h_pol.value):.3f}")
