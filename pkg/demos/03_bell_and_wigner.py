"""
Bell and Wigner inequalities
============================

Deterministic preassigned outcomes (the eight strategies over three
analysers) always satisfy both inequalities. The singlet correlations do not.
"""

# %%
import math

from spinframe import Direction, bell_original, enumerate_lhv_strategies, wigner_inequality
from spinframe.samplers import bell_experiment, in_lhv_polytope

angles = (0.0, math.pi / 3, 2 * math.pi / 3)
for row in enumerate_lhv_strategies([Direction.planar(a) for a in angles]):
    rep = bell_original(row.e_ab, row.e_ac, row.e_bc)
    print(row.strategy.signs, (row.e_ab, row.e_ac, row.e_bc), "satisfied" if rep.satisfied else "VIOLATED")

# %%
e = [-math.cos(t) for t in (math.pi / 3, 2 * math.pi / 3, math.pi / 3)]
print("quantum:", bell_original(*e))
print("inside the LHV polytope?", in_lhv_polytope(*e))
print("Wigner at (2pi/3, pi/3, pi/3):", wigner_inequality(2 * math.pi / 3, math.pi / 3, math.pi / 3))

# %%
for model in ("quantum", "lhv-vector", "lhv-enumerate"):
    r = bell_experiment(angles, 10**6, model, master_seed=7)
    print(f"{model:14s} E=({r.e_ab:+.4f}, {r.e_ac:+.4f}, {r.e_bc:+.4f})  Bell margin {r.bell.margin:+.4f}")
