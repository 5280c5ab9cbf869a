"""
Spin states seen from different frames
======================================

The same spinor can read as "up" along one axis and "down" along another.
This script builds the states along three coplanar analysers and shows the
identity |n2,-> = |n3,+>.
"""

# %%
import math

import numpy as np

from spinframe import DOWN, UP, Direction, decompose, inner_product, ray_equivalent, spin_state

n1 = Direction.planar(0.0)
n2 = Direction.planar(math.pi / 2)   # rotated a quarter turn clockwise
n3 = Direction.planar(-math.pi / 2)  # a quarter turn the other way

for name, d in (("n1", n1), ("n2", n2), ("n3", n3)):
    for s, label in ((UP, "+"), (DOWN, "-")):
        print(f"|{name},{label}> =", np.round(spin_state(d, s).vector.real, 6))

# %%
# |n1,+> written in the n2 and n3 bases: half-angle coefficients cos, sin of pi/4
print("n1+ in n2 basis:", np.round(np.real(decompose(n1, n2)), 6))
print("n1+ in n3 basis:", np.round(np.real(decompose(n1, n3)), 6))

# %%
# the ambiguity: one ray, labelled '-' from n2 and '+' from n3
a, b = spin_state(n2, DOWN), spin_state(n3, UP)
print("|n2,-> == |n3,+> componentwise:", a.allclose(b))
print("<n2,+|n3,+> =", abs(inner_product(spin_state(n2, UP), spin_state(n3, UP))))

# %%
# (1, 0) and (-1, 0) are the same physical state
from spinframe import Spinor

print("(1,0) ~ (-1,0):", ray_equivalent(Spinor(1, 0), Spinor(-1, 0)))
