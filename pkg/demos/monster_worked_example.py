"""
The Monster model: blocks, the worked transfer example, and a product in G
==========================================================================
"""

import random

from borcherds_group.models import build_monster
from borcherds_group.qseries import j_coefficients
from borcherds_group.sampling import random_element
from borcherds_group.semidirect import g_inv, g_mul
from borcherds_group.verify import worked_example

# c(j) sizes each imaginary simple root block; the window keeps j <= 3, two copies each
print("J coefficients:", j_coefficients(3))
m = build_monster(3, 2, 4)
for block, dim in m.block_dims().items():
    print(f"block {block}: dim {dim}")

# x = f^2 + fe - fh applied to the top vector of a dimension-3 block
got, want = worked_example(m, "3,1")
print("x o b1      =", got)
print("b3 - lam b2 =", want)
assert got == want

# multiply two seeded elements and undo the product
rng = random.Random(1)
x, y = random_element(rng, m), random_element(rng, m)
xy = g_mul(x, y)
print("degree-1 part of log n(xy):", xy.n.log.homogeneous(1))
print("x y y^-1 == x:", g_mul(xy, g_inv(y)).equals(x))
