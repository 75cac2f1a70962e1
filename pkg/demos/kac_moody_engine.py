"""
Root multiplicities and an integrable module for H(3)
====================================================
"""

from borcherds_group.kacmoody import GCM, build_irreducible, peterson_mult, serre_quotient_nminus

A = GCM(["1", "2"], [[2, -3], [-3, 2]])

# Peterson recursion and the Serre quotient of the free algebra should agree
P = peterson_mult(A, 5)
S = serre_quotient_nminus(A, 5)
for c in sorted(P.roots(), key=sum):
    print(c, "mult", P.mult(c), "serre", S.dim(c))

# weight spaces of L(1,1) by depth
T = build_irreducible(A, [1, 1], 4)
print("dims by depth:", T.dims_by_depth())
print("ladder violations:", T.module.ladder_violations(4))
