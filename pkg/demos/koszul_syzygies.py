"""Koszul syzygies of t_1^b, ..., t_r^b and their syzygy orders."""

from bigpolygon.gradedmod import (
    KoszulData,
    hilbert_series,
    koszul_differential,
    koszul_syzygy_presentation,
    minimal_free_resolution,
    syzygy_order,
)

r, b = 3, 1
data = KoszulData(r, b)

# the differentials, written out
for k in range(1, r + 1):
    print(f"delta_{k}:")
    print(koszul_differential(k, data))
    print()

# K_0 = R/(t_1, t_2, t_3) is resolved by the Koszul complex itself
res = minimal_free_resolution(koszul_syzygy_presentation(0, data))
print("ranks of the minimal resolution of K_0:", res.ranks())
print(res.betti_csv())

# K_k is a k-th syzygy and no better
for k in range(r + 2):
    P = koszul_syzygy_presentation(k, data)
    print(f"K_{k}: {P.num_generators} generators, syzygy order {syzygy_order(P)},",
          hilbert_series(P))
