"""Equivariant cohomology of the equilateral big polygon spaces X_{a,b}(1, ..., 1)."""

from bigpolygon import bigpoly as bp
from bigpolygon.gradedmod import syzygy_order
from bigpolygon.lenvec import LengthVector, mu

a = 1
for m in (1, 2):
    r = 2 * m + 1
    for b in (1, 2):
        p = bp.SpaceParams(a, b, LengthVector([1] * r))
        print(f"r={r} a={a} b={b}  dim X = {bp.dimension(p)}")
        print("  Betti numbers:", bp.poincare_polynomial_X(p).tolist())

        # coker of iota carries the whole syzygy order
        P = bp.coker_presentation(p.l, b, a)
        print(f"  coker iota: {P.num_generators} generators, {P.num_relations} relations")
        print(f"  syzygy order {bp.ht_syzygy_order(p)}, mu - 1 = {mu(p.l) - 1}")

        # the same module, assembled from free and Koszul summands
        for s in bp.equilateral_decomposition(m, a, b):
            name = "R" if s.kind == "free" else f"K_{s.k}"
            print(f"    {s.multiplicity} x {name}[{s.shift}]")
        same = bp.equivariant_hilbert_series(p) == bp.decomposition_hilbert_series(m, a, b)
        print("  Hilbert series agree:", same)
        print("  syzygy order of the sum:", syzygy_order(bp.decomposition_presentation(m, a, b)))
        print()
