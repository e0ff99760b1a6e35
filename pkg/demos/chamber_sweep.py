"""Compare the syzygy order of H_T^*(X) with mu(l) - 1 on every chamber up to r = 6."""

import time

from bigpolygon import bigpoly as bp
from bigpolygon.lenvec import chamber_census, format_subset, mu

for r in range(1, 7):
    chambers, stable = chamber_census(r, 7)
    start = time.perf_counter()
    print(f"r={r}: {len(chambers)} chambers (stable: {stable})")
    for c in chambers:
        l = c.length_vector()
        orders = {b: bp.ht_syzygy_order(bp.SpaceParams(1, b, l)) for b in (1, 2)}
        flag = "ok" if all(s == mu(l) - 1 for s in orders.values()) else "MISMATCH"
        minimal_long = " ".join(format_subset(J) for J in c.encoding)
        print(f"  {str(l):<20} mu={mu(l)} syzord={orders}  {flag}   minimal long: {minimal_long}")
    print(f"  {time.perf_counter() - start:.2f}s")
