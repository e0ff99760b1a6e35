"""Acceptance checks shared by ``bigpolygon selftest`` and the test suite.

Each check returns ``(passed, detail)``.
"""

from __future__ import annotations

import random
from itertools import product
from math import comb

import numpy as np

from . import bigpoly as bp
from .gradedmod import (
    GradedPresentation,
    HilbertSeries,
    KoszulData,
    hilbert_series,
    koszul_syzygy_presentation,
    minimal_free_resolution,
    syzygy_order,
)
from .lenvec import LengthVector, chamber_census, mu
from .polyring import LEX, Vector, buchberger

ENTRY_BOUND = 7


def _chambers(r):
    chambers, _ = chamber_census(r, ENTRY_BOUND)
    return chambers


def _order(l, b=1, a=1):
    return bp.ht_syzygy_order(bp.SpaceParams(a, b, LengthVector(l)))


def koszul_orders():
    bad = []
    for r, b in product((2, 3, 4), (1, 2)):
        data = KoszulData(r, b)
        for k in range(r + 1):
            s = syzygy_order(koszul_syzygy_presentation(k, data))
            if s != k:
                bad.append((r, b, k, s))
    return not bad, f"mismatches (r, b, k, got): {bad}" if bad else "syzord K_k = k for r<=4, b<=2"


def equilateral_orders():
    got = {(r, b): _order([1] * r, b) for r in (3, 5) for b in (1, 2)}
    want = {(3, 1): 1, (3, 2): 1, (5, 1): 2, (5, 2): 2}
    return got == want, f"got {got}"


def named_orders():
    cases = {(0, 1, 1, 1): 1, (0, 0, 0, 1, 1, 1): 1, (1, 2, 2, 2, 3, 3): 0}
    got = {l: _order(l) for l in cases}
    return got == cases, f"got {got}"


def conjecture_sweep(max_r=5, b=1):
    total = 0
    bad = []
    for r in range(1, max_r + 1):
        for c in _chambers(r):
            l = c.length_vector()
            total += 1
            s = bp.ht_syzygy_order(bp.SpaceParams(1, b, l))
            if s != mu(l) - 1:
                bad.append((c.representative, s, mu(l)))
    return not bad, f"{total - len(bad)}/{total} chambers satisfy syzord = mu - 1" + (f"; failures {bad}" if bad else "")


def _is_palindromic(P):
    return np.array_equal(P, P[::-1])


def betti_data():
    bad = []
    for r in range(1, 7):
        for c in _chambers(r):
            for a, b in ((1, 1), (2, 1), (1, 2)):
                P = bp.poincare_polynomial_X(bp.SpaceParams(a, b, c.length_vector()))
                if P.sum() != 2 ** r or not _is_palindromic(P):
                    bad.append((c.representative, a, b))
    P = bp.poincare_polynomial_X(bp.SpaceParams(1, 1, LengthVector((1, 1, 1))))
    if P.tolist() != [1, 0, 0, 3, 3, 0, 0, 1]:
        bad.append(("(1,1,1)", P.tolist()))
    for r in range(1, 7):
        for a, b in ((1, 1), (2, 1), (1, 2)):
            p = bp.SpaceParams(a, b, LengthVector([0] * (r - 1) + [1]))
            want = np.polynomial.polynomial.polypow([1] + [0] * (p.d - 1) + [1], r - 1)
            want = np.polynomial.polynomial.polymul(want, [1] + [0] * (2 * b - 2) + [1])
            if bp.poincare_polynomial_X(p).tolist() != [int(x) for x in want]:
                bad.append(("e_r", r, a, b))
    return not bad, f"failures {bad}" if bad else "P(1) = 2^r and palindromic for all chambers r<=6"


def polygon_betti():
    bad = []
    for r in (3, 5, 7):
        m = (r - 1) // 2
        want = 2 ** r - 2 * comb(2 * m, m)
        got = int(bp.poincare_polynomial_E_equilateral(1, r).sum())
        alt = bp.betti_sum_E(LengthVector([1] * r))
        if got != want or alt != want:
            bad.append((r, want, got, alt))
    return not bad, f"failures {bad}" if bad else "2^r - 2 C(2m, m) for r = 3, 5, 7"


def _mul(x, y, p, short):
    if x is None or y is None:
        return None
    return bp.cup_product(x, y, p, short)


def _same(x, y):
    if x is None or y is None:
        return (x is None or x.coefficient == 0) and (y is None or y.coefficient == 0)
    return (x.kind, x.J, x.coefficient) == (y.kind, y.J, y.coefficient)


def ring_structure():
    bad = []
    for r in range(1, 5):
        for c in _chambers(r):
            for a, b in ((1, 1), (2, 1)):
                p = bp.SpaceParams(a, b, c.length_vector())
                short = set(c.short_family)
                basis = bp.cohomology_basis(p)
                for x, y in product(basis, repeat=2):
                    xy = _mul(x, y, p, short)
                    yx = _mul(y, x, p, short)
                    if yx is not None and (x.degree(p) * y.degree(p)) % 2:
                        yx = yx.scaled(-1)
                    if not _same(xy, yx):
                        bad.append(("comm", c.representative, x, y))
                for x, y, z in product(basis, repeat=3):
                    if not _same(_mul(_mul(x, y, p, short), z, p, short),
                                 _mul(x, _mul(y, z, p, short), p, short)):
                        bad.append(("assoc", c.representative, x, y, z))
    for r in range(1, 6):
        for c in _chambers(r):
            M = bp.pairing_matrix(bp.SpaceParams(1, 1, c.length_vector()))
            if not bp.is_signed_permutation(M):
                bad.append(("pairing", c.representative))
    return not bad, f"failures {bad[:5]}" if bad else "associative, graded-commutative, perfect pairing"


def engine_properties(seed=0):
    rng = random.Random(seed)
    bad = []
    presentations = []
    for r, b in product((2, 3), (1, 2)):
        presentations += [koszul_syzygy_presentation(k, KoszulData(r, b)) for k in range(r)]
    for r in range(2, 5):
        presentations += [bp.coker_presentation(c.length_vector(), 1) for c in _chambers(r)]
    for P in presentations:
        res = minimal_free_resolution(P)
        if not res.is_complex():
            bad.append("d o d != 0")
        if res.length > P.nvars:
            bad.append("resolution too long")
        if P.nvars <= 3 and res.betti_table() != minimal_free_resolution(P, order=LEX).betti_table():
            bad.append("Betti table depends on the order")
        gens = [v for v in P.relations.columns if v]
        if gens:
            shuffled = gens[:]
            rng.shuffle(shuffled)
            if buchberger(gens, P.target) != buchberger(shuffled, P.target):
                bad.append("reduced GB depends on generator order")
    for r, b in product(range(1, 5), (1, 2)):
        hs = hilbert_series(koszul_syzygy_presentation(0, KoszulData(r, b)))
        want = HilbertSeries(r, {2 * b * k: (-1) ** k * comb(r, k) for k in range(r + 1)})
        if hs != want:
            bad.append(("HS(K_0)", r, b))
    return not bad, f"failures {bad[:5]}" if bad else f"{len(presentations)} presentations checked"


def decomposition_consistency():
    bad = []
    for m, (a, b) in product((1, 2), ((1, 1), (1, 2))):
        p = bp.SpaceParams(a, b, LengthVector([1] * (2 * m + 1)))
        if bp.equivariant_hilbert_series(p) != bp.decomposition_hilbert_series(m, a, b):
            bad.append((2 * m + 1, a, b))
    return not bad, f"failures (r, a, b) {bad}" if bad else "series agree for r = 3, 5"


CRITERIA = [
    (1, "Koszul syzygy orders", koszul_orders),
    (2, "equilateral syzygy orders", equilateral_orders),
    (3, "syzygy orders of named length vectors", named_orders),
    (4, "mu - 1 sweep over chambers r <= 5", conjecture_sweep),
    (5, "Betti numbers of big polygon spaces", betti_data),
    (6, "Betti numbers of equilateral polygon spaces", polygon_betti),
    (7, "cohomology ring and pairing", ring_structure),
    (8, "Groebner and resolution engine", engine_properties),
    (9, "equilateral decomposition", decomposition_consistency),
]


def run_all(echo=print):
    ok = True
    for n, title, check in CRITERIA:
        passed, detail = check()
        ok &= passed
        echo(f"[{'PASS' if passed else 'FAIL'}] {n}. {title}: {detail}")
    return ok
