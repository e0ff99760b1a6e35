import json
from itertools import combinations
from math import comb
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from bigpolygon.gradedmod import (
    FreeResolution,
    GradedPresentation,
    HilbertSeries,
    KoszulData,
    auslander_transpose,
    direct_sum,
    ext_vanishes,
    hilbert_series,
    koszul_differential,
    koszul_syzygy_presentation,
    minimal_free_resolution,
    minimal_presentation,
    minimalize_resolution,
    syzygy_order,
)
from bigpolygon.polyring import LEX, FreeModule, Matrix, Poly, Vector, parse_poly

GOLDEN = json.loads((Path(__file__).parent / "data" / "koszul_golden.json").read_text())


def K(k, r, b=1):
    return koszul_syzygy_presentation(k, KoszulData(r, b))


def cyclic(r, *polys, degree=0):
    """R/(polys) with the generator in ``degree``."""
    F = FreeModule(r, [degree])
    vecs = [Vector.from_polys(F, [parse_poly(p, r)]) for p in polys]
    src = FreeModule(r, [v.degree() for v in vecs])
    return GradedPresentation(F, Matrix(src, F, vecs))


def right_contraction_oracle(r, k, b):
    rows = list(combinations(range(r), k - 1))
    out = []
    for i, I in enumerate(rows):
        row = []
        for J in combinations(range(r), k):
            e = Poly.zero(r)
            for pos, j in enumerate(J):
                if J[:pos] + J[pos + 1:] == I:
                    e = Poly.var(j, r, b) * (-1) ** (len(J) - 1 - pos)
            row.append(e)
        out.append(row)
    return out


# ------------------------------------------------------------- Koszul

def test_koszul_small_examples():
    d1 = koszul_differential(1, KoszulData(2, 1))
    assert [str(p) for p in d1.rows()[0]] == ["t1", "t2"]
    d2 = koszul_differential(2, KoszulData(2, 1))
    assert [str(row[0]) for row in d2.rows()] == ["t2", "-t1"]


@pytest.mark.parametrize("key", sorted(GOLDEN))
def test_koszul_golden(key):
    r, k, b = (int(part[1:]) for part in key.split("_"))
    A = koszul_differential(k, KoszulData(r, b))
    assert A.to_json_obj() == GOLDEN[key]
    oracle = right_contraction_oracle(r, k, b)
    assert [[A.entry(i, j) for j in range(A.source.rank)] for i in range(A.target.rank)] == oracle


@pytest.mark.parametrize("r,b", [(r, b) for r in range(1, 5) for b in (1, 2)])
def test_koszul_complex(r, b):
    data = KoszulData(r, b)
    for k in range(1, r + 1):
        A = koszul_differential(k, data)
        assert A.shape == (comb(r, k - 1), comb(r, k))
        assert A.is_homogeneous()
        if k < r:
            assert (A @ koszul_differential(k + 1, data)).is_zero()


def test_koszul_syzygy_presentations():
    P = K(3, 3)
    assert P.num_generators == 1 and P.num_relations == 0
    assert K(4, 3).num_generators == 0
    P = K(1, 3)
    assert P.num_generators == 3 and set(P.target.degrees) == {0}
    P = K(0, 3, 2)
    assert P.num_generators == 1
    assert sorted(str(c.component(0)) for c in P.relations.columns) == ["t1^2", "t2^2", "t3^2"]
    with pytest.raises(ValueError):
        K(5, 3)


# -------------------------------------------------------- resolutions

def test_resolution_of_free_module():
    res = minimal_free_resolution(GradedPresentation.free(3, (0, 2)))
    assert res.length == 0


def test_resolution_of_K0():
    res = minimal_free_resolution(K(0, 3))
    assert res.ranks() == [1, 3, 3, 1]
    assert res.betti_table() == {(0, 0): 1, (1, 2): 3, (2, 4): 3, (3, 6): 1}
    assert res.is_complex()
    assert not res.has_unit_entries()


@pytest.mark.parametrize("r,b", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_betti_tables_order_independent(r, b):
    for k in range(r + 1):
        P = K(k, r, b)
        assert minimal_free_resolution(P).betti_table() == \
            minimal_free_resolution(P, order=LEX).betti_table()


def test_minimal_presentation_strips_units():
    F = FreeModule(2, [0, 0])
    t1 = Poly.var(0, 2)
    # relations e_0 = e_1 and t1 e_1: the first one is a unit
    A = Matrix.from_rows(FreeModule(2, [0, 2]), F, [[1, 0], [-1, t1]])
    P = minimal_presentation(GradedPresentation(F, A))
    assert P.num_generators == 1 and P.num_relations == 1
    assert hilbert_series(P) == HilbertSeries(2, {0: 1, 2: -1})


def test_minimalize_resolution_cancels_trivial_summand():
    F0 = FreeModule(2, [0])
    F1 = FreeModule(2, [2, 2, 2])
    t1, t2 = Poly.var(0, 2), Poly.var(1, 2)
    d1 = Matrix.from_rows(F1, F0, [[t1, t2, t1 + t2]])
    F2 = FreeModule(2, [4, 2])
    # second column is a unit relation among the (non-minimal) generators
    d2 = Matrix(F2, F1, [Vector.from_polys(F1, [t2, -1 * t1, 0]),
                         Vector.from_polys(F1, [1, 1, -1])])
    res = FreeResolution([F0, F1, F2], [d1, d2])
    assert res.is_complex()
    m = minimalize_resolution(res)
    assert m.ranks() == [1, 2, 1]
    assert m.is_complex() and not m.has_unit_entries()


def test_resolution_json_round_trip():
    res = minimal_free_resolution(K(1, 3, 2))
    back = FreeResolution.from_json(res.to_json())
    assert back.betti_table() == res.betti_table()
    assert all(a == b for a, b in zip(back.maps, res.maps))
    assert res.betti_csv().splitlines()[0] == "homological_degree,internal_degree,rank"


# ------------------------------------------------------ Hilbert series

def test_hilbert_series_examples():
    assert hilbert_series(GradedPresentation.free(3)) == HilbertSeries(3, {0: 1})
    assert hilbert_series(GradedPresentation.free(3, (5,))) == HilbertSeries(3, {5: 1})
    assert hilbert_series(K(0, 2)) == HilbertSeries(2, {0: 1, 2: -2, 4: 1})
    # graded dimensions of R/(t1, t2) are 1 in degree 0
    assert hilbert_series(K(0, 2)).coefficients(10) == {0: 1}


@pytest.mark.parametrize("r,b", [(r, b) for r in range(1, 5) for b in (1, 2)])
def test_hilbert_series_of_K0(r, b):
    want = HilbertSeries(r, {2 * b * k: (-1) ** k * comb(r, k) for k in range(r + 1)})
    assert hilbert_series(K(0, r, b)) == want


def test_hilbert_series_additive():
    a, b = K(1, 3), K(2, 3).shift(4)
    assert hilbert_series(a + b) == hilbert_series(a) + hilbert_series(b)


# ----------------------------------------------- Ext and syzygy order

def test_auslander_transpose_examples():
    T = auslander_transpose(GradedPresentation.free(2, (0, 0)))
    assert T.num_generators == 0
    T = auslander_transpose(cyclic(2, "t1"))
    assert T.num_generators == 1 and T.num_relations == 1
    assert T.target.degrees == (-2,)
    assert str(T.relations.columns[0].component(0)) == "t1"
    T = auslander_transpose(K(1, 2))
    assert ext_vanishes(T, 1) and not ext_vanishes(T, 2)


def test_ext_vanishes_examples():
    assert ext_vanishes(GradedPresentation.free(2), 1)
    assert ext_vanishes(GradedPresentation.free(2), 2)
    assert ext_vanishes(K(0, 2), 1)
    assert not ext_vanishes(K(0, 2), 2)


@pytest.mark.parametrize("r,b", [(r, b) for r in (2, 3, 4) for b in (1, 2)])
def test_syzygy_order_of_koszul_syzygies(r, b):
    assert [syzygy_order(K(k, r, b)) for k in range(r + 1)] == list(range(r + 1))


def test_syzygy_order_examples():
    assert syzygy_order(GradedPresentation.free(3) + K(1, 3)) == 1
    assert syzygy_order(cyclic(2, "t1")) == 0
    assert syzygy_order(GradedPresentation.free(2, (0, 4))) == 2
    # the ideal (t1, t2) in two variables is torsion-free but not reflexive
    assert syzygy_order(K(1, 2)) == 1


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (3, 2)]), st.data())
def test_syzygy_order_of_direct_sum_is_min(rb, data):
    r, b = rb
    ks = data.draw(st.lists(st.integers(0, r), min_size=1, max_size=3))
    shifts = data.draw(st.lists(st.integers(-2, 2), min_size=len(ks), max_size=len(ks)))
    P = direct_sum([K(k, r, b).shift(2 * s) for k, s in zip(ks, shifts)])
    assert syzygy_order(P) == min(ks)


def _random_form(r, deg, draw):
    """Homogeneous polynomial of cohomological degree ``deg`` (a multiple of 2)."""
    if deg < 0:
        return Poly.zero(r)
    n = deg // 2
    terms = {}
    for _ in range(draw(st.integers(0, 2))):
        e = [0] * r
        for _ in range(n):
            e[draw(st.integers(0, r - 1))] += 1
        terms[tuple(e)] = draw(st.integers(-2, 2))
    return Poly(r, terms)


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_extension_keeps_syzygy_order_of_submodule(data):
    """0 -> M -> M' -> M'' -> 0 with syzord M'' > syzord M gives syzord M' = syzord M.

    M' is presented by the block matrix [[A, A D + S B], [0, B]]; the glue
    columns A D + S B keep M a submodule with quotient M''."""
    r = data.draw(st.sampled_from([2, 3]))
    j = data.draw(st.integers(0, r - 1))
    k = data.draw(st.integers(j + 1, r))
    s = data.draw(st.sampled_from([0, 2]))
    M, M2 = K(j, r), K(k, r).shift(s)
    A, B = M.relations, M2.relations
    D = Matrix.from_rows(B.source, A.source,
                         [[_random_form(r, B.source.degrees[q] - A.source.degrees[p], data.draw)
                           for q in range(B.source.rank)] for p in range(A.source.rank)])
    S = Matrix.from_rows(M2.target, M.target,
                         [[_random_form(r, M2.target.degrees[q] - M.target.degrees[p], data.draw)
                           for q in range(M2.target.rank)] for p in range(M.target.rank)])
    glue = (A @ D) if A.source.rank else Matrix.zero(B.source, M.target)
    if M2.target.rank and B.source.rank:
        glue_cols = [g + v for g, v in zip(glue.columns, (S @ B).columns)]
    else:
        glue_cols = glue.columns
    F = M.target + M2.target
    n = M.target.rank
    cols = [Vector(F, c.terms) for c in A.columns]
    for g, bcol in zip(glue_cols, B.columns):
        t = dict(g.terms)
        t.update({(m, i + n): c for (m, i), c in bcol.terms.items()})
        cols.append(Vector(F, t))
    P = GradedPresentation(F, Matrix(A.source + B.source, F, cols))
    assert syzygy_order(P) == j
