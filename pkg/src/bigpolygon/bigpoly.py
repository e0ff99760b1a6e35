"""
Invariants of big polygon spaces X_{a,b}(l).

Conventions: ``d = 2a + 2b - 1``, ``dbar = 2a - 1``.  Equivariant homology
classes [V_J]_T and [W_J]_T are placed in cohomological degree
``-|J|d`` and ``-|J|d - dbar``, so that every entry ``t_j^b`` of the map
iota is homogeneous of degree ``2b = d - dbar``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .gradedmod import (
    GradedPresentation,
    HilbertSeries,
    KoszulData,
    direct_sum,
    hilbert_series,
    koszul_syzygy_presentation,
    syzygy_order,
)
from .lenvec import (
    LengthVector,
    long_subsets,
    mu,
    popcount,
    short_subsets,
    shuffle_sign,
)
from .polyring import FreeModule, Matrix, Vector, kernel


class EvenR(ValueError):
    pass


@dataclass(frozen=True)
class SpaceParams:
    a: int
    b: int
    l: LengthVector

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be at least 1")
        if not isinstance(self.l, LengthVector):
            object.__setattr__(self, "l", LengthVector(self.l))

    @property
    def r(self):
        return self.l.r

    @property
    def d(self):
        return 2 * self.a + 2 * self.b - 1

    @property
    def dbar(self):
        return 2 * self.a - 1


def dimension(p: SpaceParams) -> int:
    return p.d * p.r - 2 * p.a


def poincare_polynomial_X(p: SpaceParams) -> np.ndarray:
    """Betti numbers of X_{a,b}(l) as an integer coefficient array (index = degree)."""
    coeffs = np.zeros(dimension(p) + 1, dtype=np.int64)
    for J in short_subsets(p.l):
        coeffs[popcount(J) * p.d] += 1
    for J in long_subsets(p.l):
        coeffs[popcount(J) * p.d - p.dbar - 1] += 1
    return coeffs


def poincare_polynomial_E_equilateral(a: int, r: int) -> np.ndarray:
    """Betti numbers of the polygon space E_{2a}(1, ..., 1) for odd r."""
    if r % 2 == 0:
        raise EvenR("the equilateral length vector is generic only for odd r")
    m = (r - 1) // 2
    dbar = 2 * a - 1
    top = max(2 * m * dbar - 1, m * dbar, 0)
    coeffs = np.zeros(top + 1, dtype=np.int64)
    for j in range(m):
        coeffs[j * dbar] += comb(r, j)
        coeffs[(2 * m - j) * dbar - 1] += comb(r, j)
    if m >= 1:
        coeffs[m * dbar] += comb(2 * m, m - 1)
        coeffs[m * dbar - 1] += comb(2 * m, m - 1)
    return np.trim_zeros(coeffs, "b") if coeffs.any() else coeffs[:1]


def betti_sum_E(l: LengthVector, a: int = 1) -> int:
    """Betti sum of the polygon space E_{2a}(l); zero when it is empty."""
    top = 1 << (l.r - 1)
    return 4 * sum(1 for J in short_subsets(l) if J & top)


# ------------------------------------------------------------- cohomology ring

@dataclass(frozen=True)
class CohomologyClass:
    kind: str  # "alpha" (J short) or "beta" (J long)
    J: int
    coefficient: Fraction = Fraction(1)

    def degree(self, p: SpaceParams) -> int:
        base = popcount(self.J) * p.d
        return base if self.kind == "alpha" else base - p.dbar - 1

    def scaled(self, c):
        return CohomologyClass(self.kind, self.J, self.coefficient * c)

    def validate(self, p: SpaceParams):
        short = self.J in set(short_subsets(p.l))
        if self.kind == "alpha" and not short:
            raise ValueError("alpha_J requires J short")
        if self.kind == "beta" and short:
            raise ValueError("beta_J requires J long")
        if self.kind not in ("alpha", "beta"):
            raise ValueError(f"unknown class kind {self.kind!r}")


def cohomology_basis(p: SpaceParams) -> list:
    """alpha_J (J short) then beta_J (J long), each sorted by (|J|, mask)."""
    key = lambda J: (popcount(J), J)
    return ([CohomologyClass("alpha", J) for J in sorted(short_subsets(p.l), key=key)]
            + [CohomologyClass("beta", J) for J in sorted(long_subsets(p.l), key=key)])


def cup_product(x: CohomologyClass, y: CohomologyClass, p: SpaceParams, _short=None):
    """Product of two basis multiples; ``None`` stands for zero."""
    c = x.coefficient * y.coefficient
    if x.kind == "beta" and y.kind == "beta":
        return None
    if x.kind == "beta":
        # graded commutativity moves the alpha factor to the left
        flipped = cup_product(y, x, p, _short)
        if flipped is None:
            return None
        if (x.degree(p) * y.degree(p)) % 2:
            return flipped.scaled(-1)
        return flipped
    if x.J & y.J:
        return None
    U = x.J | y.J
    eps = shuffle_sign(x.J, y.J)
    if y.kind == "alpha":
        short = _short if _short is not None else set(short_subsets(p.l))
        if U not in short:
            return None
        return CohomologyClass("alpha", U, eps * c)
    return CohomologyClass("beta", U, eps * c)


def pairing_matrix(p: SpaceParams) -> np.ndarray:
    """Top-degree pairing on :func:`cohomology_basis` (coefficient of beta_[r])."""
    basis = cohomology_basis(p)
    n = dimension(p)
    full = p.l.full
    short = set(short_subsets(p.l))
    out = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if x.degree(p) + y.degree(p) != n:
                continue
            z = cup_product(x, y, p, short)
            if z is not None and z.kind == "beta" and z.J == full:
                out[i, j] = int(z.coefficient)
    return out


def is_signed_permutation(M: np.ndarray) -> bool:
    return (np.isin(M, (-1, 0, 1)).all()
            and (np.abs(M).sum(axis=0) == 1).all()
            and (np.abs(M).sum(axis=1) == 1).all())


# ------------------------------------------------------------ equivariant side

def _by_size(masks):
    return sorted(masks, key=lambda J: (popcount(J), J))


@dataclass
class IotaMatrix:
    """iota^T_* from H^T_*(V^r - X) (basis [V_J], [W_J], J short) to
    H^T_*(V^r) (basis [V_J], all J)."""

    matrix: Matrix
    row_labels: list   # masks J for [V_J]
    col_labels: list   # ("V", J) or ("W", J)

    def homological_row_degrees(self):
        return [-d for d in self.matrix.target.degrees]

    def homological_col_degrees(self):
        return [-d for d in self.matrix.source.degrees]


def iota_matrix(l: LengthVector, b: int, a: int = 1) -> IotaMatrix:
    p = SpaceParams(a, b, l)
    r, d, dbar = p.r, p.d, p.dbar
    rows = _by_size(range(1 << r))
    row_idx = {J: i for i, J in enumerate(rows)}
    short = _by_size(short_subsets(l))
    cols = [("V", J) for J in short] + [("W", J) for J in short]
    target = FreeModule(r, [-popcount(J) * d for J in rows])
    source = FreeModule(r, [-popcount(J) * d - (dbar if kind == "W" else 0) for kind, J in cols])
    vecs = []
    for kind, J in cols:
        if kind == "V":
            vecs.append(target.basis(row_idx[J]))
            continue
        t = {}
        for j in range(r):
            if J >> j & 1:
                continue
            e = [0] * r
            e[j] = b
            t[(tuple(e), row_idx[J | 1 << j])] = shuffle_sign(J, 1 << j)
        vecs.append(Vector(target, t))
    return IotaMatrix(Matrix(source, target, vecs), rows, cols)


def coker_presentation(l: LengthVector, b: int, a: int = 1) -> GradedPresentation:
    """coker iota^T_*: generators [V_J] for J long, one relation
    ``sum_{j not in J, J+j long} eps(J, j) t_j^b [V_{J+j}]`` per short J
    (relations that come out zero are dropped)."""
    p = SpaceParams(a, b, l)
    r, d, dbar = p.r, p.d, p.dbar
    longs = _by_size(long_subsets(l))
    idx = {J: i for i, J in enumerate(longs)}
    F = FreeModule(r, [-popcount(J) * d for J in longs])
    cols, degs = [], []
    for J in _by_size(short_subsets(l)):
        t = {}
        for j in range(r):
            U = J | 1 << j
            if U == J or U not in idx:
                continue
            e = [0] * r
            e[j] = b
            t[(tuple(e), idx[U])] = shuffle_sign(J, 1 << j)
        if t:
            cols.append(Vector(F, t))
            degs.append(-popcount(J) * d - dbar)
    return GradedPresentation(F, Matrix(FreeModule(r, degs), F, cols))


def ht_syzygy_order(p: SpaceParams, **caps) -> int:
    """Syzygy order of H_T^*(X_{a,b}(l)), computed on coker iota^T_*."""
    return syzygy_order(coker_presentation(p.l, p.b, p.a), **caps)


@dataclass(frozen=True)
class Summand:
    kind: str          # "free" or "koszul"
    shift: int
    multiplicity: int = 1
    k: int | None = None

    def presentation(self, r, b) -> GradedPresentation:
        if self.kind == "free":
            return GradedPresentation.free(r, [self.shift] * self.multiplicity)
        P = koszul_syzygy_presentation(self.k, KoszulData(r, b)).shift(self.shift)
        return direct_sum([P] * self.multiplicity)


def equilateral_decomposition(m: int, a: int, b: int) -> list:
    """Summands of H_T^*(X_{a,b}(1, ..., 1)) for r = 2m + 1.

    The top Koszul summand comes from the kernel of iota, whose generators
    sit ``2b`` above the [W_J] with |J| = m; its shift is therefore
    ``(m+1)d - dbar - 1 + 2b`` (``(m+1)d - dbar + 1`` when b = 1).
    """
    r = 2 * m + 1
    d, dbar = 2 * a + 2 * b - 1, 2 * a - 1
    out = [Summand("free", j * d, comb(r, j)) for j in range(m)]
    out.append(Summand("koszul", m * d, 1, m))
    if m + 2 <= r:
        out.append(Summand("koszul", (m + 1) * d - dbar - 1 + 2 * b, 1, m + 2))
    out += [Summand("free", j * d - dbar - 1, comb(r, j)) for j in range(m + 2, r + 1)]
    return out


def decomposition_presentation(m: int, a: int, b: int) -> GradedPresentation:
    r = 2 * m + 1
    return direct_sum([s.presentation(r, b) for s in equilateral_decomposition(m, a, b)])


def decomposition_hilbert_series(m: int, a: int, b: int, **caps) -> HilbertSeries:
    r = 2 * m + 1
    total = HilbertSeries(r)
    for s in equilateral_decomposition(m, a, b):
        if s.kind == "free":
            total = total + HilbertSeries(r, {s.shift: s.multiplicity})
        else:
            hs = hilbert_series(koszul_syzygy_presentation(s.k, KoszulData(r, b)), **caps)
            total = total + s.multiplicity * hs.shift(s.shift)
    return total


def equivariant_hilbert_series(p: SpaceParams, **caps) -> HilbertSeries:
    """HS(coker iota)[rd] + HS(ker iota)[rd - 1]."""
    rd = p.r * p.d
    I = iota_matrix(p.l, p.b, p.a).matrix
    hs_coker = hilbert_series(coker_presentation(p.l, p.b, p.a), **caps)
    K = kernel(I, **caps)
    # ker iota = im K, and source / im K = coker K
    hs_ker = HilbertSeries.of_free(I.source) - hilbert_series(GradedPresentation(I.source, K), **caps)
    return hs_coker.shift(rd) + hs_ker.shift(rd - 1)


def space_report(p: SpaceParams, **caps) -> dict:
    m = mu(p.l)
    s = ht_syzygy_order(p, **caps)
    return {
        "representative": [str(x) for x in p.l.entries],
        "a": p.a,
        "b": p.b,
        "mu": m,
        "syzord": s,
        "conjecture_ok": s == m - 1,
        "poincare_X": [int(c) for c in poincare_polynomial_X(p)],
        "betti_sum_E": betti_sum_E(p.l, p.a),
        "pairing_perfect": bool(is_signed_permutation(pairing_matrix(p))),
    }
