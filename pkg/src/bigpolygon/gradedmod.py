"""
Graded modules over R = QQ[t1, ..., tr]: presentations, minimal free
resolutions, Koszul complexes, Hilbert series, Ext and syzygy order.

Degrees are cohomological: each ``t_j`` has degree 2 and ``M[l]`` moves
every element up by ``l`` (so ``R[l]`` is free on a generator of degree l).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .polyring import (
    VAR_DEGREE,
    FreeModule,
    Matrix,
    Poly,
    Vector,
    _axpy,
    buchberger,
    get_order,
    kernel,
    mingens,
    normal_form,
)


# -------------------------------------------------------------- presentations

@dataclass(frozen=True)
class GradedPresentation:
    """``coker(relations: F1 -> target)``; relation degrees are ``relations.source.degrees``."""

    target: FreeModule
    relations: Matrix

    def __post_init__(self):
        if self.relations.target != self.target:
            raise ValueError("relation matrix does not map into the generator module")
        if not self.relations.is_homogeneous():
            raise ValueError("relation matrix is not homogeneous")

    @classmethod
    def free(cls, nvars, degrees=(0,)):
        F = FreeModule(nvars, degrees)
        return cls(F, Matrix.zero(FreeModule(nvars), F))

    @classmethod
    def from_matrix(cls, A: Matrix):
        """Cokernel of ``A``, with zero columns dropped."""
        keep = [j for j, c in enumerate(A.columns) if c]
        src = FreeModule(A.nvars, [A.source.degrees[j] for j in keep])
        return cls(A.target, Matrix(src, A.target, [A.columns[j] for j in keep]))

    @property
    def nvars(self):
        return self.target.nvars

    @property
    def num_generators(self):
        return self.target.rank

    @property
    def num_relations(self):
        return self.relations.source.rank

    def shift(self, l: int) -> "GradedPresentation":
        F = self.target.shift(l)
        src = self.relations.source.shift(l)
        return GradedPresentation(F, Matrix(src, F, self.relations.columns))

    def __add__(self, other: "GradedPresentation") -> "GradedPresentation":
        return direct_sum([self, other])


def direct_sum(parts) -> GradedPresentation:
    parts = list(parts)
    nvars = parts[0].nvars
    F = FreeModule(nvars, [d for p in parts for d in p.target.degrees])
    src = FreeModule(nvars, [d for p in parts for d in p.relations.source.degrees])
    cols = []
    offset = 0
    for p in parts:
        for c in p.relations.columns:
            cols.append(Vector(F, {(m, k + offset): v for (m, k), v in c.terms.items()}))
        offset += p.target.rank
    return GradedPresentation(F, Matrix(src, F, cols))


def _first_unit(columns):
    """Lowest (column, row) position holding a nonzero constant."""
    for j, col in enumerate(columns):
        rows = [k for (m, k) in col if not any(m)]
        if rows:
            return min(rows), j
    return None


def _eliminate(columns, i, j):
    """Use the unit at (i, j) to clear row i; drop row i and column j."""
    pivot = columns[j]
    zero = next(m for (m, k) in pivot if k == i and not any(m))
    c = pivot[(zero, i)]
    out = []
    for l, col in enumerate(columns):
        if l == j:
            continue
        col = dict(col)
        row = [(m, v) for (m, k), v in col.items() if k == i]
        for m, v in row:
            _axpy(col, pivot, -v / c, m)
        out.append({(m, k - (k > i)): v for (m, k), v in col.items()})
    return out


def minimal_presentation(P: GradedPresentation, order=None, **caps) -> GradedPresentation:
    """Strip unit entries (dropping a generator and a relation each time),
    then reduce the relations to a minimal generating set."""
    cols = [dict(c.terms) for c in P.relations.columns]
    tdeg = list(P.target.degrees)
    sdeg = list(P.relations.source.degrees)
    while True:
        pos = _first_unit(cols)
        if pos is None:
            break
        i, j = pos
        cols = _eliminate(cols, i, j)
        del tdeg[i]
        del sdeg[j]
    F = FreeModule(P.nvars, tdeg)
    vecs = [Vector(F, c) for c in cols if c]
    if vecs:
        vecs = mingens(vecs, F, order, **caps)
    src = FreeModule(P.nvars, [v.degree() for v in vecs])
    return GradedPresentation(F, Matrix(src, F, vecs))


# ---------------------------------------------------------------- resolutions

@dataclass
class FreeResolution:
    """``0 <- F_0 <-d_1- F_1 <- ... <-d_n- F_n <- 0``; ``maps[i-1]`` is ``d_i``."""

    modules: list
    maps: list
    minimal: bool = False

    @property
    def length(self):
        return len(self.maps)

    def ranks(self):
        return [F.rank for F in self.modules]

    def betti_table(self) -> dict:
        """``{(homological degree, internal degree): rank}``."""
        table = {}
        for i, F in enumerate(self.modules):
            for d in F.degrees:
                table[(i, d)] = table.get((i, d), 0) + 1
        return table

    def is_complex(self) -> bool:
        return all((self.maps[i] @ self.maps[i + 1]).is_zero() for i in range(len(self.maps) - 1))

    def has_unit_entries(self) -> bool:
        return any(d.has_unit_entry() for d in self.maps)

    def hilbert_series(self) -> "HilbertSeries":
        num = {}
        for i, F in enumerate(self.modules):
            s = -1 if i % 2 else 1
            for d in F.degrees:
                num[d] = num.get(d, 0) + s
        return HilbertSeries(self.modules[0].nvars, num)

    def betti_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["homological_degree", "internal_degree", "rank"])
        for (i, d), n in sorted(self.betti_table().items()):
            w.writerow([i, d, n])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "nvars": self.modules[0].nvars,
            "degrees": [list(F.degrees) for F in self.modules],
            "maps": [d.to_json_obj() for d in self.maps],
            "minimal": self.minimal,
        })

    @classmethod
    def from_json(cls, text: str) -> "FreeResolution":
        obj = json.loads(text)
        n = obj["nvars"]
        modules = [FreeModule(n, d) for d in obj["degrees"]]
        maps = [Matrix.from_json_obj(m) for m in obj["maps"]]
        return cls(modules, maps, obj["minimal"])


class Resolver:
    """Builds a minimal free resolution of a presented module on demand."""

    def __init__(self, P: GradedPresentation, order=None, **caps):
        self.order = get_order(order)
        self.caps = caps
        self.nvars = P.nvars
        P = minimal_presentation(P, self.order, **caps)
        self.modules = [P.target]
        self.maps = []
        self.done = False
        if P.num_relations == 0:
            self.done = True
        else:
            self.modules.append(P.relations.source)
            self.maps.append(P.relations)

    def extend_to(self, n):
        while not self.done and len(self.maps) < n:
            K = kernel(self.maps[-1], self.order, **self.caps)
            if K.source.rank == 0:
                self.done = True
                break
            if len(self.maps) >= self.nvars:
                raise ArithmeticError("resolution longer than the number of variables")
            self.modules.append(K.source)
            self.maps.append(K)
        return self

    def module(self, i) -> FreeModule:
        self.extend_to(i)
        if i < len(self.modules):
            return self.modules[i]
        return FreeModule(self.nvars)

    def map(self, i) -> Matrix:
        """``d_i : F_i -> F_{i-1}`` (zero map beyond the length)."""
        self.extend_to(i)
        if 1 <= i <= len(self.maps):
            return self.maps[i - 1]
        return Matrix.zero(self.module(i), self.module(i - 1))

    def resolution(self) -> FreeResolution:
        self.extend_to(self.nvars + 1)
        return FreeResolution(list(self.modules), list(self.maps), minimal=True)

    def ext_vanishes(self, i) -> bool:
        """Whether ``Ext^i(M, R) = 0`` for the resolved module ``M``."""
        if i < 1:
            raise ValueError("only i >= 1 is supported")
        Fi = self.module(i)
        if Fi.rank == 0:
            return True
        nxt = self.map(i + 1)
        if nxt.source.rank == 0:
            cocycles = [Fi.dual().basis(k) for k in range(Fi.rank)]
        else:
            cocycles = kernel(nxt.transpose(), self.order, **self.caps).columns
        if not cocycles:
            return True
        image = self.map(i).transpose()
        gens = [c for c in image.columns if c]
        if not gens:
            return False
        G = buchberger(gens, Fi.dual(), self.order, **self.caps)
        return all(not normal_form(z, G) for z in cocycles)


def minimal_free_resolution(P: GradedPresentation, max_len=None, order=None, **caps) -> FreeResolution:
    R = Resolver(P, order, **caps)
    if max_len is None:
        return R.resolution()
    R.extend_to(max_len)
    return FreeResolution(list(R.modules[:max_len + 1]), list(R.maps[:max_len]), minimal=True)


def minimalize_resolution(res: FreeResolution) -> FreeResolution:
    """Cancel unit entries of any differential until none remain.

    Each unit at row p, column q of ``d_i`` splits off a trivial summand
    ``R -> R``: drop generator p of F_{i-1} and q of F_i, replace ``d_i`` by
    its Schur complement, drop column p of ``d_{i-1}`` and row q of ``d_{i+1}``.
    Pivots are taken in the lowest differential first, lowest column, lowest row.
    """
    nv = res.modules[0].nvars
    degs = [list(F.degrees) for F in res.modules]
    cols = [[dict(c.terms) for c in d.columns] for d in res.maps]
    changed = True
    while changed:
        changed = False
        for i in range(len(cols)):
            pos = _first_unit(cols[i])
            if pos is None:
                continue
            p, q = pos
            cols[i] = _eliminate(cols[i], p, q)
            if i > 0:
                del cols[i - 1][p]
            if i + 1 < len(cols):
                cols[i + 1] = [{(m, k - (k > q)): v for (m, k), v in c.items() if k != q}
                               for c in cols[i + 1]]
            del degs[i][p]
            del degs[i + 1][q]
            changed = True
            break
    modules = [FreeModule(nv, d) for d in degs]
    while len(modules) > 1 and modules[-1].rank == 0:
        modules.pop()
        cols.pop()
    maps = [Matrix(modules[i + 1], modules[i], [Vector(modules[i], c) for c in cols[i]])
            for i in range(len(cols))]
    return FreeResolution(modules, maps, minimal=not any(d.has_unit_entry() for d in maps))


# ------------------------------------------------------------- Hilbert series

class HilbertSeries:
    """``numerator(x) / (1 - x^2)^nvars`` with an integer Laurent numerator."""

    def __init__(self, nvars, numerator=None):
        self.nvars = nvars
        self.numerator = {d: c for d, c in (numerator or {}).items() if c}

    @classmethod
    def of_free(cls, F: FreeModule):
        num = {}
        for d in F.degrees:
            num[d] = num.get(d, 0) + 1
        return cls(F.nvars, num)

    def shift(self, l):
        return HilbertSeries(self.nvars, {d + l: c for d, c in self.numerator.items()})

    def __add__(self, other):
        assert self.nvars == other.nvars
        num = dict(self.numerator)
        for d, c in other.numerator.items():
            num[d] = num.get(d, 0) + c
        return HilbertSeries(self.nvars, num)

    def __rmul__(self, k: int):
        return HilbertSeries(self.nvars, {d: k * c for d, c in self.numerator.items()})

    def __sub__(self, other):
        return self + (-1) * other

    def __eq__(self, other):
        return (isinstance(other, HilbertSeries) and self.nvars == other.nvars
                and self.numerator == other.numerator)

    def numerator_poly(self) -> Poly:
        """Numerator as a polynomial in one variable (requires nonnegative degrees)."""
        return Poly(1, {(d,): c for d, c in self.numerator.items()})

    def coefficients(self, upto):
        """Graded dimensions ``{degree: dim}`` for degrees below ``upto``."""
        if not self.numerator:
            return {}
        lo = min(self.numerator)
        # 1/(1-x^2)^n = sum_k C(k+n-1, n-1) x^(2k)
        out = {}
        for d, c in self.numerator.items():
            k = 0
            while d + 2 * k < upto:
                w = comb(k + self.nvars - 1, self.nvars - 1) if self.nvars else int(k == 0)
                out[d + 2 * k] = out.get(d + 2 * k, 0) + c * w
                k += 1
        return {d: out[d] for d in sorted(out) if out[d] and d >= lo}

    def __repr__(self):
        terms = " + ".join(f"{c}*x^{d}" for d, c in sorted(self.numerator.items())) or "0"
        return f"HilbertSeries(({terms}) / (1-x^2)^{self.nvars})"


def hilbert_series(P: GradedPresentation, order=None, **caps) -> HilbertSeries:
    return minimal_free_resolution(P, order=order, **caps).hilbert_series()


# ------------------------------------------------------------- Koszul complex

@dataclass(frozen=True)
class KoszulData:
    """Koszul complex of ``t_1^b, ..., t_r^b``; labels are 0-based index tuples."""

    r: int
    b: int = 1

    def labels(self, k):
        if k < 0 or k > self.r:
            return []
        return list(combinations(range(self.r), k))

    def index(self, k):
        return {J: i for i, J in enumerate(self.labels(k))}

    @property
    def generator_degree(self):
        return VAR_DEGREE * self.b


def contraction_sign(J, j) -> int:
    """Sign of removing ``j`` from the wedge ``e_J``: ``e_J = sign * e_{J-j} ^ e_j``."""
    return -1 if sum(1 for x in J if x > j) % 2 else 1


def koszul_differential(k: int, data: KoszulData, shift=None) -> Matrix:
    """``delta_k : R (x) N^k -> R (x) N^(k-1)``; columns e_J, |J| = k.

    Without ``shift``, e_J sits in degree ``2b|J|``; with it, target
    generators sit in degree ``shift`` and sources in ``shift + 2b``.
    """
    r, b = data.r, data.b
    if shift is None:
        tdeg, sdeg = VAR_DEGREE * b * (k - 1), VAR_DEGREE * b * k
    else:
        tdeg, sdeg = shift, shift + VAR_DEGREE * b
    rows = data.labels(k - 1)
    target = FreeModule(r, [tdeg] * len(rows))
    source = FreeModule(r, [sdeg] * comb(r, k) if 0 <= k <= r else [])
    idx = data.index(k - 1)
    cols = []
    for J in data.labels(k):
        t = {}
        for j in J:
            e = [0] * r
            e[j] = b
            I = tuple(x for x in J if x != j)
            t[(tuple(e), idx[I])] = contraction_sign(J, j)
        cols.append(Vector(target, t))
    return Matrix(source, target, cols)


def koszul_syzygy_presentation(k: int, data: KoszulData) -> GradedPresentation:
    """Presentation of the k-th Koszul syzygy ``K_k``, generated in degree 0."""
    r = data.r
    if not 0 <= k <= r + 1:
        raise ValueError(f"k must lie in 0..{r + 1}")
    if k == r + 1:
        return GradedPresentation.free(r, ())
    if k == r:
        return GradedPresentation.free(r, (0,))
    return GradedPresentation(FreeModule(r, [0] * comb(r, k)),
                              koszul_differential(k + 1, data, shift=0))


# --------------------------------------------------------- transpose and Ext

def auslander_transpose(P: GradedPresentation, order=None, **caps) -> GradedPresentation:
    """``Tr M = coker(phi^T)`` for a minimal presentation ``phi`` of M."""
    P = minimal_presentation(P, order, **caps)
    A = P.relations
    return GradedPresentation(A.source.dual(), A.transpose())


def ext_vanishes(P: GradedPresentation, i: int, order=None, **caps) -> bool:
    """Decide ``Ext^i_R(M, R) = 0`` for the module M presented by ``P``."""
    return Resolver(P, order, **caps).ext_vanishes(i)


def syzygy_order(P: GradedPresentation, order=None, **caps) -> int:
    """Largest m such that M is an m-th syzygy; free modules get ``r``.

    M is an m-th syzygy exactly when ``Ext^i(Tr M, R)`` vanishes for
    ``1 <= i <= m``.
    """
    r = P.nvars
    P = minimal_presentation(P, order, **caps)
    if P.num_relations == 0:
        return r
    T = GradedPresentation(P.relations.source.dual(), P.relations.transpose())
    res = Resolver(T, order, **caps)
    for i in range(1, r + 1):
        if not res.ext_vanishes(i):
            return i - 1
    return r
