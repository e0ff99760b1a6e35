"""
Exact sparse polynomials over QQ, graded free modules, and Groebner bases.

Everything lives in R = QQ[t1, ..., tr] with each variable of (cohomological)
degree 2.  A free module is a list of generator degrees; its elements are
sparse dicts mapping ``(monomial, component)`` to a rational coefficient.
Groebner bases use a term-over-position module order on top of a monomial
order (degrevlex by default).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

QQ = Fraction
VAR_DEGREE = 2


class ResourceCapExceeded(RuntimeError):
    """A configured computational limit was hit."""


class DegreeCapExceeded(ResourceCapExceeded):
    pass


class PairLimitExceeded(ResourceCapExceeded):
    pass


# ---------------------------------------------------------------- monomials

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class MonomialOrder:
    """A monomial order given by a sort key; a larger key is a larger monomial."""

    def __init__(self, name, key):
        self.name = name
        self._key = lru_cache(maxsize=None)(key)

    def key(self, mono):
        return self._key(mono)

    def term_key(self, term):
        # term-over-position; on equal monomials the smaller index wins
        mono, comp = term
        return (self._key(mono), -comp)

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"

    def __reduce__(self):
        return (get_order, (self.name,))


DEGREVLEX = MonomialOrder(
    "degrevlex", lambda m: (sum(m), tuple(-x for x in reversed(m))))
LEX = MonomialOrder("lex", lambda m: m)
DEGLEX = MonomialOrder("deglex", lambda m: (sum(m), m))

_ORDERS = {o.name: o for o in (DEGREVLEX, LEX, DEGLEX)}


def get_order(order=None) -> MonomialOrder:
    if order is None:
        return DEGREVLEX
    if isinstance(order, MonomialOrder):
        return order
    try:
        return _ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


# --------------------------------------------------------------- polynomials

def _fmt_coeff(c) -> str:
    c = QQ(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_mono(mono) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"t{i + 1}")
        elif e > 1:
            parts.append(f"t{i + 1}^{e}")
    return "*".join(parts)


def _format_terms(items) -> str:
    # items: (coeff, monomial string) in decreasing order
    out = []
    for c, ms in items:
        c = QQ(c)
        neg = c < 0
        a = -c if neg else c
        if ms:
            body = ms if a == 1 else f"{_fmt_coeff(a)}*{ms}"
        else:
            body = _fmt_coeff(a)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


class Poly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    m = tuple(m)
                    assert len(m) == nvars
                    self.terms[m] = QQ(c)

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, c, nvars):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i, nvars, power=1):
        """``t_{i+1} ** power`` (variables are 0-indexed here)."""
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other, self.nvars)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, 0) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Vector):
            return NotImplemented
        other = self._coerce(other)
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Poly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.constant(1, self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def degree(self):
        """Polynomial degree (each variable counts 1); -1 for zero."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def leading_term(self, order=None):
        order = get_order(order)
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def sorted_terms(self, order=None):
        order = get_order(order)
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]),
                      reverse=True)

    def to_str(self, order=None):
        return _format_terms((c, _fmt_mono(m)) for m, c in self.sorted_terms(order))

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse the text form produced by ``str(Poly)``, e.g. ``"3/2*t1^2*t3 - t2^2"``."""
    s = text.strip()
    if s in ("", "0"):
        return Poly.zero(nvars)
    terms = {}
    pos = 0
    for match in _TERM_RE.finditer(s):
        if match.start() != pos and s[pos:match.start()].strip():
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = QQ(sign)
        e = [0] * nvars
        for factor in match.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"cannot parse polynomial {text!r}")
            if factor[0] == "t":
                name, _, power = factor.partition("^")
                i = int(name[1:]) - 1
                if not 0 <= i < nvars:
                    raise ValueError(f"variable {name} out of range in {text!r}")
                e[i] += int(power) if power else 1
            else:
                coeff *= QQ(factor)
        m = tuple(e)
        terms[m] = terms.get(m, 0) + coeff
    return Poly(nvars, terms)


# --------------------------------------------------------------- free modules

@dataclass(frozen=True)
class FreeModule:
    """Graded free module over R with generators in the given degrees."""

    nvars: int
    degrees: tuple

    def __init__(self, nvars: int, degrees: Iterable[int] = ()):
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degrees", tuple(int(d) for d in degrees))

    @property
    def rank(self):
        return len(self.degrees)

    def dual(self):
        return FreeModule(self.nvars, [-d for d in self.degrees])

    def shift(self, l):
        return FreeModule(self.nvars, [d + l for d in self.degrees])

    def __add__(self, other):
        assert self.nvars == other.nvars
        return FreeModule(self.nvars, self.degrees + other.degrees)

    def basis(self, i):
        return Vector(self, {((0,) * self.nvars, i): 1})

    def zero(self):
        return Vector(self, {})


def term_degree(module: FreeModule, term) -> int:
    mono, comp = term
    return VAR_DEGREE * sum(mono) + module.degrees[comp]


class Vector:
    """Element of a graded free module: sparse ``{(monomial, component): coeff}``."""

    __slots__ = ("module", "terms")

    def __init__(self, module: FreeModule, terms=None):
        self.module = module
        self.terms = {k: QQ(v) for k, v in terms.items() if v} if terms else {}

    @classmethod
    def from_polys(cls, module: FreeModule, polys: Sequence) -> "Vector":
        assert len(polys) == module.rank
        t = {}
        for i, p in enumerate(polys):
            if isinstance(p, (int, Fraction)):
                p = Poly.constant(p, module.nvars)
            for m, c in p.terms.items():
                t[(m, i)] = c
        return cls(module, t)

    def component(self, i) -> Poly:
        return Poly(self.module.nvars, {m: c for (m, k), c in self.terms.items() if k == i})

    def to_polys(self):
        out = [dict() for _ in range(self.module.rank)]
        for (m, k), c in self.terms.items():
            out[k][m] = c
        return [Poly(self.module.nvars, t) for t in out]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Vector) and self.module == other.module
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        t = dict(self.terms)
        _axpy(t, other.terms, 1)
        return Vector(self.module, t)

    def __sub__(self, other):
        t = dict(self.terms)
        _axpy(t, other.terms, -1)
        return Vector(self.module, t)

    def __neg__(self):
        return Vector(self.module, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, p):
        if isinstance(p, (int, Fraction)):
            return Vector(self.module, {k: p * c for k, c in self.terms.items()})
        t = {}
        for m, c in p.terms.items():
            _axpy(t, self.terms, c, m)
        return Vector(self.module, t)

    def degrees(self):
        return {term_degree(self.module, k) for k in self.terms}

    def degree(self):
        """Total degree of a homogeneous element (None for zero)."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous")
        return degs.pop()

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def leading_term(self, order=None):
        order = get_order(order)
        k = max(self.terms, key=order.term_key)
        return k, self.terms[k]

    def __str__(self):
        return "[" + ", ".join(str(p) for p in self.to_polys()) + "]"

    __repr__ = __str__


def _axpy(target: dict, source: dict, c, mono=None):
    """target += c * mono * source, in place."""
    get = target.get
    if mono is None:
        for k, v in source.items():
            nv = get(k, 0) + c * v
            if nv:
                target[k] = nv
            else:
                del target[k]
        return
    for (m, comp), v in source.items():
        k = (tuple(x + y for x, y in zip(m, mono)), comp)
        nv = get(k, 0) + c * v
        if nv:
            target[k] = nv
        else:
            del target[k]


# ------------------------------------------------------------------ matrices

class Matrix:
    """Homogeneous map of graded free modules, stored as a list of columns.

    Column ``j`` is the image of the ``j``-th basis element of ``source``,
    a vector in ``target``.
    """

    def __init__(self, source: FreeModule, target: FreeModule, columns: Sequence[Vector]):
        assert source.rank == len(columns)
        assert source.nvars == target.nvars
        self.source = source
        self.target = target
        self.columns = [c if c.module == target else Vector(target, c.terms) for c in columns]

    @classmethod
    def from_rows(cls, source, target, rows):
        """Build from a row-major list of polynomials (``target.rank`` rows)."""
        cols = []
        for j in range(source.rank):
            cols.append(Vector.from_polys(target, [rows[i][j] for i in range(target.rank)]))
        return cls(source, target, cols)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [target.zero() for _ in range(source.rank)])

    @property
    def nvars(self):
        return self.source.nvars

    @property
    def shape(self):
        return (self.target.rank, self.source.rank)

    def entry(self, i, j) -> Poly:
        return self.columns[j].component(i)

    def rows(self):
        cols = [c.to_polys() for c in self.columns]
        return [[cols[j][i] for j in range(self.source.rank)] for i in range(self.target.rank)]

    def is_zero(self):
        return not any(self.columns)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.source == other.source
                and self.target == other.target
                and all(a.terms == b.terms for a, b in zip(self.columns, other.columns)))

    def apply(self, v: Vector) -> Vector:
        t = {}
        for (m, k), c in v.terms.items():
            _axpy(t, self.columns[k].terms, c, m)
        return Vector(self.target, t)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        assert other.target.degrees == self.source.degrees
        return Matrix(other.source, self.target, [self.apply(c) for c in other.columns])

    def transpose(self) -> "Matrix":
        src, tgt = self.target.dual(), self.source.dual()
        cols = [dict() for _ in range(src.rank)]
        for j, col in enumerate(self.columns):
            for (m, i), c in col.terms.items():
                cols[i][(m, j)] = c
        return Matrix(src, tgt, [Vector(tgt, t) for t in cols])

    def is_homogeneous(self) -> bool:
        for j, col in enumerate(self.columns):
            for k in col.terms:
                if term_degree(self.target, k) != self.source.degrees[j]:
                    return False
        return True

    def has_unit_entry(self) -> bool:
        return any(sum(m) == 0 for col in self.columns for (m, _k) in col.terms)

    def __str__(self):
        rows = self.rows()
        return "\n".join("[" + ", ".join(str(p) for p in row) + "]" for row in rows)

    def to_json_obj(self):
        return {
            "nvars": self.nvars,
            "row_degrees": list(self.target.degrees),
            "col_degrees": list(self.source.degrees),
            "entries": [[str(p) for p in row] for row in self.rows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "Matrix":
        n = obj["nvars"]
        target = FreeModule(n, obj["row_degrees"])
        source = FreeModule(n, obj["col_degrees"])
        rows = [[parse_poly(s, n) for s in row] for row in obj["entries"]]
        if not rows:
            return cls.zero(source, target)
        return cls.from_rows(source, target, rows)

    @classmethod
    def from_json(cls, text: str) -> "Matrix":
        return cls.from_json_obj(json.loads(text))


# ------------------------------------------------------------ Groebner bases

def _lead(terms: dict, order: MonomialOrder):
    return max(terms, key=order.term_key)


class _Reducer:
    """Leading-term index over a growing list of monic module elements."""

    def __init__(self, order):
        self.order = order
        self.polys = []
        self.lms = []
        self.by_comp = {}

    def add(self, poly, lm):
        idx = len(self.polys)
        self.polys.append(poly)
        self.lms.append(lm)
        self.by_comp.setdefault(lm[1], []).append(idx)
        return idx

    def divisor(self, term):
        mono, comp = term
        for idx in self.by_comp.get(comp, ()):
            if mono_divides(self.lms[idx][0], mono):
                return idx
        return None

    def reduce(self, f: dict, full=True, track=None, tracks=None, quotients=None,
               skip=None):
        """Reduce ``f`` in place; returns the remainder dict.

        ``track``/``tracks`` carry a linear representation alongside, and
        ``quotients`` (a dict) accumulates ``{(mono, idx): coeff}``.
        """
        term_key = self.order.term_key
        rem = {}
        while f:
            lt = max(f, key=term_key)
            idx = self.divisor(lt)
            if idx is not None and idx == skip:
                idx = self._divisor_skipping(lt, skip)
            if idx is None:
                if not full:
                    rem.update(f)
                    return rem
                rem[lt] = f.pop(lt)
                continue
            g = self.polys[idx]
            q = mono_div(lt[0], self.lms[idx][0])
            c = f[lt] / g[self.lms[idx]]
            _axpy(f, g, -c, q)
            if track is not None:
                _axpy(track, tracks[idx], -c, q)
            if quotients is not None:
                k = (q, idx)
                nv = quotients.get(k, 0) + c
                if nv:
                    quotients[k] = nv
                else:
                    del quotients[k]
        return rem

    def _divisor_skipping(self, term, skip):
        mono, comp = term
        for idx in self.by_comp.get(comp, ()):
            if idx != skip and mono_divides(self.lms[idx][0], mono):
                return idx
        return None


@dataclass
class GroebnerBasis:
    """Reduced, monic Groebner basis of a submodule of ``module``.

    ``minimal_inputs`` lists the indices of the input generators that form a
    minimal homogeneous generating set.  When computed with tracking,
    ``transform[k]`` expresses ``elements[k]`` in terms of the inputs, as a
    vector of ``input_module``.
    """

    module: FreeModule
    order: MonomialOrder
    elements: list
    minimal_inputs: list
    input_module: FreeModule | None = None
    transform: list | None = None

    def __len__(self):
        return len(self.elements)

    def leading_terms(self):
        return [e.leading_term(self.order)[0] for e in self.elements]

    def degrees(self):
        return [e.degree() for e in self.elements]

    def contains(self, v: Vector) -> bool:
        return not normal_form(v, self)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.module == other.module
                and self.order.name == other.order.name
                and sorted(map(_canon, self.elements)) == sorted(map(_canon, other.elements)))


def _canon(v: Vector):
    return sorted((m, k, c.numerator, c.denominator) for (m, k), c in v.terms.items())


def _reducer_for(G: GroebnerBasis) -> _Reducer:
    red = _Reducer(G.order)
    for e in G.elements:
        red.add(e.terms, _lead(e.terms, G.order))
    return red


def normal_form(f: Vector, G, order=None) -> Vector:
    """Fully reduce ``f`` modulo the leading terms of ``G``.

    ``G`` may be a :class:`GroebnerBasis` or a plain list of nonzero vectors
    (in which case ``order`` applies and the result is the output of the
    division algorithm, not necessarily canonical).
    """
    if isinstance(G, GroebnerBasis):
        red = _reducer_for(G)
    else:
        red = _Reducer(get_order(order))
        for g in G:
            if not g:
                raise ValueError("cannot divide by the zero vector")
            red.add(g.terms, _lead(g.terms, red.order))
    return Vector(f.module, red.reduce(dict(f.terms)))


def divide(f: Vector, G: GroebnerBasis):
    """Division with quotients: returns ``(remainder, quotients)`` where
    ``quotients`` is a vector in the free module with one generator per
    element of ``G`` and ``f = sum q_k g_k + remainder``."""
    red = _reducer_for(G)
    quot = {}
    rem = red.reduce(dict(f.terms), quotients=quot)
    qmod = FreeModule(f.module.nvars, G.degrees())
    return Vector(f.module, rem), Vector(qmod, quot)


def buchberger(gens: Sequence[Vector], module: FreeModule | None = None, order=None,
               track=False, degree_cap=64, pair_limit=None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by homogeneous ``gens``.

    Pairs and inputs are processed degree by degree, so the inputs that
    survive reduction at their own degree form a minimal generating set.
    ``degree_cap`` bounds the polynomial degree of any S-pair;
    ``pair_limit`` bounds the number of S-pairs reduced.
    """
    order = get_order(order)
    if module is None:
        if not gens:
            raise ValueError("module required for an empty generator list")
        module = gens[0].module
    n_in = len(gens)
    input_module = FreeModule(module.nvars, [g.degree() if g else 0 for g in gens])
    zero_mono = (0,) * module.nvars
    term_key = order.term_key

    queue = {}  # degree -> list of ("pair"|"input", payload)
    for i, g in enumerate(gens):
        if g.module.rank != module.rank:
            raise ValueError("generator does not live in the given module")
        if not g:
            continue
        if not g.is_homogeneous():
            raise ValueError("buchberger requires homogeneous generators")
        queue.setdefault(g.degree(), []).append((1, i))

    red = _Reducer(order)
    degs = []
    tracks = [] if track else None
    pairs = {}  # degree -> set of (i, j)
    pair_lcm = {}
    minimal = []
    processed = 0

    def lcm_term(i, j):
        return (mono_lcm(red.lms[i][0], red.lms[j][0]), red.lms[i][1])

    def add_element(f, ftrack):
        lt = _lead(f, order)
        c = f[lt]
        if c != 1:
            inv = 1 / c
            for k in f:
                f[k] *= inv
            if ftrack is not None:
                for k in ftrack:
                    ftrack[k] *= inv
        h = red.add(f, lt)
        degs.append(term_degree(module, lt))
        if track:
            tracks.append(ftrack)
        _update(h)

    def _update(h):
        hm, hc = red.lms[h]
        new = []
        for i in red.by_comp.get(hc, ()):
            if i != h:
                new.append((i, mono_lcm(red.lms[i][0], hm)))
        # chain criterion on the new pairs (Gebauer-Moeller M and F)
        kept = []
        for idx, (i, L) in enumerate(new):
            rest = new[idx + 1:]
            if any(mono_divides(L2, L) for _i2, L2 in rest):
                continue
            if any(mono_divides(L2, L) for _i2, L2 in kept):
                continue
            kept.append((i, L))
        # chain criterion on old pairs (Gebauer-Moeller B)
        for d, plist in pairs.items():
            drop = []
            for (i, j) in plist:
                if red.lms[i][1] != hc:
                    continue
                L = pair_lcm[(i, j)]
                if not mono_divides(hm, L):
                    continue
                if (mono_lcm(red.lms[i][0], hm) != L and mono_lcm(red.lms[j][0], hm) != L):
                    drop.append((i, j))
            for p in drop:
                plist.discard(p)
                del pair_lcm[p]
        for i, L in kept:
            if sum(L) > degree_cap:
                raise DegreeCapExceeded(
                    f"S-pair of polynomial degree {sum(L)} exceeds cap {degree_cap}")
            d = VAR_DEGREE * sum(L) + module.degrees[hc]
            pairs.setdefault(d, set()).add((i, h))
            pair_lcm[(i, h)] = L

    while True:
        pending = [d for d, v in pairs.items() if v] + list(queue)
        if not pending:
            break
        D = min(pending)
        # S-pairs of degree D first, then the inputs of degree D
        plist = sorted(pairs.pop(D, ()), key=lambda p: (term_key((pair_lcm[p], red.lms[p[0]][1])), p))
        for (i, j) in plist:
            L = pair_lcm.pop((i, j))
            processed += 1
            if pair_limit is not None and processed > pair_limit:
                raise PairLimitExceeded(f"more than {pair_limit} S-pairs")
            gi, gj = red.polys[i], red.polys[j]
            f = {}
            _axpy(f, gi, 1, mono_div(L, red.lms[i][0]))
            _axpy(f, gj, -1, mono_div(L, red.lms[j][0]))
            ftrack = None
            if track:
                ftrack = {}
                _axpy(ftrack, tracks[i], 1, mono_div(L, red.lms[i][0]))
                _axpy(ftrack, tracks[j], -1, mono_div(L, red.lms[j][0]))
            f = red.reduce(f, full=False, track=ftrack, tracks=tracks)
            if f:
                add_element(f, ftrack)
        for _kind, i in queue.pop(D, ()):
            f = dict(gens[i].terms)
            ftrack = {(zero_mono, i): QQ(1)} if track else None
            f = red.reduce(f, full=False, track=ftrack, tracks=tracks)
            if f:
                minimal.append(i)
                add_element(f, ftrack)

    # interreduce tails; leading terms are already pairwise non-divisible
    n = len(red.polys)
    for idx in range(n):
        f = red.polys[idx]
        lt = red.lms[idx]
        head = f.pop(lt)
        rest_track = tracks[idx] if track else None
        rem = red.reduce(f, full=True, track=rest_track, tracks=tracks, skip=idx)
        rem[lt] = head
        red.polys[idx] = rem
    order_idx = sorted(range(n), key=lambda k: (red.lms[k][1], order.key(red.lms[k][0])))
    elements = [Vector(module, red.polys[k]) for k in order_idx]
    transform = None
    if track:
        transform = [Vector(input_module, tracks[k]) for k in order_idx]
    return GroebnerBasis(module, order, elements, sorted(minimal), input_module, transform)


def syzygy_module(G: GroebnerBasis) -> list:
    """Generators of the syzygies among the elements of ``G`` (Schreyer).

    The result lives in the free module with one generator per element of
    ``G``, in the degree of that element.  Only pairs whose leading-term
    syzygy is not implied by an earlier one are lifted.
    """
    order = G.order
    red = _reducer_for(G)
    F = FreeModule(G.module.nvars, G.degrees())
    out = []
    for j in range(len(G)):
        mj, cj = red.lms[j]
        cand = []
        for i in red.by_comp.get(cj, ()):
            if i >= j:
                continue
            L = mono_lcm(red.lms[i][0], mj)
            cand.append((mono_div(L, mj), i, L))
        for q, i, L in cand:
            if any(mono_divides(q2, q) and (q2 != q or i2 < i) for q2, i2, _ in cand if i2 != i):
                continue
            ui, uj = mono_div(L, red.lms[i][0]), q
            f = {}
            _axpy(f, red.polys[i], 1, ui)
            _axpy(f, red.polys[j], -1, uj)
            quot = {}
            rem = red.reduce(f, full=True, quotients=quot)
            if rem:
                raise ArithmeticError("input to syzygy_module is not a Groebner basis")
            s = {(ui, i): QQ(1)}
            _axpy(s, {(uj, j): QQ(1)}, -1)
            _axpy(s, quot, -1)
            out.append(Vector(F, s))
    return out


def mingens(vectors: Sequence[Vector], module: FreeModule, order=None, **caps) -> list:
    """A minimal homogeneous generating subset of ``vectors`` (input order kept
    within each degree, lower degrees first)."""
    if not vectors:
        return []
    G = buchberger(vectors, module, order, **caps)
    chosen = sorted(G.minimal_inputs, key=lambda i: (vectors[i].degree(), i))
    return [vectors[i] for i in chosen]


def _combine(coeffs: Vector, images: Sequence[Vector], module: FreeModule) -> Vector:
    t = {}
    for (m, k), c in coeffs.terms.items():
        _axpy(t, images[k].terms, c, m)
    return Vector(module, t)


def kernel(A: Matrix, order=None, minimal=True, **caps) -> Matrix:
    """Matrix whose columns generate ``ker A`` (minimally, by default)."""
    order = get_order(order)
    F = A.source
    nz = [j for j, c in enumerate(A.columns) if c]
    cand = [F.basis(j) for j, c in enumerate(A.columns) if not c]
    if nz:
        cols = [A.columns[j] for j in nz]
        G = buchberger(cols, A.target, order, track=True, **caps)
        # transform vectors are indexed by position in ``cols``; lift to F
        lift = [Vector(F, {(m, nz[k]): c for (m, k), c in T.terms.items()}) for T in G.transform]
        for s in syzygy_module(G):
            v = _combine(s, lift, F)
            if v:
                cand.append(v)
        for pos, j in enumerate(nz):
            rem, q = divide(cols[pos], G)
            assert not rem
            v = F.basis(j) - _combine(q, lift, F)
            if v:
                cand.append(v)
    if minimal and cand:
        cand = mingens(cand, F, order, **caps)
    return Matrix(FreeModule(F.nvars, [v.degree() for v in cand]), F, cand)


def image_basis(A: Matrix, order=None, **caps) -> GroebnerBasis:
    """Groebner basis of the column span of ``A``."""
    return buchberger([c for c in A.columns if c], A.target, order, **caps)
