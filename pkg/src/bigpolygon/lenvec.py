"""
Length vectors and their combinatorics.

Subsets of [r] = {1, ..., r} are bitmasks: bit ``i`` stands for element
``i + 1``.  All comparisons are exact; entries are stored as Fractions
and compared after clearing denominators.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import lcm

import numpy as np

MAX_R = 16


class NonGeneric(ValueError):
    """Raised when a length vector has a subset tying its complement."""

    def __init__(self, lengths, witness):
        self.lengths = lengths
        self.witness = witness
        super().__init__(
            f"length vector {format_vector(lengths)} is not generic: "
            f"{format_subset(witness)} ties its complement")


class OverlappingSets(ValueError):
    pass


def popcount(x: int) -> int:
    return bin(x).count("1")


def subset_mask(elements) -> int:
    """Bitmask of a collection of 1-based indices."""
    m = 0
    for j in elements:
        if j < 1:
            raise ValueError("subset elements are 1-based")
        m |= 1 << (j - 1)
    return m


def subset_elements(mask: int) -> tuple:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def format_subset(mask: int) -> str:
    return "{" + ",".join(map(str, subset_elements(mask))) + "}"


def format_vector(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def complement(mask: int, r: int) -> int:
    return ((1 << r) - 1) & ~mask


def shuffle_sign(J: int, K: int) -> int:
    """``(-1)^#{(j, k) in J x K : j > k}`` for disjoint J, K."""
    if J & K:
        raise OverlappingSets(f"{format_subset(J)} and {format_subset(K)} intersect")
    inversions = 0
    k = K
    pos = 0
    while k:
        if k & 1:
            inversions += popcount(J >> (pos + 1))
        k >>= 1
        pos += 1
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class LengthVector:
    entries: tuple
    _ints: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, entries):
        vals = tuple(Fraction(x) for x in entries)
        if not 1 <= len(vals) <= MAX_R:
            raise ValueError(f"length vectors need 1 <= r <= {MAX_R} entries")
        if any(x < 0 for x in vals):
            raise ValueError("length vector entries must be nonnegative")
        if any(vals[i] > vals[i + 1] for i in range(len(vals) - 1)):
            raise ValueError("length vector entries must be weakly increasing")
        object.__setattr__(self, "entries", vals)
        den = lcm(*(x.denominator for x in vals))
        object.__setattr__(self, "_ints", tuple(int(x * den) for x in vals))

    @classmethod
    def parse(cls, text: str) -> "LengthVector":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if not parts:
            raise ValueError("empty length vector")
        return cls(Fraction(p) for p in parts)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def full(self) -> int:
        return (1 << self.r) - 1

    def __len__(self):
        return self.r

    def __str__(self):
        return format_vector(self.entries)

    def _isum(self, J):
        s = 0
        for i, x in enumerate(self._ints):
            if J >> i & 1:
                s += x
        return s

    def tie_witness(self):
        """A subset J with l(J) = l(J^c), or None."""
        total = sum(self._ints)
        # every complementary pair has exactly one member avoiding element r
        for J in range(1 << (self.r - 1)):
            if 2 * self._isum(J) == total:
                return J
        return None

    def require_generic(self):
        w = self.tie_witness()
        if w is not None:
            raise NonGeneric(self.entries, w)


def subset_sum(l: LengthVector, J: int) -> Fraction:
    return sum((x for i, x in enumerate(l.entries) if J >> i & 1), Fraction(0))


def is_generic(l: LengthVector) -> bool:
    return l.tie_witness() is None


def is_long(l: LengthVector, J: int) -> bool:
    l.require_generic()
    return 2 * l._isum(J) > sum(l._ints)


def is_short(l: LengthVector, J: int) -> bool:
    return not is_long(l, J)


def short_subsets(l: LengthVector) -> list:
    l.require_generic()
    total = sum(l._ints)
    return [J for J in range(1 << l.r) if 2 * l._isum(J) < total]


def long_subsets(l: LengthVector) -> list:
    l.require_generic()
    total = sum(l._ints)
    return [J for J in range(1 << l.r) if 2 * l._isum(J) > total]


def _short_table(l: LengthVector):
    s = set(short_subsets(l))
    return [J in s for J in range(1 << l.r)]


def sigma(l: LengthVector, J: int, _short=None) -> int:
    """Number of ``j in J`` whose removal leaves a short set."""
    short = _short if _short is not None else _short_table(l)
    return sum(1 for j in subset_elements(J) if short[J & ~(1 << (j - 1))])


def mu(l: LengthVector) -> int:
    short = _short_table(l)
    best = None
    for J in range(1 << l.r):
        if short[J]:
            continue
        s = sigma(l, J, short)
        if s > 0 and (best is None or s < best):
            best = s
    return best


# ------------------------------------------------------------------ chambers

def _minimal_sets(family) -> tuple:
    fam = sorted(family, key=lambda m: (popcount(m), m))
    out = []
    for m in fam:
        if not any(a & m == a for a in out):
            out.append(m)
    return tuple(sorted(out))


@dataclass(frozen=True)
class Chamber:
    """Chamber of generic length vectors, identified by its short family.

    ``encoding`` (the sorted bitmasks of the minimal long sets) is the
    identity; ``representative`` is an optional integer length vector.
    """

    r: int
    encoding: tuple
    representative: tuple | None = field(default=None, compare=False)

    @classmethod
    def from_short_family(cls, r, short, representative=None):
        full = (1 << r) - 1
        longs = [J for J in range(1 << r) if J not in short]
        assert len(longs) == 1 << (r - 1), "short family has the wrong size"
        assert all((full ^ J) in short for J in longs)
        rep = tuple(int(x) for x in representative) if representative is not None else None
        return cls(r, _minimal_sets(longs), rep)

    @property
    def long_family(self) -> frozenset:
        return frozenset(J for J in range(1 << self.r)
                         if any(a & J == a for a in self.encoding))

    @property
    def short_family(self) -> frozenset:
        longs = self.long_family
        return frozenset(J for J in range(1 << self.r) if J not in longs)

    def is_short(self, J: int) -> bool:
        return not any(a & J == a for a in self.encoding)

    def length_vector(self) -> LengthVector:
        if self.representative is None:
            raise ValueError("chamber has no representative")
        return LengthVector(self.representative)

    def mu(self) -> int:
        return mu(self.length_vector())

    def key(self) -> str:
        return f"{self.r}:" + ",".join(map(str, self.encoding))


def chamber_of(l: LengthVector) -> Chamber:
    rep = None
    if all(x.denominator == 1 for x in l.entries):
        rep = tuple(int(x) for x in l.entries)
    return Chamber.from_short_family(l.r, set(short_subsets(l)), rep)


def _subset_matrix(r):
    J = np.arange(1 << r)
    return ((J[:, None] >> np.arange(r)[None, :]) & 1).astype(np.int64)


def enumerate_chambers(r: int, max_entry: int) -> list:
    """Chambers of all generic weakly increasing integer vectors with entries
    in ``0..max_entry``.  The representative kept for each chamber is the
    first by (entry sum, lexicographic); output is sorted by encoding."""
    if r < 1 or r > MAX_R:
        raise ValueError(f"r must lie in 1..{MAX_R}")
    if max_entry < 1:
        raise ValueError("max_entry must be at least 1")
    vecs = np.array(list(combinations_with_replacement(range(max_entry + 1), r)),
                    dtype=np.int64).reshape(-1, r)
    vecs = vecs[np.lexsort(tuple(vecs[:, ::-1].T) + (vecs.sum(axis=1),))]
    S = _subset_matrix(r)
    found = {}
    block = 4096
    for start in range(0, len(vecs), block):
        V = vecs[start:start + block]
        twice = 2 * (V @ S.T)
        total = V.sum(axis=1)[:, None]
        generic = ~(twice == total).any(axis=1)
        short = twice < total
        for v, row in zip(V[generic], short[generic]):
            key = np.packbits(row).tobytes()
            if key not in found:
                found[key] = (tuple(int(x) for x in v), row)
    chambers = []
    for rep, row in found.values():
        fam = set(np.flatnonzero(row).tolist())
        chambers.append(Chamber.from_short_family(r, fam, rep))
    chambers.sort(key=lambda c: c.encoding)
    return chambers


def chamber_census(r: int, entry_bound: int):
    """``(chambers, stable)``: ``stable`` says raising the bound by 2 found nothing new."""
    chambers = enumerate_chambers(r, entry_bound)
    more = enumerate_chambers(r, entry_bound + 2)
    return chambers, len(more) == len(chambers)


# ------------------------------------------------------------------- export

def chambers_csv(chambers) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "chamber_id", "representative", "num_short", "mu"])
    for i, c in enumerate(chambers):
        w.writerow([c.r, i, ",".join(map(str, c.representative)),
                    len(c.short_family), c.mu()])
    return buf.getvalue()


def chambers_json(chambers, stable=None) -> str:
    rows = []
    for i, c in enumerate(chambers):
        rows.append({
            "r": c.r,
            "chamber_id": i,
            "representative": list(c.representative),
            "num_short": len(c.short_family),
            "mu": c.mu(),
            "minimal_long": list(c.encoding),
            "short_family": sorted(c.short_family),
        })
    return json.dumps({"stable": stable, "chambers": rows}, indent=1)


def chambers_from_json(text: str) -> list:
    obj = json.loads(text)
    return [Chamber(row["r"], tuple(row["minimal_long"]), tuple(row["representative"]))
            for row in obj["chambers"]]
