"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping a hashable label to a nonzero ``Fraction``.
Matrices are stored column-wise because every map in the engine is built
by applying an operator to basis vectors of its source.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .errors import WindowTooNarrow

Vec = Dict[Hashable, Fraction]


def vec_add(target: Vec, other: Vec, scale: Fraction = Fraction(1)) -> Vec:
    """In-place ``target += scale * other``; returns target."""
    if not scale:
        return target
    for key, val in other.items():
        new = target.get(key, 0) + scale * val
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


def vec_scale(v: Vec, scale: Fraction) -> Vec:
    if not scale:
        return {}
    return {k: scale * x for k, x in v.items()}


class SliceMatrix:
    """A linear map between finite labelled bases.

    ``columns[j]`` is the image of the j-th source basis vector, written as a
    sparse vector over the target labels.
    """

    def __init__(self, source: Sequence[Hashable], target: Sequence[Hashable],
                 columns: Optional[Sequence[Vec]] = None):
        self.source = list(source)
        self.target = list(target)
        if columns is None:
            columns = [{} for _ in self.source]
        if len(columns) != len(self.source):
            raise ValueError("column count does not match source basis")
        tset = set(self.target)
        for col in columns:
            for key in col:
                if key not in tset:
                    raise ValueError(f"label {key!r} outside target basis")
        self.columns = [dict(c) for c in columns]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.target), len(self.source)

    def apply(self, v: Vec) -> Vec:
        index = {lab: j for j, lab in enumerate(self.source)}
        out: Vec = {}
        for key, val in v.items():
            vec_add(out, self.columns[index[key]], val)
        return out

    def dense(self) -> List[List[Fraction]]:
        row_of = {lab: i for i, lab in enumerate(self.target)}
        rows = [[Fraction(0)] * len(self.source) for _ in self.target]
        for j, col in enumerate(self.columns):
            for key, val in col.items():
                rows[row_of[key]][j] = val
        return rows

    def rank(self) -> int:
        return rank_of_vectors(self.columns)

    def kernel(self) -> List[Vec]:
        """Basis of the kernel, as vectors over the source labels."""
        tagged = [(self.columns[j], {self.source[j]: Fraction(1)})
                  for j in range(len(self.source))]
        return _kernel_from_tagged(tagged)


# ----------------------------------------------------------------------
# fraction-free rank


def _integer_row(v: Vec) -> Dict[Hashable, int]:
    den = 1
    for x in v.values():
        den = den * x.denominator // gcd(den, x.denominator)
    row = {k: int(x * den) for k, x in v.items()}
    return _primitive(row)


def _primitive(row: Dict[Hashable, int]) -> Dict[Hashable, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        row = {k: x // g for k, x in row.items()}
    return row


def rank_of_vectors(vectors: Iterable[Vec]) -> int:
    """Rank via integer elimination; no division ever leaves the integers."""
    pivots: Dict[Hashable, Dict[Hashable, int]] = {}
    order: Dict[Hashable, int] = {}
    for v in vectors:
        row = _integer_row(v) if v else {}
        while row:
            key = min(row, key=lambda k: order.setdefault(k, len(order)))
            piv = pivots.get(key)
            if piv is None:
                pivots[key] = row
                break
            a, b = piv[key], row[key]
            new: Dict[Hashable, int] = {}
            for k in set(row) | set(piv):
                x = a * row.get(k, 0) - b * piv.get(k, 0)
                if x:
                    new[k] = x
            row = _primitive(new)
    return len(pivots)


# ----------------------------------------------------------------------
# echelon subspaces


class Subspace:
    """Incrementally maintained reduced echelon basis.

    ``reduce`` returns the canonical remainder of a vector modulo the span,
    which doubles as a normal form in quotient spaces.
    """

    def __init__(self, pivot_order: Optional[Sequence[Hashable]] = None):
        self._rows: Dict[Hashable, Vec] = {}
        self._rank_key = None
        if pivot_order is not None:
            pos = {lab: i for i, lab in enumerate(pivot_order)}
            self._rank_key = lambda k: pos.get(k, len(pos))

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[Hashable]:
        return list(self._rows)

    def basis(self) -> List[Vec]:
        return [dict(r) for r in self._rows.values()]

    def _choose(self, v: Vec) -> Hashable:
        if self._rank_key is None:
            return min(v, key=_sort_key)
        return min(v, key=lambda k: (self._rank_key(k), _sort_key(k)))

    def reduce(self, v: Vec) -> Vec:
        out = dict(v)
        for key, row in self._rows.items():
            c = out.get(key)
            if c:
                vec_add(out, row, -c)
        return out

    def add(self, v: Vec) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        key = self._choose(r)
        r = vec_scale(r, 1 / r[key])
        for other_key, row in self._rows.items():
            c = row.get(key)
            if c:
                vec_add(row, r, -c)
        self._rows[key] = r
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)


def _sort_key(k):
    # labels mix ints, strings and nested tuples; repr gives a total order
    return (0, k, "") if isinstance(k, int) else (1, 0, repr(k))


def span(vectors: Iterable[Vec], pivot_order=None) -> Subspace:
    s = Subspace(pivot_order)
    for v in vectors:
        s.add(v)
    return s


def _kernel_from_tagged(tagged: List[Tuple[Vec, Vec]]) -> List[Vec]:
    """Kernel of a map given as (image, source-coordinates) pairs."""
    rows: Dict[Hashable, Tuple[Vec, Vec]] = {}
    kernel: List[Vec] = []
    for img, src in tagged:
        img, src = dict(img), dict(src)
        for key, (prow, psrc) in rows.items():
            c = img.get(key)
            if c:
                vec_add(img, prow, -c)
                vec_add(src, psrc, -c)
        if not img:
            kernel.append(src)
            continue
        key = min(img, key=_sort_key)
        c = img[key]
        img, src = vec_scale(img, 1 / c), vec_scale(src, 1 / c)
        for k2, (prow, psrc) in rows.items():
            c2 = prow.get(key)
            if c2:
                vec_add(prow, img, -c2)
                vec_add(psrc, src, -c2)
        rows[key] = (img, src)
    return kernel


def solve(columns: Sequence[Vec], rhs: Vec,
          pivot_order: Optional[Sequence[int]] = None) -> Optional[Dict[int, Fraction]]:
    """Find x with sum_j x_j * columns[j] == rhs, or None.

    ``pivot_order`` permutes the order in which columns are eliminated; the
    particular solution returned depends on it, the solvability does not.
    """
    order = list(range(len(columns))) if pivot_order is None else list(pivot_order)
    rows: Dict[Hashable, Tuple[Vec, Vec]] = {}
    for j in order:
        img, src = dict(columns[j]), {j: Fraction(1)}
        for key, (prow, psrc) in rows.items():
            c = img.get(key)
            if c:
                vec_add(img, prow, -c)
                vec_add(src, psrc, -c)
        if not img:
            continue
        key = min(img, key=_sort_key)
        c = img[key]
        img, src = vec_scale(img, 1 / c), vec_scale(src, 1 / c)
        for k2, (prow, psrc) in rows.items():
            c2 = prow.get(key)
            if c2:
                vec_add(prow, img, -c2)
                vec_add(psrc, src, -c2)
        rows[key] = (img, src)
    rem = dict(rhs)
    sol: Vec = {}
    for key, (prow, psrc) in rows.items():
        c = rem.get(key)
        if c:
            vec_add(rem, prow, -c)
            vec_add(sol, psrc, c)
    if rem:
        return None
    return sol


def inverse(dense: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    """Gauss-Jordan inverse of a square matrix, None when singular."""
    n = len(dense)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(dense)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def determinant(dense: List[List[Fraction]]) -> Fraction:
    n = len(dense)
    a = [[Fraction(x) for x in row] for row in dense]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


# ----------------------------------------------------------------------
# complexes


class ComplexWindow:
    """A cochain complex known on a finite window of degrees.

    ``bases[n]`` lists the basis labels of C^n and ``maps[n]`` is the
    differential C^n -> C^{n+1}.
    """

    def __init__(self, bases: Dict[int, Sequence[Hashable]], maps: Dict[int, SliceMatrix]):
        self.bases = {n: list(b) for n, b in bases.items()}
        self.maps = dict(maps)

    def degrees(self) -> List[int]:
        return sorted(self.bases)

    def _map(self, n: int) -> SliceMatrix:
        if n not in self.maps:
            raise WindowTooNarrow(f"differential out of degree {n} not in window")
        return self.maps[n]

    def homology_dim(self, n: int) -> int:
        if n not in self.bases:
            raise WindowTooNarrow(f"degree {n} not in window")
        out = self._map(n)
        inc = self._map(n - 1)
        return len(self.bases[n]) - out.rank() - inc.rank()

    def check_square_zero(self) -> List[int]:
        """Degrees n where d_{n+1} d_n fails to vanish."""
        bad = []
        for n, m in self.maps.items():
            nxt = self.maps.get(n + 1)
            if nxt is None:
                continue
            if any(nxt.apply(col) for col in m.columns):
                bad.append(n)
        return bad


def homology_dim(window: ComplexWindow, n: int) -> int:
    return window.homology_dim(n)
