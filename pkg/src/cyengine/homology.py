"""Degree slices of truncated dg algebras, their homology and H^0."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .linalg import ComplexWindow, SliceMatrix, Subspace, homology_dim
from .tensor import DGPresentation, Elem, TensorAlgebra, Word


def slice_basis(p: DGPresentation, degree: int, N: Optional[int] = None) -> List[Word]:
    """All normal-form words of the given degree and length <= N, sorted.

    Order: by length, then letter indices.
    """
    T, reg = p.T, p.T.reg
    N = p.N if N is None else N
    comps = set(T.components)
    letters = [i for i, x in enumerate(reg.letters) if x.source in comps and x.target in comps]
    if not letters:
        mindeg = 0
    else:
        mindeg = min(0, min(reg[i].degree for i in letters))
    out: List[Word] = []
    if degree == 0:
        for j in T.components:
            for m in range(T.ring.components[j].dim):
                out.append(T.base_word(j, m))
    follow: Dict[int, List[int]] = {}
    for i in letters:
        if reg.is_left_basis[i]:
            follow.setdefault(reg[i].target, []).append(i)

    def extend(word: Tuple[int, ...], deg: int) -> None:
        if deg == degree:
            out.append(word)
        if len(word) == N:
            return
        room = N - len(word)
        for y in follow.get(reg[word[-1]].source, []):
            nd = deg + reg[y].degree
            if nd < degree or nd + (room - 1) * mindeg > degree:
                continue
            extend(word + (y,), nd)

    for x in letters:
        dx = reg[x].degree
        if dx < degree or dx + (N - 1) * mindeg > degree:
            continue
        extend((x,), dx)
    out.sort(key=lambda w: (T.length(w), w))
    return out


def dga_slice(p: DGPresentation, degree: int, N: Optional[int] = None) -> SliceMatrix:
    """Matrix of d from the degree slice to the next one."""
    src = slice_basis(p, degree, N)
    tgt = slice_basis(p, degree + 1, N)
    q = p if N is None or N == p.N else DGPresentation(p.T, p.d_letters, N, p.name)
    cols = [q.d_word(w) for w in src]
    return SliceMatrix(src, tgt, cols)


def complex_window(p: DGPresentation, lo: int, hi: int, N: Optional[int] = None) -> ComplexWindow:
    bases = {n: slice_basis(p, n, N) for n in range(lo, hi + 2)}
    maps = {n: dga_slice(p, n, N) for n in range(lo, hi + 1)}
    return ComplexWindow(bases, maps)


def h_dim(p: DGPresentation, degree: int, N: Optional[int] = None) -> int:
    window = complex_window(p, degree - 1, degree, N)
    return homology_dim(window, degree)


@dataclass(frozen=True)
class StabilizedDim:
    value: object            # int, or "unstable"
    witness_levels: Tuple[int, int]
    values: Tuple[int, int]

    @property
    def stable(self) -> bool:
        return self.value != "unstable"


@dataclass
class JacobianData:
    basis: List[Word]            # degree-0 words spanning a complement of the relations
    relations: Subspace           # image of d from degree -1
    dim: int
    stabilized: StabilizedDim
    N: int

    def reduce(self, x: Elem) -> Elem:
        return self.relations.reduce(x)


def jacobian_presentation(p: DGPresentation, N: Optional[int] = None) -> JacobianData:
    """H^0 at truncation N with a stabilisation verdict against N + 1."""
    N = p.N if N is None else N
    dims = []
    data = None
    for level in (N, N + 1):
        rel = Subspace()
        for col in dga_slice(p, -1, level).columns:
            rel.add(col)
        words = slice_basis(p, 0, level)
        # degree-0 words that survive as pivots-free coordinates form a basis
        # of the quotient; positive degrees are empty so every word is a cycle
        pivots = set(rel.pivots)
        basis = [w for w in words if w not in pivots]
        dims.append(len(basis))
        if data is None:
            data = (basis, rel)
    value = dims[0] if dims[0] == dims[1] else "unstable"
    stab = StabilizedDim(value, (N, N + 1), (dims[0], dims[1]))
    return JacobianData(data[0], data[1], dims[0], stab, N)
