"""Quiver algebras with relations, their representations and Ext groups.

Paths are tuples of arrow indices read as compositions: (a_k, ..., a_1) is
a_k after a_1.  The trivial path at vertex v is (-1 - v,).  Left modules are
quiver representations: an arrow a: s -> t acts by a matrix M_t x M_s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

from .coefficients import to_fraction
from .errors import AssumptionViolation, LengthCapExceeded, SchemaError
from .linalg import SliceMatrix, Subspace, solve, vec_add

Path = Tuple[int, ...]
Matrix = List[List[Fraction]]


def _zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def _matmul(a: Matrix, b: Matrix, inner: int, cols: int) -> Matrix:
    rows = len(a)
    out = _zeros(rows, cols)
    for i in range(rows):
        for k in range(inner):
            x = a[i][k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        out[i][j] += x * bk[j]
    return out


def _apply(m: Matrix, v: List[Fraction]) -> List[Fraction]:
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for row in m]


def _as_vec(v: Sequence[Fraction]) -> Dict[int, Fraction]:
    return {i: x for i, x in enumerate(v) if x}


def _from_vec(v: Dict[int, Fraction], n: int) -> List[Fraction]:
    out = [Fraction(0)] * n
    for i, x in v.items():
        out[i] = x
    return out


class FinDimAlgebraPresentation:
    """kQ/I with I generated by ``relations``; finite-dimensionality is checked.

    ``relations`` are dicts from paths (tuples of arrow names, leftmost
    applied last) to coefficients.
    """

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str]],
                 relations: Sequence[Dict[Tuple[str, ...], object]] = (), length_cap: int = 12):
        self.vertices = list(vertices)
        self.vindex = {v: k for k, v in enumerate(self.vertices)}
        self.arrow_names = [a[0] for a in arrows]
        self.aindex = {a: k for k, a in enumerate(self.arrow_names)}
        self.asrc = [self.vindex[a[1]] for a in arrows]
        self.atgt = [self.vindex[a[2]] for a in arrows]
        self.relations: List[Dict[Path, Fraction]] = []
        for rel in relations:
            r = {}
            for p, c in rel.items():
                path = tuple(self.aindex[x] for x in p) if p else ()
                if not path:
                    raise SchemaError("relations must lie in the arrow ideal")
                self._check_path(path)
                r[path] = to_fraction(c)
            self.relations.append(r)
        self.length_cap = length_cap
        self._build()

    # -- paths
    def trivial(self, v: int) -> Path:
        return (-1 - v,)

    def is_trivial(self, p: Path) -> bool:
        return p[0] < 0

    def source(self, p: Path) -> int:
        return -1 - p[0] if self.is_trivial(p) else self.asrc[p[-1]]

    def target(self, p: Path) -> int:
        return -1 - p[0] if self.is_trivial(p) else self.atgt[p[0]]

    def length(self, p: Path) -> int:
        return 0 if self.is_trivial(p) else len(p)

    def _check_path(self, p: Path) -> None:
        for left, right in zip(p, p[1:]):
            if self.asrc[left] != self.atgt[right]:
                raise SchemaError("relation path not composable")

    def concat(self, p: Path, q: Path) -> Optional[Path]:
        """p after q, or None when not composable."""
        if self.source(p) != self.target(q):
            return None
        if self.is_trivial(p):
            return q
        if self.is_trivial(q):
            return p
        return p + q

    def paths(self, max_len: int) -> List[Path]:
        out = [self.trivial(v) for v in range(len(self.vertices))]
        layer = [(a,) for a in range(len(self.arrow_names))]
        n = 1
        while layer and n <= max_len:
            out.extend(layer)
            layer = [(a,) + p for p in layer for a in range(len(self.arrow_names))
                     if self.asrc[a] == self.atgt[p[0]]]
            n += 1
        return out

    # -- basis via the truncated ideal
    def _build(self) -> None:
        for L in range(1, self.length_cap + 1):
            paths = self.paths(L)
            order = sorted(paths, key=lambda p: (-self.length(p), p))
            ideal = Subspace(order)
            for r in self.relations:
                for p, q in iproduct(paths, repeat=2):
                    elem: Dict[Path, Fraction] = {}
                    for path, c in r.items():
                        x = self.concat(p, path)
                        y = self.concat(x, q) if x is not None else None
                        if y is not None and self.length(y) <= L:
                            vec_add(elem, {y: c})
                    if elem:
                        ideal.add(elem)
            top = [p for p in paths if self.length(p) == L]
            if all(ideal.contains({p: Fraction(1)}) for p in top):
                self.L = L
                self.ideal = ideal
                pivots = set(ideal.pivots)
                self.basis = [p for p in sorted(paths, key=lambda p: (self.length(p), p))
                              if p not in pivots]
                self.bindex = {p: k for k, p in enumerate(self.basis)}
                return
        raise LengthCapExceeded(f"no finite basis below path length {self.length_cap}")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def normal_form(self, v: Dict[Path, Fraction]) -> Dict[Path, Fraction]:
        v = {p: c for p, c in v.items() if self.length(p) < self.L}
        return self.ideal.reduce(v)

    def mul_paths(self, p: Path, q: Path) -> Dict[Path, Fraction]:
        r = self.concat(p, q)
        if r is None:
            return {}
        return self.normal_form({r: Fraction(1)})

    def path_names(self, p: Path) -> str:
        if self.is_trivial(p):
            return f"e{self.vertices[self.source(p)]}"
        return "".join(self.arrow_names[a] for a in p)

    # -- standard constructions
    @classmethod
    def a2(cls) -> "FinDimAlgebraPresentation":
        return cls(["1", "2"], [("a", "1", "2")])

    @classmethod
    def dual_numbers(cls) -> "FinDimAlgebraPresentation":
        return cls(["1"], [("x", "1", "1")], [{("x", "x"): 1}])


@dataclass
class ModuleRep:
    A: FinDimAlgebraPresentation
    dims: List[int]
    mats: List[Matrix]
    name: str = "M"

    def __post_init__(self):
        A = self.A
        if len(self.dims) != len(A.vertices) or len(self.mats) != len(A.arrow_names):
            raise SchemaError("representation shape does not match the quiver")
        for a, m in enumerate(self.mats):
            r, c = self.dims[A.atgt[a]], self.dims[A.asrc[a]]
            if len(m) != r or any(len(row) != c for row in m):
                raise SchemaError(f"matrix of arrow {A.arrow_names[a]} has wrong shape")
        for rel in A.relations:
            s, t = A.source(next(iter(rel))), A.target(next(iter(rel)))
            total = _zeros(self.dims[t], self.dims[s])
            for p, c in rel.items():
                pm = self.path_matrix(p)
                for i in range(len(total)):
                    for j in range(len(total[i])):
                        total[i][j] += c * pm[i][j]
            if any(x for row in total for x in row):
                raise SchemaError("representation violates a relation")

    def path_matrix(self, p: Path) -> Matrix:
        A = self.A
        s = A.source(p)
        n = self.dims[s]
        m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        if A.is_trivial(p):
            return m
        for a in reversed(p):
            m = _matmul(self.mats[a], m, self.dims[A.asrc[a]], n)
        return m

    def act(self, p: Path, v: List[Fraction]) -> List[Fraction]:
        return _apply(self.path_matrix(p), v)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    # constructors
    @classmethod
    def simple(cls, A: FinDimAlgebraPresentation, v: str) -> "ModuleRep":
        k = A.vindex[v]
        dims = [int(i == k) for i in range(len(A.vertices))]
        mats = [_zeros(dims[A.atgt[a]], dims[A.asrc[a]]) for a in range(len(A.arrow_names))]
        return cls(A, dims, mats, f"S{v}")

    @classmethod
    def projective(cls, A: FinDimAlgebraPresentation, v: str) -> "ModuleRep":
        k = A.vindex[v]
        comp = [[p for p in A.basis if A.source(p) == k and A.target(p) == w]
                for w in range(len(A.vertices))]
        dims = [len(c) for c in comp]
        mats = []
        for a in range(len(A.arrow_names)):
            s, t = A.asrc[a], A.atgt[a]
            m = _zeros(dims[t], dims[s])
            row = {p: i for i, p in enumerate(comp[t])}
            for j, p in enumerate(comp[s]):
                for q, c in A.mul_paths((a,), p).items():
                    m[row[q]][j] += c
            mats.append(m)
        return cls(A, dims, mats, f"P{v}")

    def direct_sum(self, other: "ModuleRep") -> "ModuleRep":
        A = self.A
        dims = [x + y for x, y in zip(self.dims, other.dims)]
        mats = []
        for a in range(len(A.arrow_names)):
            s, t = A.asrc[a], A.atgt[a]
            m = _zeros(dims[t], dims[s])
            for i in range(self.dims[t]):
                for j in range(self.dims[s]):
                    m[i][j] = self.mats[a][i][j]
            for i in range(other.dims[t]):
                for j in range(other.dims[s]):
                    m[self.dims[t] + i][self.dims[s] + j] = other.mats[a][i][j]
            mats.append(m)
        return ModuleRep(A, dims, mats, f"{self.name}+{other.name}")


# ----------------------------------------------------------------------
# homomorphisms


def hom_basis(X: ModuleRep, Y: ModuleRep) -> List[List[Matrix]]:
    """Basis of Hom(X, Y) as lists of per-vertex matrices Y_v x X_v."""
    A = X.A
    unknowns = [(v, i, j) for v in range(len(A.vertices))
                for i in range(Y.dims[v]) for j in range(X.dims[v])]
    cols = []
    for v, i, j in unknowns:
        col: Dict[tuple, Fraction] = {}
        for a in range(len(A.arrow_names)):
            s, t = A.asrc[a], A.atgt[a]
            # equation Y_a phi_s - phi_t X_a = 0, entries (a, r, c)
            if s == v:
                for r in range(Y.dims[t]):
                    if Y.mats[a][r][i]:
                        vec_add(col, {(a, r, j): Y.mats[a][r][i]})
            if t == v:
                for c in range(X.dims[s]):
                    if X.mats[a][j][c]:
                        vec_add(col, {(a, i, c): -X.mats[a][j][c]})
        cols.append(col)
    ker = SliceMatrix(list(range(len(unknowns))), sorted({k for c in cols for k in c}), cols).kernel()
    out = []
    for vec in ker:
        phi = [_zeros(Y.dims[v], X.dims[v]) for v in range(len(A.vertices))]
        for idx, c in vec.items():
            v, i, j = unknowns[idx]
            phi[v][i][j] = c
        out.append(phi)
    return out


def hom_dim(X: ModuleRep, Y: ModuleRep) -> int:
    return len(hom_basis(X, Y))


# ----------------------------------------------------------------------
# minimal projective resolutions


@dataclass
class Resolution:
    """P_n = sum of P_{v} over ``terms[n]``; ``maps[n][j][i]`` is the element
    of e_{v_j} A e_{u_i} giving the i-th component of d(generator j of P_n)."""
    module: ModuleRep
    terms: List[List[int]] = field(default_factory=list)
    maps: List[List[Dict[int, Dict[Path, Fraction]]]] = field(default_factory=list)
    complete: bool = False

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def _top_complement(M: ModuleRep) -> List[Tuple[int, List[Fraction]]]:
    A = M.A
    gens = []
    for v in range(len(A.vertices)):
        n = M.dims[v]
        rad = Subspace()
        for a in range(len(A.arrow_names)):
            if A.atgt[a] != v:
                continue
            m = M.mats[a]
            for j in range(M.dims[A.asrc[a]]):
                rad.add(_as_vec([m[i][j] for i in range(n)]))
        for i in range(n):
            e = {i: Fraction(1)}
            if rad.add(e):
                gens.append((v, _from_vec(e, n)))
    return gens


def _cover_and_kernel(M: ModuleRep, gens: List[Tuple[int, List[Fraction]]]):
    """The cover sum P_{v_i} -> M and its kernel as a representation.

    Coordinates of the cover at vertex w are pairs (i, basis path from v_i to w).
    Returns (kernel rep, kernel basis vectors per vertex in cover coordinates,
    cover coordinates per vertex).
    """
    A = M.A
    V = len(A.vertices)
    coords = [[(i, p) for i, (v, _) in enumerate(gens) for p in A.basis
               if A.source(p) == v and A.target(p) == w] for w in range(V)]
    kernels = []
    for w in range(V):
        cols = [_as_vec(M.act(p, gens[i][1])) for i, p in coords[w]]
        mat = SliceMatrix(list(range(len(coords[w]))), list(range(M.dims[w])), cols)
        kernels.append([_from_vec(k, len(coords[w])) for k in mat.kernel()])
    dims = [len(k) for k in kernels]
    mats = []
    for a in range(len(A.arrow_names)):
        s, t = A.asrc[a], A.atgt[a]
        row = {c: r for r, c in enumerate(coords[t])}
        m = _zeros(dims[t], dims[s])
        kcols = [_as_vec(k) for k in kernels[t]]
        for j, kv in enumerate(kernels[s]):
            img: Dict[int, Fraction] = {}
            for idx, c in enumerate(kv):
                if not c:
                    continue
                i, p = coords[s][idx]
                for q, c2 in A.mul_paths((a,), p).items():
                    vec_add(img, {row[(i, q)]: c * c2})
            sol = solve(kcols, img)
            if sol is None:
                raise AssumptionViolation("kernel is not a subrepresentation")
            for r, c in sol.items():
                m[r][j] = c
        mats.append(m)
    K = ModuleRep(A, dims, mats, f"Omega({M.name})")
    return K, kernels, coords


def proj_resolution(M: ModuleRep, length: int, max_length: int = 64) -> Resolution:
    if length > max_length:
        raise LengthCapExceeded(f"resolution length {length} exceeds cap {max_length}")
    res = Resolution(M)
    cur = M
    for n in range(length + 1):
        gens = _top_complement(cur)
        res.terms.append([v for v, _ in gens])
        if n > 0:
            # generators of P_n live in the previous kernel, in cover coordinates
            A = M.A
            comps = []
            for v, vec in gens:
                elem = [vec[r] for r in range(len(vec))]
                amb = [Fraction(0)] * len(prev_coords[v])
                for r, c in enumerate(elem):
                    if c:
                        for idx, x in enumerate(prev_kernels[v][r]):
                            amb[idx] += c * x
                comp: Dict[int, Dict[Path, Fraction]] = {}
                for idx, c in enumerate(amb):
                    if c:
                        i, p = prev_coords[v][idx]
                        comp.setdefault(i, {})[p] = comp.get(i, {}).get(p, 0) + c
                comps.append(comp)
            res.maps.append(comps)
        if not gens:
            res.terms.pop()
            res.complete = True
            return res
        K, prev_kernels, prev_coords = _cover_and_kernel(cur, gens)
        if K.total_dim == 0:
            res.complete = True
            return res
        cur = K
    return res


def _hom_complex_map(res: Resolution, Y: ModuleRep, n: int) -> SliceMatrix:
    """delta^n : Hom(P_n, Y) -> Hom(P_{n+1}, Y)."""
    src = [(j, r) for j, v in enumerate(res.terms[n]) for r in range(Y.dims[v])]
    if n + 1 >= len(res.terms):
        return SliceMatrix(src, [], [{} for _ in src])
    tgt = [(j, r) for j, v in enumerate(res.terms[n + 1]) for r in range(Y.dims[v])]
    cols = []
    for i, r in src:
        u = res.terms[n][i]
        y = [Fraction(int(k == r)) for k in range(Y.dims[u])]
        col: Dict[tuple, Fraction] = {}
        for j, comp in enumerate(res.maps[n]):
            elem = comp.get(i)
            if not elem:
                continue
            for p, c in elem.items():
                for k, x in enumerate(Y.act(p, y)):
                    if x:
                        vec_add(col, {(j, k): c * x})
        cols.append(col)
    return SliceMatrix(src, tgt, cols)


def ext_dim(X: ModuleRep, Y: ModuleRep, i: int, res: Optional[Resolution] = None) -> int:
    if i < 0:
        return 0
    if res is None:
        res = proj_resolution(X, i + 1)
    if i >= len(res.terms):
        if res.complete:
            return 0
        raise LengthCapExceeded("resolution too short for the requested degree")
    d_out = _hom_complex_map(res, Y, i)
    kernel = len(d_out.source) - d_out.rank()
    if i == 0:
        return kernel
    return kernel - _hom_complex_map(res, Y, i - 1).rank()


@dataclass
class Verdict:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def is_d_rigid(modules: Sequence[ModuleRep], d: int) -> Verdict:
    for T in modules:
        res = proj_resolution(T, d)
        for U in modules:
            for i in range(1, d):
                if ext_dim(T, U, i, res):
                    return Verdict(False, (T.name, U.name, i))
    return Verdict(True)


def _composite_vec(g: List[Matrix], f: List[Matrix], X: ModuleRep,
                   mid: ModuleRep) -> Dict[Tuple[int, int, int], Fraction]:
    """Entries of g . f : X -> X, keyed by (vertex, row, column)."""
    out: Dict[Tuple[int, int, int], Fraction] = {}
    for v, n in enumerate(X.dims):
        for i in range(n):
            for j in range(n):
                c = sum((g[v][i][k] * f[v][k][j] for k in range(mid.dims[v])), Fraction(0))
                if c:
                    out[(v, i, j)] = c
    return out


def in_add(X: ModuleRep, T: Sequence[ModuleRep]) -> bool:
    """Whether X is a summand of a finite sum of copies of the T_i.

    Equivalent to 1_X lying in the span of the composites g . f with
    f: X -> T_i and g: T_i -> X.
    """
    if X.total_dim == 0:
        return True
    cols = []
    for U in T:
        for f, g in iproduct(hom_basis(X, U), hom_basis(U, X)):
            cols.append(_composite_vec(g, f, X, U))
    ident = {(v, i, i): Fraction(1) for v, n in enumerate(X.dims) for i in range(n)}
    return solve(cols, ident) is not None


def is_d_cluster_tilting(A: FinDimAlgebraPresentation, T: Sequence[ModuleRep], d: int,
                         universe: Sequence[ModuleRep]) -> Verdict:
    """Both orthogonality sets equal add T, tested on the supplied indecomposables."""
    res_T = {id(U): proj_resolution(U, d) for U in T}
    for X in universe:
        member = in_add(X, T)
        res_X = proj_resolution(X, d)
        left = all(ext_dim(U, X, i, res_T[id(U)]) == 0 for U in T for i in range(1, d))
        right = all(ext_dim(X, U, i, res_X) == 0 for U in T for i in range(1, d))
        if member != left:
            return Verdict(False, (X.name, "left"))
        if member != right:
            return Verdict(False, (X.name, "right"))
    return Verdict(True)
