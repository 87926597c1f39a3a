"""Right Calabi-Yau pairing checks on finite graded categories.

The pairing is <f, g> = psi_X(g . f) for f in Hom^m(X, Y) and
g in Hom^{d-m}(Y, X).  Trace symmetry is psi_X(g . f) = (-1)^{|f||g|} psi_Y(f . g).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

from .coefficients import to_fraction
from .errors import SchemaError
from .linalg import SliceMatrix, determinant, inverse, vec_add


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


class GradedCatData:
    """Objects, graded hom bases, composition on basis pairs and traces psi_X.

    ``identities`` maps each object to a vector over basis names, so basis
    changes need not keep the identity as a basis element.
    """

    def __init__(self, objects: Sequence[str], morphisms: Sequence[Tuple[str, str, str, int]],
                 compose: Dict[Tuple[str, str], Dict[str, object]],
                 identities: Dict[str, Dict[str, object]],
                 psi: Dict[str, Dict[str, object]], d: int):
        self.objects = list(objects)
        self.names = [m[0] for m in morphisms]
        self.index = {n: k for k, n in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise SchemaError("duplicate morphism names")
        self.src = {m[0]: m[1] for m in morphisms}
        self.tgt = {m[0]: m[2] for m in morphisms}
        self.deg = {m[0]: int(m[3]) for m in morphisms}
        self.comp = {k: {n: to_fraction(c) for n, c in v.items() if to_fraction(c)}
                     for k, v in compose.items()}
        self.ident = {o: {n: to_fraction(c) for n, c in v.items() if to_fraction(c)}
                      for o, v in identities.items()}
        self.psi = {o: {n: to_fraction(c) for n, c in v.items() if to_fraction(c)}
                    for o, v in psi.items()}
        self.d = int(d)
        self.validate()

    def basis(self, X: str, Y: str, m: int) -> List[str]:
        return [n for n in self.names if self.src[n] == X and self.tgt[n] == Y and self.deg[n] == m]

    def degrees(self, X: str, Y: str) -> List[int]:
        return sorted({self.deg[n] for n in self.names if self.src[n] == X and self.tgt[n] == Y})

    def compose_basis(self, g: str, f: str) -> Dict[str, Fraction]:
        if self.src[g] != self.tgt[f]:
            raise SchemaError(f"cannot compose {g} after {f}")
        return self.comp.get((g, f), {})

    def compose(self, g: Dict[str, Fraction], f: Dict[str, Fraction]) -> Dict[str, Fraction]:
        out: Dict[str, Fraction] = {}
        for a, x in g.items():
            for b, y in f.items():
                vec_add(out, self.compose_basis(a, b), x * y)
        return out

    def trace(self, X: str, v: Dict[str, Fraction]) -> Fraction:
        form = self.psi.get(X, {})
        return sum((form.get(n, Fraction(0)) * c for n, c in v.items()), Fraction(0))

    def validate(self) -> None:
        for (g, f), v in self.comp.items():
            if self.src[g] != self.tgt[f]:
                raise SchemaError(f"composite {g}.{f} not composable")
            for n in v:
                if self.src[n] != self.src[f] or self.tgt[n] != self.tgt[g] or \
                        self.deg[n] != self.deg[f] + self.deg[g]:
                    raise SchemaError(f"composite {g}.{f} ill-typed")
        for X in self.objects:
            if X not in self.ident:
                raise SchemaError(f"object {X} lacks an identity")
            for n in self.ident[X]:
                if self.src[n] != X or self.tgt[n] != X or self.deg[n] != 0:
                    raise SchemaError(f"identity of {X} ill-typed")
            for n in self.psi.get(X, {}):
                if self.src[n] != X or self.tgt[n] != X or self.deg[n] != self.d:
                    raise SchemaError(f"psi_{X} must live on Hom^d({X},{X})")
        unit = {n: {n: Fraction(1)} for n in self.names}
        for f in self.names:
            if self.compose(self.ident[self.tgt[f]], unit[f]) != unit[f] or \
                    self.compose(unit[f], self.ident[self.src[f]]) != unit[f]:
                raise SchemaError(f"identity law fails on {f}")
        for a, b, c in iproduct(self.names, repeat=3):
            if self.src[a] == self.tgt[b] and self.src[b] == self.tgt[c]:
                if self.compose(self.compose(unit[a], unit[b]), unit[c]) != \
                        self.compose(unit[a], self.compose(unit[b], unit[c])):
                    raise SchemaError("composition is not associative")

    def change_basis(self, rng: random.Random) -> "GradedCatData":
        """The same category in randomly chosen new bases of every hom block."""
        blocks: Dict[Tuple[str, str, int], List[str]] = {}
        for n in self.names:
            blocks.setdefault((self.src[n], self.tgt[n], self.deg[n]), []).append(n)
        new_of: Dict[str, Dict[str, Fraction]] = {}      # new basis in old coordinates
        old_of: Dict[str, Dict[str, Fraction]] = {}      # old basis in new coordinates
        for key, olds in blocks.items():
            k = len(olds)
            while True:
                P = [[Fraction(rng.randint(-2, 2)) for _ in range(k)] for _ in range(k)]
                if determinant(P):
                    break
            Pinv = inverse(P)
            news = [f"{o}'" for o in olds]
            for j, nn in enumerate(news):
                new_of[nn] = {olds[i]: P[i][j] for i in range(k) if P[i][j]}
            for i, o in enumerate(olds):
                old_of[o] = {news[j]: Pinv[j][i] for j in range(k) if Pinv[j][i]}

        def to_new(v: Dict[str, Fraction]) -> Dict[str, Fraction]:
            out: Dict[str, Fraction] = {}
            for o, c in v.items():
                vec_add(out, old_of[o], c)
            return out

        names = list(new_of)
        morphisms = []
        for nn in names:
            o = next(iter(new_of[nn]))
            morphisms.append((nn, self.src[o], self.tgt[o], self.deg[o]))
        comp = {}
        for a, b in iproduct(names, repeat=2):
            oa, ob = next(iter(new_of[a])), next(iter(new_of[b]))
            if self.src[oa] == self.tgt[ob]:
                val = to_new(self.compose(new_of[a], new_of[b]))
                if val:
                    comp[(a, b)] = val
        identities = {X: to_new(v) for X, v in self.ident.items()}
        psi = {X: {nn: self.trace(X, new_of[nn]) for nn in names
                   if self.src[next(iter(new_of[nn]))] == X and
                   self.tgt[next(iter(new_of[nn]))] == X and
                   self.deg[next(iter(new_of[nn]))] == self.d}
               for X in self.objects}
        return GradedCatData(self.objects, morphisms, comp, identities, psi, self.d)


def pairing_matrix(X: str, Y: str, m: int, data: GradedCatData,
                   d: Optional[int] = None) -> SliceMatrix:
    """Rows: basis of Hom^m(X, Y); columns: basis of Hom^{d-m}(Y, X)."""
    d = data.d if d is None else int(d)
    rows = data.basis(X, Y, m)
    cols = data.basis(Y, X, d - m)
    columns = []
    for g in cols:
        col = {}
        for f in rows:
            val = data.trace(X, data.compose({g: Fraction(1)}, {f: Fraction(1)}))
            if val:
                col[f] = val
        columns.append(col)
    return SliceMatrix(cols, rows, columns)


def check_right_cy(data: GradedCatData, d: Optional[int] = None) -> dict:
    d = data.d if d is None else int(d)
    failures: List[dict] = []
    symmetric = True
    for f, g in iproduct(data.names, repeat=2):
        X, Y = data.src[f], data.tgt[f]
        if data.src[g] != Y or data.tgt[g] != X or data.deg[f] + data.deg[g] != d:
            continue
        lhs = data.trace(X, data.compose({g: Fraction(1)}, {f: Fraction(1)}))
        rhs = data.trace(Y, data.compose({f: Fraction(1)}, {g: Fraction(1)}))
        if lhs != _sgn(data.deg[f] * data.deg[g]) * rhs:
            symmetric = False
            failures.append({"kind": "symmetry", "X": X, "Y": Y, "f": f, "g": g,
                             "lhs": lhs, "rhs": rhs})
    nondegenerate = True
    for X, Y in iproduct(data.objects, repeat=2):
        degs = set(data.degrees(X, Y)) | {d - m for m in data.degrees(Y, X)}
        for m in sorted(degs):
            mat = pairing_matrix(X, Y, m, data, d)
            r, c = mat.shape
            rank = mat.rank()
            if r != c or rank != r:
                nondegenerate = False
                failures.append({"kind": "pairing", "X": X, "Y": Y, "m": m,
                                 "shape": (r, c), "rank": rank})
    return {"symmetric": symmetric, "nondegenerate": nondegenerate, "failures": failures}


def one_object_fixture(d: int, psi_u: object = 1) -> GradedCatData:
    """End(X) = span{1, u} with |u| = d and u^2 = 0."""
    comp = {("1", "1"): {"1": 1}, ("1", "u"): {"u": 1}, ("u", "1"): {"u": 1}}
    return GradedCatData(["X"], [("1", "X", "X", 0), ("u", "X", "X", d)], comp,
                         {"X": {"1": 1}}, {"X": {"u": psi_u}}, d)


def two_object_fixture(d: int, M: Sequence[Sequence[object]],
                       M_rev: Optional[Sequence[Sequence[object]]] = None) -> GradedCatData:
    """Objects X, Y with Hom^0(X,Y) = <f1,f2>, Hom^d(Y,X) = <g1,g2>.

    g_i f_j = M_ij u_X and f_j g_i = M_rev_ij u_Y (M_rev defaults to M).
    """
    M_rev = M if M_rev is None else M_rev
    morphisms = [("1X", "X", "X", 0), ("uX", "X", "X", d), ("1Y", "Y", "Y", 0),
                 ("uY", "Y", "Y", d), ("f1", "X", "Y", 0), ("f2", "X", "Y", 0),
                 ("g1", "Y", "X", d), ("g2", "Y", "X", d)]
    comp: Dict[Tuple[str, str], Dict[str, object]] = {}
    for i, j in iproduct(range(2), repeat=2):
        c, c_rev = to_fraction(M[i][j]), to_fraction(M_rev[i][j])
        if c:
            comp[(f"g{i + 1}", f"f{j + 1}")] = {"uX": c}
        if c_rev:
            comp[(f"f{j + 1}", f"g{i + 1}")] = {"uY": c_rev}
    for o in "XY":
        for n, (s, t) in {"uX": ("X", "X"), "uY": ("Y", "Y"), "f1": ("X", "Y"), "f2": ("X", "Y"),
                          "g1": ("Y", "X"), "g2": ("Y", "X")}.items():
            if s == o:
                comp[(n, f"1{o}")] = {n: 1}
            if t == o:
                comp[(f"1{o}", n)] = {n: 1}
    comp[("1X", "1X")] = {"1X": 1}
    comp[("1Y", "1Y")] = {"1Y": 1}
    return GradedCatData(["X", "Y"], morphisms, comp, {"X": {"1X": 1}, "Y": {"1Y": 1}},
                         {"X": {"uX": 1}, "Y": {"uY": 1}}, d)
