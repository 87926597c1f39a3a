"""Finite dg categories, Drinfeld quotients and the homotopies between them.

Morphisms of a presented dg category are vectors over a finite homogeneous
basis.  Composition ``compose(g, f)`` is g after f.

In the Drinfeld quotient C = A/B a morphism is a combination of words
``(f_n, ..., f_0)`` meaning f_n h f_{n-1} h ... h f_0, where every h is the
adjoined contraction h_N (degree -1, d(h_N) = 1_N) of the B-object N sitting
between its neighbours.  Words with more than K h-letters are refused.

Chains of bar and Hochschild type are tuples of such words.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .coefficients import to_fraction
from .errors import (AssumptionViolation, InvalidTriangleData, NoSolution,
                     NotThroughB, SchemaError, TruncationTooSmall)
from .linalg import (ComplexWindow, SliceMatrix, Subspace, rank_of_vectors,
                     solve, vec_add, vec_scale)

QWord = Tuple[int, ...]
QVec = Dict[QWord, Fraction]
TChain = Tuple[QWord, ...]
TVec = Dict[TChain, Fraction]


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


class DGCategory:
    """A dg category with finitely many objects and finite hom complexes."""

    def __init__(self, objects: Sequence[str], in_B: Sequence[str],
                 morphisms: Sequence[Tuple[str, str, str, int]],
                 compose: Dict[Tuple[str, str], Dict[str, object]],
                 identities: Dict[str, str],
                 diff: Optional[Dict[str, Dict[str, object]]] = None,
                 nu_objects: Optional[Dict[str, str]] = None,
                 nu_morphisms: Optional[Dict[str, Dict[str, object]]] = None):
        self.objects = list(objects)
        self.obj_index = {o: k for k, o in enumerate(self.objects)}
        self.in_B = {self.obj_index[o] for o in in_B}
        self.names = [m[0] for m in morphisms]
        self.index = {n: k for k, n in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise SchemaError("duplicate morphism names")
        self.src = [self.obj_index[m[1]] for m in morphisms]
        self.tgt = [self.obj_index[m[2]] for m in morphisms]
        self.deg = [int(m[3]) for m in morphisms]
        self.ident = {self.obj_index[o]: self.index[n] for o, n in identities.items()}
        self.comp: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (g, f), v in compose.items():
            vec = {self.index[k]: to_fraction(c) for k, c in v.items() if to_fraction(c)}
            self.comp[(self.index[g], self.index[f])] = vec
        self.diff = {self.index[k]: {self.index[x]: to_fraction(c) for x, c in v.items()
                                     if to_fraction(c)}
                     for k, v in (diff or {}).items()}
        if nu_objects is None:
            self.nu_obj = list(range(len(self.objects)))
            self.nu_mor = {k: {k: Fraction(1)} for k in range(len(self.names))}
        else:
            self.nu_obj = [self.obj_index[nu_objects[o]] for o in self.objects]
            self.nu_mor = {self.index[k]: {self.index[x]: to_fraction(c) for x, c in v.items()
                                           if to_fraction(c)}
                           for k, v in (nu_morphisms or {}).items()}
            for k in range(len(self.names)):
                self.nu_mor.setdefault(k, {})
        self.validate()

    # -- basic algebra
    def compose_basis(self, g: int, f: int) -> Dict[int, Fraction]:
        if self.src[g] != self.tgt[f]:
            raise AssumptionViolation(
                f"cannot compose {self.names[g]} after {self.names[f]}")
        if g == self.ident[self.tgt[f]]:
            return {f: Fraction(1)}
        if f == self.ident[self.src[g]]:
            return {g: Fraction(1)}
        return self.comp.get((g, f), {})

    def compose(self, g: Dict[int, Fraction], f: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for a, x in g.items():
            for b, y in f.items():
                vec_add(out, self.compose_basis(a, b), x * y)
        return out

    def d(self, f: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for a, x in f.items():
            vec_add(out, self.diff.get(a, {}), x)
        return out

    def nu(self, f: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for a, x in f.items():
            vec_add(out, self.nu_mor[a], x)
        return out

    def identity(self, obj: int) -> Dict[int, Fraction]:
        return {self.ident[obj]: Fraction(1)}

    def basis_between(self, s: int, t: int) -> List[int]:
        return [k for k in range(len(self.names)) if self.src[k] == s and self.tgt[k] == t]

    def vec(self, spec: Dict[str, object]) -> Dict[int, Fraction]:
        return {self.index[k]: to_fraction(c) for k, c in spec.items() if to_fraction(c)}

    def validate(self) -> None:
        n = len(self.names)
        for o in range(len(self.objects)):
            if o not in self.ident:
                raise SchemaError(f"object {self.objects[o]} lacks an identity")
            i = self.ident[o]
            if self.src[i] != o or self.tgt[i] != o or self.deg[i] != 0:
                raise SchemaError(f"identity of {self.objects[o]} malformed")
        for (g, f), v in self.comp.items():
            for k in v:
                if self.deg[k] != self.deg[g] + self.deg[f] or \
                        self.src[k] != self.src[f] or self.tgt[k] != self.tgt[g]:
                    raise SchemaError(f"composite {self.names[g]}.{self.names[f]} ill-typed")
        for a, v in self.diff.items():
            for k in v:
                if self.deg[k] != self.deg[a] + 1 or self.src[k] != self.src[a] or self.tgt[k] != self.tgt[a]:
                    raise SchemaError(f"differential of {self.names[a]} ill-typed")
        basis = [{k: Fraction(1)} for k in range(n)]
        for a, b, c in iproduct(range(n), repeat=3):
            if self.src[a] == self.tgt[b] and self.src[b] == self.tgt[c]:
                if self.compose(self.compose(basis[a], basis[b]), basis[c]) != \
                        self.compose(basis[a], self.compose(basis[b], basis[c])):
                    raise SchemaError("composition is not associative")
        for a, b in iproduct(range(n), repeat=2):
            if self.src[a] != self.tgt[b]:
                continue
            lhs = self.d(self.compose(basis[a], basis[b]))
            rhs = self.compose(self.d(basis[a]), basis[b])
            vec_add(rhs, self.compose(basis[a], self.d(basis[b])), _sgn(self.deg[a]))
            if lhs != rhs:
                raise SchemaError("differential is not a derivation")
        for a in range(n):
            if self.d(self.d(basis[a])):
                raise SchemaError("d does not square to zero")
            if self.diff.get(self.ident[self.src[a]]) or self.diff.get(self.ident[self.tgt[a]]):
                raise SchemaError("identities must be closed")
        # nu is a dg functor taking B to B
        for o in range(len(self.objects)):
            if o in self.in_B and self.nu_obj[o] not in self.in_B:
                raise SchemaError("nu does not preserve B")
            if self.nu(self.identity(o)) != self.identity(self.nu_obj[o]):
                raise SchemaError("nu does not preserve identities")
        for a in range(n):
            for k in self.nu_mor[a]:
                if self.src[k] != self.nu_obj[self.src[a]] or self.tgt[k] != self.nu_obj[self.tgt[a]] \
                        or self.deg[k] != self.deg[a]:
                    raise SchemaError(f"nu({self.names[a]}) ill-typed")
            if self.nu(self.d(basis[a])) != self.d(self.nu(basis[a])):
                raise SchemaError("nu does not commute with d")
        for a, b in iproduct(range(n), repeat=2):
            if self.src[a] == self.tgt[b]:
                if self.nu(self.compose(basis[a], basis[b])) != \
                        self.compose(self.nu(basis[a]), self.nu(basis[b])):
                    raise SchemaError("nu is not a functor")


# ----------------------------------------------------------------------
# Drinfeld quotient


class DrinfeldQuotient:
    """C = A/B with h-letter count capped at K."""

    def __init__(self, cat: DGCategory, K: int):
        self.A = cat
        self.K = int(K)

    # words
    def hcount(self, w: QWord) -> int:
        return len(w) - 1

    def degree(self, w: QWord) -> int:
        return sum(self.A.deg[f] for f in w) - self.hcount(w)

    def source(self, w: QWord) -> int:
        return self.A.src[w[-1]]

    def target(self, w: QWord) -> int:
        return self.A.tgt[w[0]]

    def check_word(self, w: QWord) -> None:
        A = self.A
        for left, right in zip(w, w[1:]):
            if A.src[left] != A.tgt[right]:
                raise AssumptionViolation("quotient word not composable")
            if A.src[left] not in A.in_B:
                raise NotThroughB(f"h-letter at object {A.objects[A.src[left]]} outside B")
        if self.hcount(w) > self.K:
            raise TruncationTooSmall(f"word needs {self.hcount(w)} h-letters, K = {self.K}")

    def from_A(self, f: Dict[int, Fraction]) -> QVec:
        return {(k,): c for k, c in f.items()}

    def h(self, obj: int) -> QVec:
        """The contraction h_N as the word 1_N h 1_N."""
        i = self.A.ident[obj]
        w = (i, i)
        self.check_word(w)
        return {w: Fraction(1)}

    def compose_words(self, g: QWord, f: QWord) -> QVec:
        mid = self.A.compose_basis(g[-1], f[0])
        out: QVec = {}
        for k, c in mid.items():
            w = g[:-1] + (k,) + f[1:]
            self.check_word(w)
            vec_add(out, {w: c})
        return out

    def compose(self, g: QVec, f: QVec) -> QVec:
        out: QVec = {}
        for a, x in g.items():
            for b, y in f.items():
                vec_add(out, self.compose_words(a, b), x * y)
        return out

    def d_word(self, w: QWord) -> QVec:
        A = self.A
        out: QVec = {}
        acc = 0
        n = len(w)
        for j, f in enumerate(w):
            for k, c in A.diff.get(f, {}).items():
                vec_add(out, {w[:j] + (k,) + w[j + 1:]: c}, _sgn(acc))
            acc += A.deg[f]
            if j + 1 < n:
                # h between w[j] and w[j+1]: d(h) = 1 merges the neighbours
                for k, c in A.compose_basis(f, w[j + 1]).items():
                    vec_add(out, {w[:j] + (k,) + w[j + 2:]: c}, _sgn(acc))
                acc -= 1
        return out

    def d(self, x: QVec) -> QVec:
        out: QVec = {}
        for w, c in x.items():
            vec_add(out, self.d_word(w), c)
        return out

    def nu_word(self, w: QWord) -> QVec:
        out: QVec = {(): Fraction(1)}
        for f in w:
            nxt: QVec = {}
            for pre, c in out.items():
                for k, c2 in self.A.nu_mor[f].items():
                    nxt[pre + (k,)] = nxt.get(pre + (k,), 0) + c * c2
            out = {k: v for k, v in nxt.items() if v}
        return out

    def nu(self, x: QVec) -> QVec:
        out: QVec = {}
        for w, c in x.items():
            vec_add(out, self.nu_word(w), c)
        return out

    def words(self, s: int, t: int, hcount: int) -> List[QWord]:
        """All basis words from s to t with exactly ``hcount`` h-letters."""
        A = self.A
        out: List[QWord] = []

        def grow(w: QWord, left: int):
            # w is built right to left; its current target is A.tgt[w[0]]
            if left == 0:
                if A.tgt[w[0]] == t:
                    out.append(w)
                return
            mid = A.tgt[w[0]]
            if mid not in A.in_B:
                return
            for k in range(len(A.names)):
                if A.src[k] == mid:
                    grow((k,) + w, left - 1)

        for k in range(len(A.names)):
            if A.src[k] == s:
                grow((k,), hcount)
        return sorted(out)


def drinfeld_quotient(cat: DGCategory, K: int) -> DrinfeldQuotient:
    return DrinfeldQuotient(cat, K)


# ----------------------------------------------------------------------
# tensor chains of quotient morphisms


def _tdeg(Q: DrinfeldQuotient, ch: TChain) -> List[int]:
    return [Q.degree(w) for w in ch]


def _splice(out: TVec, ch: TChain, i: int, width: int, repl: QVec, coeff) -> None:
    for w, c in repl.items():
        key = ch[:i] + (w,) + ch[i + width:]
        val = out.get(key, 0) + coeff * c
        if val:
            out[key] = val
        else:
            out.pop(key, None)


def bar_differential(Q: DrinfeldQuotient, ch: TChain) -> TVec:
    """b' + d_int on a_1 (x) ... (x) a_p in the bar resolution (p >= 2).

    Column zero is A (x) A, so b' is only applied when p >= 3.
    """
    degs = _tdeg(Q, ch)
    p = len(ch)
    out: TVec = {}
    if p >= 3:
        acc = 0
        for i in range(1, p):
            acc += degs[i - 1]
            prod = Q.compose_words(ch[i - 1], ch[i])
            _splice(out, ch, i - 1, 2, prod, _sgn(i - 1 + acc))
    acc = 0
    for i in range(p):
        _splice(out, ch, i, 1, Q.d_word(ch[i]), _sgn(i + acc))
        acc += degs[i]
    return out


def hoch_differential(Q: DrinfeldQuotient, ch: TChain) -> TVec:
    """b + d_int on m (x) a_1 (x) ... (x) a_p with m in A(nu -, -)."""
    degs = _tdeg(Q, ch)
    m, a = ch[0], ch[1:]
    p = len(a)
    dm = degs[0]
    out: TVec = {}
    if p:
        right = Q.compose({m: Fraction(1)}, Q.nu_word(a[0]))
        for w, c in right.items():
            vec_add(out, {(w,) + a[1:]: c}, _sgn(dm))
        acc = 0
        for i in range(1, p):
            acc += degs[i]
            prod = Q.compose_words(a[i - 1], a[i])
            _splice(out, ch, i, 2, prod, _sgn(i + dm + acc))
        e = (degs[-1] + 1) * (p + 1 + dm + sum(degs[1:-1])) - 1
        for w, c in Q.compose_words(a[-1], m).items():
            vec_add(out, {(w,) + a[:-1]: c}, _sgn(e))
    _splice(out, ch, 0, 1, Q.d_word(m), 1)
    acc = dm
    for i in range(1, p + 1):
        _splice(out, ch, i, 1, Q.d_word(ch[i]), _sgn(i + acc))
        acc += degs[i]
    return out


def apply_t(f: Callable[[TChain], TVec], x: TVec) -> TVec:
    out: TVec = {}
    for ch, c in x.items():
        vec_add(out, f(ch), c)
    return out


def _require_B(Q: DrinfeldQuotient, objs: Sequence[int]) -> None:
    for o in objs:
        if o not in Q.A.in_B:
            raise NotThroughB(f"object {Q.A.objects[o]} is not in B")


def htilde(Q: DrinfeldQuotient, ch: TChain) -> TVec:
    """h~(f_n (x) ... (x) f_{-1}) for a bar word through B-objects.

    sum_i (-1)^{i+1+|f_{n-i}|+...+|f_n|} f_n (x) ... (x) f_{n-i} (x) h f_{n-i-1} ... h f_{-1}
    """
    A = Q.A
    fs = [w[0] for w in ch]
    if any(len(w) != 1 for w in ch):
        raise AssumptionViolation("htilde expects morphisms of A")
    n = len(fs) - 2
    _require_B(Q, [A.src[f] for f in fs[:-1]])
    out: TVec = {}
    acc = 0
    for i in range(n + 1):
        acc += A.deg[fs[i]]
        head = tuple((f,) for f in fs[:i + 1])
        tail_objs = A.src[fs[i]]
        word = (A.ident[tail_objs],) + tuple(fs[i + 1:])
        Q.check_word(word)
        vec_add(out, {head + (word,): Fraction(_sgn(i + 1 + acc))})
    return out


def hoch_homotopy(Q: DrinfeldQuotient, ch: TChain) -> TVec:
    """h(f_n (x) ... (x) f_0) for a Hochschild chain over B.

    sum_i (-1)^{(i+1+|f_{n-i}|+...+|f_n|)(n-i+|f_0|+...+|f_{n-i-1}|)}
          h f_{n-i-1} ... h f_0 h f_n (x) f_{n-1} (x) ... (x) f_{n-i}
    """
    A = Q.A
    if any(len(w) != 1 for w in ch):
        raise AssumptionViolation("hoch_homotopy expects morphisms of B")
    fn = ch[0][0]
    rest = [w[0] for w in ch[1:]]       # f_{n-1}, ..., f_0
    n = len(rest)
    objs = [A.tgt[fn]] + [A.tgt[f] for f in rest] + [A.src[f] for f in rest]
    _require_B(Q, objs)
    if n + 1 > Q.K:
        raise TruncationTooSmall(f"chain of length {n} needs K >= {n + 1}")
    # f_j for j = 0..n
    f = {n: fn}
    for pos, x in enumerate(rest):
        f[n - 1 - pos] = x
    out: TVec = {}
    for i in range(n + 1):
        left = i + 1 + sum(A.deg[f[j]] for j in range(n - i, n + 1))
        right = n - i + sum(A.deg[f[j]] for j in range(0, n - i))
        sign = _sgn(left * right)
        obj = A.tgt[f[n - i - 1]] if n - i - 1 >= 0 else A.tgt[fn]
        word = (A.ident[obj],) + tuple(f[j] for j in range(n - i - 1, -1, -1)) + (fn,)
        Q.check_word(word)
        tail = tuple((f[j],) for j in range(n - 1, n - i - 1, -1))
        vec_add(out, {(word,) + tail: Fraction(sign)})
    return out


def check_htilde_identity(Q: DrinfeldQuotient, ch: TChain) -> TVec:
    """Residue of d(h~) - p~ i~ on one bar word; zero when the identity holds."""
    lhs = apply_t(lambda c: bar_differential(Q, c), htilde(Q, ch))
    vec_add(lhs, apply_t(lambda c: htilde(Q, c), bar_differential(Q, ch)))
    vec_add(lhs, {ch: Fraction(1)}, -1)
    return lhs


def check_hoch_homotopy_identity(Q: DrinfeldQuotient, ch: TChain) -> TVec:
    lhs = apply_t(lambda c: hoch_differential(Q, c), hoch_homotopy(Q, ch))
    vec_add(lhs, apply_t(lambda c: hoch_homotopy(Q, c), hoch_differential(Q, ch)))
    vec_add(lhs, {ch: Fraction(1)}, -1)
    return lhs


def random_bar_word(cat: DGCategory, rng: random.Random, n: int) -> TChain:
    """f_n (x) ... (x) f_{-1} with interior objects in B (non-identity when possible)."""
    B = sorted(cat.in_B)
    objs = [rng.choice(B) for _ in range(n + 1)]           # B_0 .. B_n
    f_m1 = rng.choice([k for k in range(len(cat.names)) if cat.tgt[k] == objs[0]])
    inner = []
    for j in range(n):
        cands = cat.basis_between(objs[j], objs[j + 1])
        if not cands:
            return random_bar_word(cat, rng, n)
        inner.append(rng.choice(cands))
    f_n = rng.choice([k for k in range(len(cat.names)) if cat.src[k] == objs[n]])
    seq = [f_n] + inner[::-1] + [f_m1]
    return tuple((k,) for k in seq)


def random_hoch_chain(cat: DGCategory, rng: random.Random, n: int) -> TChain:
    """f_n (x) f_{n-1} (x) ... (x) f_0 over B, f_n in A(nu B_n, B_0)."""
    B = sorted(cat.in_B)
    for _ in range(1000):
        objs = [rng.choice(B) for _ in range(n + 1)]       # B_0 .. B_n
        inner = []
        ok = True
        for j in range(n):
            cands = cat.basis_between(objs[j], objs[j + 1])
            if not cands:
                ok = False
                break
            inner.append(rng.choice(cands))
        cands = cat.basis_between(cat.nu_obj[objs[n]], objs[0])
        if not ok or not cands:
            continue
        fn = rng.choice(cands)
        return ((fn,),) + tuple((k,) for k in inner[::-1])
    raise AssumptionViolation("no Hochschild chain of that length through B")


# ----------------------------------------------------------------------
# homotopy short exact sequences


class ChainSpace:
    """A complex given by finite bases per degree and a differential."""

    def __init__(self, basis: Callable[[int], List[Hashable]], d: Callable[[Hashable], dict]):
        self._basis = basis
        self._cache: Dict[int, List[Hashable]] = {}
        self.d_label = d

    def basis(self, n: int) -> List[Hashable]:
        if n not in self._cache:
            self._cache[n] = list(self._basis(n))
        return self._cache[n]

    def d(self, v: dict) -> dict:
        out: dict = {}
        for k, c in v.items():
            vec_add(out, self.d_label(k), c)
        return out

    @classmethod
    def from_window(cls, window: ComplexWindow) -> "ChainSpace":
        maps = window.maps
        col_of = {n: {lab: j for j, lab in enumerate(m.source)} for n, m in maps.items()}
        deg_of = {lab: n for n, b in window.bases.items() for lab in b}

        def d(lab):
            n = deg_of[lab]
            if n not in maps:
                return {}
            return dict(maps[n].columns[col_of[n][lab]])

        return cls(lambda n: window.bases.get(n, []), d)


def _lin(f: Callable[[Hashable], dict]) -> Callable[[dict], dict]:
    def g(v: dict) -> dict:
        out: dict = {}
        for k, c in v.items():
            vec_add(out, f(k), c)
        return out
    return g


@dataclass
class HomotopySES:
    B: ChainSpace
    A: ChainSpace
    C: ChainSpace
    i: Callable[[Hashable], dict]
    p: Callable[[Hashable], dict]
    h: Callable[[Hashable], dict]

    def total_basis(self, n: int) -> List[tuple]:
        return ([("C", x) for x in self.C.basis(n - 1)] + [("A", x) for x in self.A.basis(n)]
                + [("B", x) for x in self.B.basis(n + 1)])

    def total_d(self, lab: tuple) -> dict:
        kind, x = lab
        out: dict = {}
        unit = {x: Fraction(1)}
        if kind == "C":
            for k, c in self.C.d(unit).items():
                vec_add(out, {("C", k): -c})
        elif kind == "A":
            for k, c in _lin(self.p)(unit).items():
                vec_add(out, {("C", k): -c})
            for k, c in self.A.d(unit).items():
                vec_add(out, {("A", k): c})
        else:
            for k, c in _lin(self.h)(unit).items():
                vec_add(out, {("C", k): -c})
            for k, c in _lin(self.i)(unit).items():
                vec_add(out, {("A", k): c})
            for k, c in self.B.d(unit).items():
                vec_add(out, {("B", k): -c})
        return out


def verify_hses(s: HomotopySES, degrees: Sequence[int]) -> dict:
    """d(h) = p i on the B-bases in the window, and acyclicity of the total complex."""
    dh_ok = True
    dh_fail = []
    for n in degrees:
        for x in s.B.basis(n):
            unit = {x: Fraction(1)}
            lhs = s.C.d(_lin(s.h)(unit))
            vec_add(lhs, _lin(s.h)(s.B.d(unit)))
            vec_add(lhs, _lin(s.p)(_lin(s.i)(unit)), -1)
            if lhs:
                dh_ok = False
                dh_fail.append(x)
    acyclic = {}
    for n in degrees:
        src = s.total_basis(n)
        tgt = s.total_basis(n + 1)
        prev = s.total_basis(n - 1)
        tset = set(tgt)
        cols = [{k: v for k, v in s.total_d(x).items() if k in tset} for x in src]
        incoming = [{k: v for k, v in s.total_d(x).items()} for x in prev]
        acyclic[n] = len(src) - rank_of_vectors(cols) - rank_of_vectors(incoming) == 0
    return {"dh_equals_pi": dh_ok, "dh_failures": dh_fail, "total_acyclic": acyclic}


def snake_delta(s: HomotopySES, c: dict, q: int, pivot_order: str = "natural") -> dict:
    """A representative of delta(c) in H^{q+1}(B), namely -b.

    Solves d(a) + i(b) = 0, d(b) = 0 and p(a) + h(b) + d(x) = c for
    a in A^q, b in B^{q+1}, x in C^{q-1}.
    """
    if s.C.d(c):
        raise AssumptionViolation("snake_delta needs a cycle")
    unknowns = ([("A", a) for a in s.A.basis(q)] + [("B", b) for b in s.B.basis(q + 1)]
                + [("X", x) for x in s.C.basis(q - 1)])
    cols = []
    for kind, lab in unknowns:
        unit = {lab: Fraction(1)}
        col: dict = {}
        if kind == "A":
            for k, v in s.A.d(unit).items():
                vec_add(col, {("eqA", k): v})
            for k, v in _lin(s.p)(unit).items():
                vec_add(col, {("eqC", k): v})
        elif kind == "B":
            for k, v in _lin(s.i)(unit).items():
                vec_add(col, {("eqA", k): v})
            for k, v in _lin(s.h)(unit).items():
                vec_add(col, {("eqC", k): v})
            for k, v in s.B.d(unit).items():
                vec_add(col, {("eqB", k): v})
        else:
            for k, v in s.C.d(unit).items():
                vec_add(col, {("eqC", k): v})
        cols.append(col)
    rhs = {("eqC", k): v for k, v in c.items()}
    order = list(range(len(cols)))
    if pivot_order == "reversed":
        order = order[::-1]
    elif pivot_order.startswith("shuffle"):
        random.Random(pivot_order).shuffle(order)
    sol = solve(cols, rhs, order)
    if sol is None:
        raise NoSolution("no (a, b) solves the snake system; exactness fails")
    b: dict = {}
    for j, val in sol.items():
        kind, lab = unknowns[j]
        if kind == "B":
            vec_add(b, {lab: val})
    return vec_scale(b, Fraction(-1))


def same_class(space: ChainSpace, u: dict, v: dict, n: int) -> bool:
    """Whether u - v is a boundary in degree n."""
    diff = dict(u)
    vec_add(diff, v, -1)
    if not diff:
        return True
    images = [space.d({x: Fraction(1)}) for x in space.basis(n - 1)]
    return solve(images, diff) is not None


# ----------------------------------------------------------------------
# Kontsevich cone contraction


def check_cone_contraction(ops, X, Y, f, h11, h12, h21, h22) -> dict:
    """Evaluate the four identities characterising a contraction of cone(f).

    ``ops`` supplies compose(g, f), d(f), identity(obj), add(u, v, scale)
    and is_zero(u).
    """
    def minus(u, v):
        return ops.add(u, v, -1)

    checks = {
        "h21_closed": ops.is_zero(ops.d(h21)),
        "left_inverse": ops.is_zero(minus(minus(ops.identity(X), ops.compose(h21, f)), ops.d(h22))),
        "right_inverse": ops.is_zero(minus(minus(ops.identity(Y), ops.compose(f, h21)), ops.d(h11))),
        "coherence": ops.is_zero(minus(minus(ops.compose(f, h22), ops.compose(h11, f)), ops.d(h12))),
    }
    return {"contracting": all(checks.values()), "checks": checks}


class CategoryOps:
    """Adapter giving check_cone_contraction access to a DGCategory."""

    def __init__(self, cat: DGCategory):
        self.cat = cat

    def compose(self, g, f):
        return self.cat.compose(g, f)

    def d(self, f):
        return self.cat.d(f)

    def identity(self, obj):
        return self.cat.identity(self.cat.obj_index[obj] if isinstance(obj, str) else obj)

    def add(self, u, v, scale=1):
        out = dict(u)
        return vec_add(out, v, Fraction(scale))

    def is_zero(self, u):
        return not u


# ----------------------------------------------------------------------
# Amiot trace and the connecting square


def _closed_deg0(cat: DGCategory, f: Dict[int, Fraction], name: str) -> None:
    if any(cat.deg[k] != 0 for k in f):
        raise InvalidTriangleData(f"{name} is not of degree 0")
    if cat.d(f):
        raise InvalidTriangleData(f"{name} is not closed")


def _ends(cat: DGCategory, f: Dict[int, Fraction], name: str) -> Tuple[int, int]:
    ends = {(cat.src[k], cat.tgt[k]) for k in f}
    if len(ends) != 1:
        raise InvalidTriangleData(f"{name} is zero or not homogeneous in objects")
    return ends.pop()


def _is_boundary(cat: DGCategory, f: Dict[int, Fraction]) -> bool:
    if not f:
        return True
    k0 = next(iter(f))
    s, t, deg = cat.src[k0], cat.tgt[k0], cat.deg[k0]
    cands = [k for k in cat.basis_between(s, t) if cat.deg[k] == deg - 1]
    return solve([cat.diff.get(k, {}) for k in cands], f) is not None


def amiot_trace(cat: DGCategory, traces: Dict[str, Dict[str, object]], N: str,
                iota: Dict[str, object], sigma_pi: Dict[str, object],
                sigma_f: Dict[str, object], s: Optional[Dict[str, object]] = None,
                pi: Optional[Dict[str, object]] = None) -> Fraction:
    """tr_N(iota . nu(Sigma f) . nu(Sigma pi)).

    ``iota``: nu X -> N, ``sigma_pi``: N -> Sigma X', ``sigma_f``: Sigma X' -> X.
    When ``s`` (X' -> nu X) and ``pi`` are supplied, the triangle composites
    are required to vanish in H^0.
    """
    n = cat.obj_index[N]
    if n not in cat.in_B:
        raise InvalidTriangleData(f"object {N} is not in B")
    io, sp, sf = cat.vec(iota), cat.vec(sigma_pi), cat.vec(sigma_f)
    if not io:
        return Fraction(0)
    for vec, name in ((io, "iota"), (sp, "Sigma pi"), (sf, "Sigma f")):
        if vec:
            _closed_deg0(cat, vec, name)
    if _ends(cat, io, "iota")[1] != n:
        raise InvalidTriangleData("iota does not end at N")
    if sp and _ends(cat, sp, "Sigma pi")[0] != n:
        raise InvalidTriangleData("Sigma pi does not start at N")
    if s is not None:
        sv = cat.vec(s)
        _closed_deg0(cat, sv, "s")
        if not _is_boundary(cat, cat.compose(io, sv)):
            raise InvalidTriangleData("iota . s is not null-homotopic")
        if pi is not None and not _is_boundary(cat, cat.compose(sv, cat.vec(pi))):
            raise InvalidTriangleData("s . pi is not null-homotopic")
    loop = cat.compose(io, cat.compose(cat.nu(sf), cat.nu(sp)))
    tr = {cat.index[k]: to_fraction(c) for k, c in traces.get(N, {}).items()}
    for k in cat.basis_between(cat.nu_obj[n], n):
        if cat.deg[k] == -1 and sum((tr.get(j, 0) * c for j, c in cat.diff.get(k, {}).items()),
                                    Fraction(0)):
            raise AssumptionViolation("trace does not vanish on boundaries")
    return sum((tr.get(k, Fraction(0)) * c for k, c in loop.items()), Fraction(0))


class HochschildSpaces:
    """Hochschild complexes of B, A and the quotient C as finite chain spaces.

    Chains are tuples of quotient words; ungraded categories give finite
    bases in each degree once K and the tensor length cap P are fixed.
    """

    def __init__(self, Q: DrinfeldQuotient, P: int):
        self.Q = Q
        self.P = P
        cat = Q.A
        self.B_objs = sorted(cat.in_B)
        self.all_objs = list(range(len(cat.objects)))

    def _chains(self, objs: Sequence[int], max_h: int, degree: int) -> List[TChain]:
        Q, cat = self.Q, self.Q.A
        objset = set(objs)
        wbe: Dict[Tuple[int, int], List[QWord]] = {}
        for s in self.all_objs:
            for t in self.all_objs:
                ws: List[QWord] = []
                for hc in range(max_h + 1):
                    ws.extend(Q.words(s, t, hc))
                wbe[(s, t)] = ws
        out: List[TChain] = []
        for m_s in objs:
            for m_t in objs:
                src = cat.nu_obj[m_s]
                if src not in objset and max_h == 0 and objset != set(self.all_objs):
                    continue
                for m in wbe[(src, m_t)]:
                    self._grow(out, (m,), m_s, m_t, objs, wbe, max_h, degree)
        return sorted(set(out))

    def _grow(self, out, ch, need_tgt, m_t, objs, wbe, max_h, degree):
        # next tensor factor a must satisfy target(a) == need_tgt (so m . nu(a) composes)
        Q = self.Q
        used_h = sum(len(w) - 1 for w in ch)
        p = len(ch) - 1
        deg = sum(Q.degree(w) for w in ch) - p
        closes = (p == 0 and need_tgt == m_t) or (p > 0 and need_tgt == m_t)
        if closes and deg == degree:
            out.append(ch)
        if p >= self.P:
            return
        for s in objs:
            for a in wbe.get((s, need_tgt), []):
                if used_h + len(a) - 1 > max_h:
                    continue
                self._grow(out, ch + (a,), s, m_t, objs, wbe, max_h, degree)

    def space(self, which: str) -> ChainSpace:
        Q = self.Q
        if which == "B":
            objs, max_h = self.B_objs, 0
        elif which == "A":
            objs, max_h = self.all_objs, 0
        else:
            objs, max_h = self.all_objs, Q.K

        def basis(n):
            return self._chains(objs, max_h, n)

        return ChainSpace(basis, lambda ch: hoch_differential(Q, ch))


def connecting_square_check(cat: DGCategory, X: str, N: str, iota: Dict[str, object],
                            g: Dict[str, object], K: int = 3, P: int = 2,
                            scale: Fraction = Fraction(1)) -> dict:
    """Compare the two paths around the connecting square on one class.

    ``iota``: nu X -> N and ``g`` = Sigma f . Sigma pi : N -> X, both closed of
    degree 0 with g . iota = 0, so that c = g h_N iota is a cycle.
    Path one: the top map, c -> iota . nu(g), seen in HH_0(B, M_B).
    Path two: the connecting map of the Hochschild homotopy sequence.
    """
    Q = DrinfeldQuotient(cat, K)
    x, n = cat.obj_index[X], cat.obj_index[N]
    if n not in cat.in_B:
        raise InvalidTriangleData(f"{N} is not in B")
    io, gv = cat.vec(iota), cat.vec(g)
    for vec, name in ((io, "iota"), (gv, "Sigma f . Sigma pi")):
        if vec:
            _closed_deg0(cat, vec, name)
    if io and _ends(cat, io, "iota") != (cat.nu_obj[x], n):
        raise InvalidTriangleData("iota must go from nu X to N")
    if gv and _ends(cat, gv, "g") != (n, x):
        raise InvalidTriangleData("g must go from N to X")
    if cat.compose(gv, io):
        raise InvalidTriangleData("the composite g . iota must vanish")
    if K < 1:
        raise TruncationTooSmall("K must be at least 1")
    hN = Q.h(n)
    c_mor = Q.compose(Q.compose(Q.from_A(gv), hN), Q.from_A(io))
    c = {(w,): scale * v for w, v in c_mor.items()}
    top_mor = cat.compose(io, cat.nu(gv))
    top = {((k,),): scale * v for k, v in top_mor.items()}

    spaces = HochschildSpaces(Q, P)
    sB, sA, sC = spaces.space("B"), spaces.space("A"), spaces.space("C")
    ses = HomotopySES(sB, sA, sC, i=lambda ch: {ch: Fraction(1)},
                      p=lambda ch: {ch: Fraction(1)},
                      h=lambda ch: hoch_homotopy(Q, ch))
    q = -1
    delta = snake_delta(ses, c, q)
    delta_rev = snake_delta(ses, c, q, pivot_order="reversed")
    agree = same_class(sB, top, delta, q + 1)
    pivots_agree = same_class(sB, delta, delta_rev, q + 1)

    # explicit candidate: a = iota (x) g, b = -iota nu(g),
    # x = (h_N iota) (x) g; checks d(a) + i(b) = 0 and p(a) + h(b) - c = d(x)
    a = {}
    for k1, c1 in io.items():
        for k2, c2 in gv.items():
            vec_add(a, {((k1,), (k2,)): c1 * c2 * scale})
    b = {ch: -v for ch, v in top.items()}
    xw = {}
    for w, c1 in Q.compose(hN, Q.from_A(io)).items():
        for k2, c2 in gv.items():
            vec_add(xw, {(w, (k2,)): c1 * c2 * scale})
    res1 = sA.d(a)
    vec_add(res1, b)
    res2 = dict(a)
    vec_add(res2, apply_t(lambda ch: hoch_homotopy(Q, ch), b))
    vec_add(res2, c, -1)
    vec_add(res2, sC.d(xw), -1)
    return {
        "paths_agree": agree,
        "pivot_orders_agree": pivots_agree,
        "top_class": top,
        "delta_class": delta,
        "witness_first_equation": not res1,
        "witness_second_equation": not res2,
        "witness_residue": res2,
        "opposite_sign_agrees": same_class(sB, {k: -v for k, v in top.items()}, delta, q + 1),
    }


def three_term_fixture() -> HomotopySES:
    """B = k[-1], A = (k -> k) in degrees 0 and 1, C = k in degree 0, h = 0."""
    bases = {"B": {1: ["b"]}, "A": {0: ["a0"], 1: ["a1"]}, "C": {0: ["c"]}}
    dA = {"a0": {"a1": Fraction(1)}}
    B = ChainSpace(lambda n: bases["B"].get(n, []), lambda x: {})
    A = ChainSpace(lambda n: bases["A"].get(n, []), lambda x: dict(dA.get(x, {})))
    C = ChainSpace(lambda n: bases["C"].get(n, []), lambda x: {})
    return HomotopySES(B, A, C,
                       i=lambda x: {"a1": Fraction(1)},
                       p=lambda x: {"c": Fraction(1)} if x == "a0" else {},
                       h=lambda x: {})


# ----------------------------------------------------------------------
# finite complexes as an independent model for cone contractions


class ComplexCategory:
    """Finite complexes of vector spaces; morphisms are (degree, matrix).

    A complex is a dict ``{"dims": {n: dim}, "d": {(n, i, j): c}}`` where the
    entry (n, i, j) is the coefficient of basis vector i of degree n+1 in
    d of basis vector j of degree n.  A morphism matrix maps labels (n, j)
    of the source to labels (n + degree, i) of the target.
    """

    def __init__(self, complexes: Dict[str, dict]):
        self.cx = {}
        for name, spec in complexes.items():
            dims = {int(n): int(v) for n, v in spec["dims"].items()}
            d = {}
            for (n, i, j), c in spec.get("d", {}).items():
                d[((n + 1, i), (n, j))] = to_fraction(c)
            self.cx[name] = (dims, d)
            if self._mul(d, d):
                raise SchemaError(f"complex {name} has d^2 != 0")

    @staticmethod
    def _mul(a: dict, b: dict) -> dict:
        out: dict = {}
        by_row: Dict[Hashable, list] = {}
        for (r, c), v in b.items():
            by_row.setdefault(r, []).append((c, v))
        for (r, k), v in a.items():
            for c, w in by_row.get(k, []):
                key = (r, c)
                val = out.get(key, 0) + v * w
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return out

    def labels(self, name: str) -> List[tuple]:
        dims = self.cx[name][0]
        return [(n, j) for n in sorted(dims) for j in range(dims[n])]

    def morphism(self, src: str, tgt: str, degree: int, entries: Dict[tuple, object]):
        """``entries`` maps (n, i, j) to the coefficient of (n + degree, i) in g(n, j)."""
        mat = {((n + degree, i), (n, j)): to_fraction(c) for (n, i, j), c in entries.items()
               if to_fraction(c)}
        return (src, tgt, degree, mat)

    def compose(self, g, f):
        return (f[0], g[1], f[2] + g[2], self._mul(g[3], f[3]))

    def d(self, g):
        src, tgt, k, mat = g
        left = self._mul(self.cx[tgt][1], mat)
        right = self._mul(mat, self.cx[src][1])
        vec_add(left, right, -_sgn(k))
        return (src, tgt, k + 1, left)

    def identity(self, name):
        return (name, name, 0, {lab: Fraction(1) for lab in
                                ((x, x) for x in self.labels(name))})

    def add(self, u, v, scale=1):
        out = dict(u[3])
        vec_add(out, v[3], Fraction(scale))
        return (u[0], u[1], u[2], out)

    def is_zero(self, u):
        return not u[3]

    def cone_contracts(self, X: str, Y: str, f, h11, h12, h21, h22) -> bool:
        """Assemble cone(f) = Y + X[1] and test D H + H D = 1 directly."""
        tag = lambda side, lab: (side, lab[0] - (1 if side == "X" else 0), lab[1])
        D: dict = {}
        for (r, c), v in self.cx[Y][1].items():
            D[(tag("Y", r), tag("Y", c))] = v
        for (r, c), v in self.cx[X][1].items():
            D[(tag("X", r), tag("X", c))] = -v
        for (r, c), v in f[3].items():
            D[(tag("Y", r), tag("X", c))] = v
        H: dict = {}
        for block, side_r, side_c, scale in ((h11, "Y", "Y", 1), (h12, "Y", "X", 1),
                                             (h21, "X", "Y", 1), (h22, "X", "X", -1)):
            for (r, c), v in block[3].items():
                H[(tag(side_r, r), tag(side_c, c))] = scale * v
        total = self._mul(D, H)
        vec_add(total, self._mul(H, D))
        labels = [tag("Y", x) for x in self.labels(Y)] + [tag("X", x) for x in self.labels(X)]
        vec_add(total, {(x, x): Fraction(1) for x in labels}, -1)
        return not total
