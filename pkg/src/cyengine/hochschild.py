"""Hochschild, cyclic and negative cyclic chains of finite graded algebras.

Algebras are finite-dimensional over a split base l = k x ... x k (one factor
per vertex) and every basis element lies in some e_t A e_s.  A product a*b is
nonzero only when source(a) == target(b).  With such bases the coinvariant
quotient (X)_l simply keeps the cyclically composable tensors.

Field components of a base ring are handled by viewing the component itself
as a one-vertex k-algebra; the mixed complexes over the component and over k
are quasi-isomorphic.

Sign conventions follow the formulas below verbatim.  For chains
a_1 (x) ... (x) a_p in total degree sum|a_i| - (p - 1):

  b'(a)    = sum_{i<p} (-1)^{i-1+|a_1|+...+|a_i|} ... a_i a_{i+1} ...
  b(a)     = b'(a) + (-1)^{(|a_p|+1)(p+|a_1|+...+|a_{p-1}|)-1} a_p a_1 (x) ... (x) a_{p-1}
  d_int(a) = sum_i (-1)^{i-1+|a_1|+...+|a_{i-1}|} ... d(a_i) ...
  tau(a)   = (-1)^{(|a_p|+1)(p-1+|a_1|+...+|a_{p-1}|)} a_p (x) a_1 (x) ... (x) a_{p-1}
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, List, Optional, Sequence, Tuple

from .coefficients import BaseRing, to_fraction
from .errors import AssumptionViolation, NoAugmentation, SchemaError
from .linalg import ComplexWindow, SliceMatrix, vec_add, vec_scale

Chain = Tuple[int, ...]
CVec = Dict[tuple, Fraction]


def _sgn(e: int) -> int:
    return -1 if e % 2 else 1


class FinGradedAlgebra:
    """Finite-dimensional graded (dg) algebra over a split base.

    ``mult[(i, j)]`` is the product of basis elements i and j, ``diff[i]``
    the differential, ``idempotents[v]`` the vertex idempotent e_v.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int],
                 ends: Sequence[Tuple[int, int]], mult: Dict[Tuple[int, int], Dict[int, object]],
                 idempotents: Sequence[Dict[int, object]], diff: Optional[Dict[int, Dict[int, object]]] = None,
                 augmented: bool = False):
        self.names = list(names)
        self.degrees = [int(d) for d in degrees]
        self.ends = [tuple(e) for e in ends]          # (target, source)
        self.n = len(self.names)
        self.mult = {k: {i: to_fraction(c) for i, c in v.items() if to_fraction(c)}
                     for k, v in mult.items()}
        self.diff = {k: {i: to_fraction(c) for i, c in v.items() if to_fraction(c)}
                     for k, v in (diff or {}).items()}
        self.idempotents = [{i: to_fraction(c) for i, c in e.items()} for e in idempotents]
        self.vertices = len(self.idempotents)
        self.augmented = augmented
        self.validate()

    # -- structure
    def target(self, i: int) -> int:
        return self.ends[i][0]

    def source(self, i: int) -> int:
        return self.ends[i][1]

    def mul_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        if self.source(i) != self.target(j):
            return {}
        return self.mult.get((i, j), {})

    def mul(self, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, a in x.items():
            for j, b in y.items():
                vec_add(out, self.mul_basis(i, j), a * b)
        return out

    def d(self, x: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, a in x.items():
            vec_add(out, self.diff.get(i, {}), a)
        return out

    def unit(self) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for e in self.idempotents:
            vec_add(out, e)
        return out

    def validate(self) -> None:
        basis = [{i: Fraction(1)} for i in range(self.n)]
        for (i, j), v in self.mult.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + self.degrees[j]:
                    raise SchemaError(f"product {self.names[i]}*{self.names[j]} not homogeneous")
                if self.ends[k] != (self.target(i), self.source(j)):
                    raise SchemaError(f"product {self.names[i]}*{self.names[j]} leaves e_t A e_s")
        for i, v in self.diff.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + 1 or self.ends[k] != self.ends[i]:
                    raise SchemaError(f"differential of {self.names[i]} not homogeneous")
        one = self.unit()
        for x in basis:
            if self.mul(one, x) != x or self.mul(x, one) != x:
                raise SchemaError("idempotents do not sum to a unit")
        for x, y, z in iproduct(range(self.n), repeat=3):
            lhs = self.mul(self.mul(basis[x], basis[y]), basis[z])
            rhs = self.mul(basis[x], self.mul(basis[y], basis[z]))
            if lhs != rhs:
                raise SchemaError("multiplication is not associative")
        for x, y in iproduct(range(self.n), repeat=2):
            lhs = self.d(self.mul(basis[x], basis[y]))
            rhs = self.mul(self.d(basis[x]), basis[y])
            vec_add(rhs, self.mul(basis[x], self.d(basis[y])), _sgn(self.degrees[x]))
            if lhs != rhs:
                raise SchemaError("differential violates the Leibniz rule")
        for x in range(self.n):
            if self.d(self.d(basis[x])):
                raise SchemaError("differential does not square to zero")
        if self.augmented:
            self.augmentation_ideal()

    def augmentation_ideal(self) -> List[int]:
        """Basis indices spanning the kernel of the augmentation."""
        idem = set()
        for v, e in enumerate(self.idempotents):
            if len(e) != 1 or list(e.values()) != [1]:
                raise NoAugmentation("vertex idempotents must be basis elements")
            idem.update(e)
        ideal = [i for i in range(self.n) if i not in idem]
        iset = set(ideal)
        for i in ideal:
            for j in range(self.n):
                for k in list(self.mul_basis(i, j)) + list(self.mul_basis(j, i)):
                    if k not in iset:
                        raise NoAugmentation("complement of the idempotents is not an ideal")
            if any(k not in iset for k in self.diff.get(i, {})):
                raise NoAugmentation("augmentation ideal not closed under d")
        for i in idem:
            if self.diff.get(i):
                raise NoAugmentation("idempotents are not cycles")
        return ideal

    # -- constructors
    @classmethod
    def ground_field(cls) -> "FinGradedAlgebra":
        return cls(["1"], [0], [(0, 0)], {(0, 0): {0: 1}}, [{0: 1}], augmented=True)

    @classmethod
    def dual_numbers(cls, degree: int = 0) -> "FinGradedAlgebra":
        return cls(["1", "x"], [0, degree], [(0, 0), (0, 0)],
                   {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}, [{0: 1}], augmented=True)

    @classmethod
    def truncated_polynomial(cls, n: int) -> "FinGradedAlgebra":
        """k[x]/x^n."""
        names = ["1"] + [f"x^{k}" for k in range(1, n)]
        mult = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
        return cls(names, [0] * n, [(0, 0)] * n, mult, [{0: 1}], augmented=True)

    @classmethod
    def path_algebra(cls, vertices: int, arrows: Sequence[Tuple[str, int, int, int]],
                     max_length: int = 8) -> "FinGradedAlgebra":
        """Path algebra of an acyclic quiver; arrows are (name, source, target, degree)."""
        paths: List[Tuple[Tuple[int, ...], int, int, int]] = []   # (arrow seq, tgt, src, deg)
        for v in range(vertices):
            paths.append(((), v, v, 0))
        frontier = [((k,), a[2], a[1], a[3]) for k, a in enumerate(arrows)]
        while frontier:
            paths.extend(frontier)
            nxt = []
            for seq, t, s, deg in frontier:
                if len(seq) >= max_length:
                    raise AssumptionViolation("quiver has oriented cycles or paths beyond the cap")
                for k, a in enumerate(arrows):
                    if a[2] == s:
                        nxt.append((seq + (k,), t, a[1], deg + a[3]))
            frontier = nxt
        index = {}
        names, degrees, ends = [], [], []
        for idx, (seq, t, s, deg) in enumerate(paths):
            key = seq if seq else ("e", t)
            index[key] = idx
            names.append("".join(arrows[k][0] for k in seq) if seq else f"e{t + 1}")
            degrees.append(deg)
            ends.append((t, s))
        mult = {}
        for i, (si, ti, ssi, _) in enumerate(paths):
            for j, (sj, tj, ssj, _) in enumerate(paths):
                if ssi != tj:
                    continue
                if not si:
                    mult[(i, j)] = {j: 1}
                elif not sj:
                    mult[(i, j)] = {i: 1}
                else:
                    mult[(i, j)] = {index[si + sj]: 1}
        idem = [{index[("e", v)]: 1} for v in range(vertices)]
        return cls(names, degrees, ends, mult, idem, augmented=True)

    @classmethod
    def from_base_ring(cls, ring: BaseRing) -> "FinGradedAlgebra":
        """l itself, each field component a one-vertex k-algebra."""
        names, ends, mult, idem = [], [], {}, []
        offset = 0
        for v, comp in enumerate(ring.components):
            for m in range(comp.dim):
                names.append(f"{comp.name}:{comp.basis_names[m]}")
                ends.append((v, v))
            for a in range(comp.dim):
                for b in range(comp.dim):
                    prod = comp.mul(comp.basis(a), comp.basis(b))
                    mult[(offset + a, offset + b)] = {offset + k: c for k, c in enumerate(prod) if c}
            idem.append({offset: 1})
            offset += comp.dim
        aug = all(c.dim == 1 for c in ring.components)
        return cls(names, [0] * len(names), ends, mult, idem, augmented=aug)


class Bimodule:
    """Finite graded bimodule over a FinGradedAlgebra."""

    def __init__(self, algebra: FinGradedAlgebra, names, degrees, ends, left, right, diff=None):
        self.A = algebra
        self.names = list(names)
        self.degrees = list(degrees)
        self.ends = [tuple(e) for e in ends]
        self.left = left      # (a, m) -> vec over M
        self.right = right    # (m, a) -> vec over M
        self.diff = diff or {}

    @classmethod
    def regular(cls, A: FinGradedAlgebra) -> "Bimodule":
        return cls(A, A.names, A.degrees, A.ends, A.mult, A.mult, A.diff)

    def act_left(self, a: int, m: int) -> Dict[int, Fraction]:
        if self.A.source(a) != self.ends[m][0]:
            return {}
        return self.left.get((a, m), {})

    def act_right(self, m: int, a: int) -> Dict[int, Fraction]:
        if self.ends[m][1] != self.A.target(a):
            return {}
        return self.right.get((m, a), {})


# ----------------------------------------------------------------------
# chains of the algebra case


def _deg(A: FinGradedAlgebra, chain: Chain) -> int:
    return sum(A.degrees[a] for a in chain)


def chain_degree(A: FinGradedAlgebra, chain: Chain) -> int:
    return _deg(A, chain) - (len(chain) - 1)


def _splice(out: CVec, chain: Chain, i: int, width: int, repl: Dict[int, Fraction], coeff):
    for k, c in repl.items():
        key = chain[:i] + (k,) + chain[i + width:]
        val = out.get(key, 0) + coeff * c
        if val:
            out[key] = val
        else:
            out.pop(key, None)


def bar_bprime(A: FinGradedAlgebra, chain: Chain) -> CVec:
    out: CVec = {}
    p = len(chain)
    acc = 0
    for i in range(1, p):
        acc += A.degrees[chain[i - 1]]
        prod = A.mul_basis(chain[i - 1], chain[i])
        if prod:
            _splice(out, chain, i - 1, 2, prod, _sgn(i - 1 + acc))
    return out


def _wrap_term(A: FinGradedAlgebra, chain: Chain) -> CVec:
    p = len(chain)
    if p < 2:
        return {}
    ap = chain[-1]
    e = (A.degrees[ap] + 1) * (p + _deg(A, chain[:-1])) - 1
    out: CVec = {}
    for k, c in A.mul_basis(ap, chain[0]).items():
        out[(k,) + chain[1:-1]] = _sgn(e) * c
    return out


def hoch_b_algebra(A: FinGradedAlgebra, chain: Chain) -> CVec:
    out = bar_bprime(A, chain)
    vec_add(out, _wrap_term(A, chain))
    return out


def internal_d(A: FinGradedAlgebra, chain: Chain) -> CVec:
    out: CVec = {}
    acc = 0
    for i, a in enumerate(chain):
        da = A.diff.get(a)
        if da:
            _splice(out, chain, i, 1, da, _sgn(i + acc))
        acc += A.degrees[a]
    return out


def connes_tau(A: FinGradedAlgebra, chain: Chain) -> CVec:
    p = len(chain)
    ap = chain[-1]
    e = (A.degrees[ap] + 1) * (p - 1 + _deg(A, chain[:-1]))
    return {(ap,) + chain[:-1]: Fraction(_sgn(e))}


def apply_linear(f, x: CVec) -> CVec:
    out: CVec = {}
    for ch, c in x.items():
        vec_add(out, f(ch), c)
    return out


def norm_operator(A: FinGradedAlgebra, chain: Chain) -> CVec:
    """N = sum_{i=0}^{p-1} tau^i."""
    out: CVec = {}
    cur: CVec = {chain: Fraction(1)}
    for _ in range(len(chain)):
        vec_add(out, cur)
        cur = apply_linear(lambda ch: connes_tau(A, ch), cur)
    return out


# ----------------------------------------------------------------------
# chains with coefficients


def hoch_b(M: Bimodule, chain: Chain) -> CVec:
    """b on m (x) a_1 (x) ... (x) a_p, stored as (m, a_1, ..., a_p)."""
    A = M.A
    m, a = chain[0], chain[1:]
    p = len(a)
    dm = M.degrees[m]
    out: CVec = {}
    if p == 0:
        return out
    for k, c in M.act_right(m, a[0]).items():
        vec_add(out, {(k,) + a[1:]: c}, _sgn(dm))
    acc = 0
    for i in range(1, p):
        acc += A.degrees[a[i - 1]]
        prod = A.mul_basis(a[i - 1], a[i])
        if prod:
            _splice(out, chain, i, 2, prod, _sgn(i + dm + acc))
    e = (A.degrees[a[-1]] + 1) * (p + 1 + dm + sum(A.degrees[x] for x in a[:-1])) - 1
    for k, c in M.act_left(a[-1], m).items():
        vec_add(out, {(k,) + a[:-1]: c}, _sgn(e))
    return out


def hoch_internal(M: Bimodule, chain: Chain) -> CVec:
    A = M.A
    m, a = chain[0], chain[1:]
    out: CVec = {}
    for k, c in M.diff.get(m, {}).items():
        vec_add(out, {(k,) + a: c})
    acc = M.degrees[m]
    for i, x in enumerate(a, start=1):
        dx = A.diff.get(x)
        if dx:
            _splice(out, chain, i, 1, dx, _sgn(i + acc))
        acc += A.degrees[x]
    return out


def coef_degree(M: Bimodule, chain: Chain) -> int:
    return M.degrees[chain[0]] + sum(M.A.degrees[x] for x in chain[1:]) - (len(chain) - 1)


# ----------------------------------------------------------------------
# enumeration


def cyclic_chains(A: FinGradedAlgebra, p: int) -> List[Chain]:
    """Basis of (A^{(x) p})_l: cyclically composable tuples."""
    out: List[Chain] = []

    def grow(ch: Chain):
        if len(ch) == p:
            if A.source(ch[-1]) == A.target(ch[0]):
                out.append(ch)
            return
        for x in range(A.n):
            if A.target(x) == A.source(ch[-1]):
                grow(ch + (x,))

    for x in range(A.n):
        grow((x,))
    return out


def coef_chains(M: Bimodule, p: int) -> List[Chain]:
    A = M.A
    out: List[Chain] = []

    def grow(ch: Chain):
        if len(ch) == p + 1:
            if M.ends[ch[0]][0] == A.source(ch[-1]) if p else M.ends[ch[0]][0] == M.ends[ch[0]][1]:
                out.append(ch)
            return
        prev_src = M.ends[ch[0]][1] if len(ch) == 1 else A.source(ch[-1])
        for x in range(A.n):
            if A.target(x) == prev_src:
                grow(ch + (x,))

    for m in range(len(M.names)):
        grow((m,))
    return out


def _window(labels_by_degree: Dict[int, List], apply, lo: int, hi: int) -> ComplexWindow:
    bases = {n: labels_by_degree.get(n, []) for n in range(lo, hi + 2)}
    maps = {}
    for n in range(lo, hi + 1):
        tgt = bases[n + 1]
        tset = set(tgt)
        cols = []
        for lab in bases[n]:
            img = apply(lab)
            cols.append({k: v for k, v in img.items() if k in tset})
        maps[n] = SliceMatrix(bases[n], tgt, cols)
    return ComplexWindow(bases, maps)


# ----------------------------------------------------------------------
# mixed complex


class MixedComplex:
    """M(A) = cone(1 - tau : B+(A)_l -> C(A)) truncated at tensor length p_max.

    Basis labels are ("C", chain) and ("B", chain); a B-chain sits one degree
    below its own chain degree (it lives in the suspension).
    """

    def __init__(self, A: FinGradedAlgebra, p_max: int):
        self.A = A
        self.p_max = p_max
        self.chains = {p: cyclic_chains(A, p) for p in range(1, p_max + 1)}

    def degree(self, label) -> int:
        kind, ch = label
        d = chain_degree(self.A, ch)
        return d if kind == "C" else d - 1

    def labels(self) -> List[tuple]:
        out = []
        for p in range(1, self.p_max + 1):
            for ch in self.chains[p]:
                out.append(("C", ch))
                out.append(("B", ch))
        return out

    def d_C(self, ch: Chain) -> CVec:
        out = hoch_b_algebra(self.A, ch)
        vec_add(out, internal_d(self.A, ch))
        return out

    def d_B(self, ch: Chain) -> CVec:
        out = bar_bprime(self.A, ch)
        vec_add(out, internal_d(self.A, ch))
        return out

    def d(self, label) -> CVec:
        kind, ch = label
        out: CVec = {}
        if kind == "C":
            for k, c in self.d_C(ch).items():
                out[("C", k)] = c
            return out
        one_minus_tau = {ch: Fraction(1)}
        vec_add(one_minus_tau, connes_tau(self.A, ch), -1)
        for k, c in one_minus_tau.items():
            vec_add(out, {("C", k): c})
        for k, c in self.d_B(ch).items():
            vec_add(out, {("B", k): -c})
        return out

    def t(self, label) -> CVec:
        kind, ch = label
        if kind == "B":
            return {}
        return {("B", k): c for k, c in norm_operator(self.A, ch).items()}

    def by_degree(self) -> Dict[int, List[tuple]]:
        out: Dict[int, List[tuple]] = {}
        for lab in self.labels():
            out.setdefault(self.degree(lab), []).append(lab)
        return out

    def window(self, lo: int, hi: int) -> ComplexWindow:
        return _window(self.by_degree(), self.d, lo, hi)


def mixed_complex(A: FinGradedAlgebra, p_max: int) -> MixedComplex:
    return MixedComplex(A, p_max)


@dataclass(frozen=True)
class TruncatedDim:
    dim: int
    truncation_insufficient: bool
    levels: Tuple[tuple, tuple]
    values: Tuple[int, int]

    def __int__(self) -> int:
        return self.dim


def _two_level(compute, first, second) -> TruncatedDim:
    a, b = compute(*first), compute(*second)
    return TruncatedDim(a, a != b, (first, second), (a, b))


def _hh_cone(A: FinGradedAlgebra, n: int, p_max: int) -> int:
    mc = MixedComplex(A, p_max)
    return mc.window(-n - 1, -n).homology_dim(-n)


def _hh_coef(M: Bimodule, n: int, p_max: int) -> int:
    labels: Dict[int, List[Chain]] = {}
    for p in range(0, p_max + 1):
        for ch in coef_chains(M, p):
            labels.setdefault(coef_degree(M, ch), []).append(ch)

    def D(ch):
        out = hoch_b(M, ch)
        vec_add(out, hoch_internal(M, ch))
        return out

    return _window(labels, D, -n - 1, -n).homology_dim(-n)


def hh_dims(A: FinGradedAlgebra, M: Optional[Bimodule], n: int, p_max: Optional[int] = None) -> TruncatedDim:
    """dim HH_n(A, M); with M None the cone model M(A) is used."""
    p_max = n + 3 if p_max is None else p_max
    if M is None:
        return _two_level(lambda p: _hh_cone(A, n, p), (p_max,), (p_max + 1,))
    return _two_level(lambda p: _hh_coef(M, n, p), (p_max,), (p_max + 1,))


def _tower(A: FinGradedAlgebra, p_max: int, cap: int, negative: bool):
    mc = MixedComplex(A, p_max)
    labs = mc.labels()
    by_deg: Dict[int, List[tuple]] = {}
    for j in range(cap + 1):
        for lab in labs:
            deg = mc.degree(lab) + (2 * j if negative else -2 * j)
            by_deg.setdefault(deg, []).append((j, lab))

    def D(item):
        j, lab = item
        out: CVec = {}
        for k, c in mc.d(lab).items():
            out[(j, k)] = c
        jj = j + 1 if negative else j - 1
        if 0 <= jj <= cap:
            for k, c in mc.t(lab).items():
                vec_add(out, {(jj, k): c})
        return out

    return by_deg, D


def _hc(A, n, p_max, cap) -> int:
    by_deg, D = _tower(A, p_max, cap, negative=False)
    return _window(by_deg, D, -n - 1, -n).homology_dim(-n)


def _hn(A, n, p_max, cap) -> int:
    by_deg, D = _tower(A, p_max, cap, negative=True)
    return _window(by_deg, D, -n - 1, -n).homology_dim(-n)


def hc_dims(A: FinGradedAlgebra, n: int, p_max: Optional[int] = None, column_cap: int = 6) -> TruncatedDim:
    """dim HC_n through the column complex M <- S^2 M <- S^4 M ... glued by t."""
    p_max = n + 3 if p_max is None else p_max
    return _two_level(lambda p, c: _hc(A, n, p, c), (p_max, column_cap), (p_max + 1, column_cap + 1))


def hn_dims(A: FinGradedAlgebra, n: int, p_max: Optional[int] = None, column_cap: int = 6) -> TruncatedDim:
    """dim HN_n through the product tower M -> S^-2 M -> ... glued by t."""
    p_max = (max(n, 0) + 3 + 2 * column_cap) if p_max is None else p_max
    return _two_level(lambda p, c: _hn(A, n, p, c), (p_max, column_cap), (p_max + 1, column_cap + 1))


# ----------------------------------------------------------------------
# Koszul dual


def bar_words(A: FinGradedAlgebra, ideal: Sequence[int], p: int) -> List[Chain]:
    if p == 0:
        return [(-1 - v,) for v in range(A.vertices)]
    out: List[Chain] = []

    def grow(ch: Chain):
        if len(ch) == p:
            out.append(ch)
            return
        for x in ideal:
            if A.target(x) == A.source(ch[-1]):
                grow(ch + (x,))

    for x in ideal:
        grow((x,))
    return out


def reduced_bar_d(A: FinGradedAlgebra, ch: Chain) -> CVec:
    """Differential of the reduced bar construction on [a_1|...|a_p]."""
    out: CVec = {}
    if ch and ch[0] < 0:
        return out
    eps = 0
    for i, a in enumerate(ch):
        da = A.diff.get(a)
        if da:
            _splice(out, ch, i, 1, da, -_sgn(eps))
        eps += A.degrees[a] - 1
        if i + 1 < len(ch):
            prod = A.mul_basis(a, ch[i + 1])
            if prod:
                _splice(out, ch, i, 2, prod, _sgn(eps))
    return out


def bar_degree(A: FinGradedAlgebra, ch: Chain) -> int:
    if ch and ch[0] < 0:
        return 0
    return sum(A.degrees[a] - 1 for a in ch)


def _ext(A: FinGradedAlgebra, n: int, p_max: int) -> int:
    ideal = A.augmentation_ideal()
    labels: Dict[int, List[Chain]] = {}
    for p in range(0, p_max + 1):
        for ch in bar_words(A, ideal, p):
            labels.setdefault(bar_degree(A, ch), []).append(ch)
    return _window(labels, lambda ch: reduced_bar_d(A, ch), -n - 1, -n).homology_dim(-n)


def koszul_ext(A: FinGradedAlgebra, n: int, p_max: Optional[int] = None) -> TruncatedDim:
    """dim Ext^n_A(l, l) via the reduced bar complex on the augmentation ideal."""
    if not A.augmented:
        raise NoAugmentation("algebra carries no augmentation")
    p_max = n + 2 if p_max is None else p_max
    return _two_level(lambda p: _ext(A, n, p), (p_max,), (p_max + 1,))


def smoothness_probe(A: FinGradedAlgebra, degree_cap: int, p_max: Optional[int] = None) -> dict:
    dims = [koszul_ext(A, n, p_max) for n in range(degree_cap + 1)]
    values = [d.dim for d in dims]
    return {
        "ext_dims": values,
        "proper_up_to_cap": values[-1] == 0,
        "truncation_insufficient": any(d.truncation_insufficient for d in dims),
    }
