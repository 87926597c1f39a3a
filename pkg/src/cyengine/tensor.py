"""Tensor algebras over a separable base, potentials and their dg structures.

Words are tuples of letter indices read as compositions from right to left:
``(x1, ..., xn)`` is composable when source(x_i) == target(x_{i+1}).
Elements of the base ring itself are the one-entry words ``(-1 - f,)``
with ``f`` a flat basis index of the base ring.

Normal form: base scalars are pushed to the left.  The first letter of a
word may be any letter; every later letter is drawn from the chosen free
left basis of its block.  Equality of normal forms is equality in the
tensor algebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .coefficients import (BaseRing, KVec, LetterRegistry, dual_letter_actions,
                           format_fraction, to_fraction)
from .errors import (AssumptionViolation, DegreeWindowViolation,
                     EtaNotSymplecticBasis, IncompatibleComponents,
                     LengthCapExceeded, NotChainMap, NotClosed, SchemaError)
from .linalg import Subspace, solve, vec_add, vec_scale

Word = Tuple[int, ...]
Elem = Dict[Word, Fraction]


class TensorAlgebra:
    """The tensor algebra T_l(V) on a finalized letter registry."""

    def __init__(self, reg: LetterRegistry, components: Optional[Iterable[int]] = None):
        self.reg = reg.finalize()
        self.ring: BaseRing = reg.ring
        self.components = sorted(range(len(self.ring)) if components is None else set(components))
        self._norm_cache: Dict[Word, Elem] = {}

    # -- words
    @staticmethod
    def is_base(word: Word) -> bool:
        return bool(word) and word[0] < 0

    def base_word(self, comp: int, m: int) -> Word:
        return (-1 - self.ring.flat_index[(comp, m)],)

    def base_of(self, word: Word) -> Tuple[int, int]:
        return self.ring.flat[-1 - word[0]]

    def length(self, word: Word) -> int:
        return 0 if self.is_base(word) else len(word)

    def degree(self, word: Word) -> int:
        if self.is_base(word):
            return 0
        return sum(self.reg[x].degree for x in word)

    def target(self, word: Word) -> int:
        return self.base_of(word)[0] if self.is_base(word) else self.reg[word[0]].target

    def source(self, word: Word) -> int:
        return self.base_of(word)[0] if self.is_base(word) else self.reg[word[-1]].source

    # -- elements
    def letter(self, name_or_index) -> Elem:
        i = name_or_index if isinstance(name_or_index, int) else self.reg.index(name_or_index)
        return {(i,): Fraction(1)}

    def scalar(self, comp: int, lam: KVec) -> Elem:
        return {self.base_word(comp, m): c for m, c in enumerate(lam) if c}

    def unit(self, comp: int) -> Elem:
        return self.scalar(comp, self.ring.components[comp].unit())

    def one(self) -> Elem:
        out: Elem = {}
        for j in self.components:
            vec_add(out, self.unit(j))
        return out

    # -- normalisation
    def normalize(self, seq: Word) -> Elem:
        """Normal form of a composable sequence of arbitrary letters."""
        if len(seq) <= 1 or all(self.reg.is_left_basis[x] for x in seq[1:]):
            return {seq: Fraction(1)}
        cached = self._norm_cache.get(seq)
        if cached is not None:
            return cached
        out: Elem = {}
        prefix, last = seq[:-1], seq[-1]
        for n, mu in self.reg.decomp[last]:
            for y, c in self.reg.act_right(prefix[-1], mu).items():
                for w, c2 in self.normalize(prefix[:-1] + (y,)).items():
                    key = w + (n,)
                    val = out.get(key, 0) + c * c2
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        self._norm_cache[seq] = out
        return out

    def mul_words(self, u: Word, v: Word) -> Elem:
        reg = self.reg
        if self.is_base(u) and self.is_base(v):
            (j1, m1), (j2, m2) = self.base_of(u), self.base_of(v)
            if j1 != j2:
                return {}
            comp = self.ring.components[j1]
            return self.scalar(j1, comp.mul(comp.basis(m1), comp.basis(m2)))
        if self.is_base(u):
            j, m = self.base_of(u)
            if reg[v[0]].target != j:
                return {}
            return {(y,) + v[1:]: c for y, c in reg.act_basis_left(m, v[0]).items()}
        if self.is_base(v):
            j, m = self.base_of(v)
            if reg[u[-1]].source != j:
                return {}
            out: Elem = {}
            for y, c in reg.act_basis_right(u[-1], m).items():
                vec_add(out, self.normalize(u[:-1] + (y,)), c)
            return out
        if reg[u[-1]].source != reg[v[0]].target:
            return {}
        head = self.normalize(u + (v[0],))
        tail = v[1:]
        return {w + tail: c for w, c in head.items()}

    def mul(self, x: Elem, y: Elem, max_len: Optional[int] = None) -> Elem:
        out: Elem = {}
        for u, a in x.items():
            lu = self.length(u)
            for v, b in y.items():
                if max_len is not None and lu + self.length(v) > max_len:
                    continue
                vec_add(out, self.mul_words(u, v), a * b)
        return out

    def product(self, factors: Sequence[Elem], max_len: Optional[int] = None) -> Elem:
        out = factors[0]
        for f in factors[1:]:
            out = self.mul(out, f, max_len)
        return out

    def left_scalar(self, comp: int, lam: KVec, x: Elem) -> Elem:
        return self.mul(self.scalar(comp, lam), x)

    def right_scalar(self, x: Elem, comp: int, lam: KVec) -> Elem:
        return self.mul(x, self.scalar(comp, lam))

    # -- tokens
    def parse_token(self, token: str) -> Elem:
        """A letter name, or ``comp:basis`` for a base-ring basis element."""
        if ":" in token:
            comp_name, basis = token.split(":", 1)
            j = self.ring.index(comp_name)
            comp = self.ring.components[j]
            try:
                m = comp.basis_names.index(basis)
            except ValueError:
                raise SchemaError(f"unknown basis element in token {token!r}") from None
            return {self.base_word(j, m): Fraction(1)}
        return self.letter(token)

    def from_tokens(self, tokens: Sequence[str], coeff=1) -> Elem:
        if not tokens:
            raise SchemaError("empty word")
        out = self.product([self.parse_token(t) for t in tokens])
        return vec_scale(out, to_fraction(coeff))

    def word_names(self, word: Word) -> List[str]:
        if self.is_base(word):
            j, m = self.base_of(word)
            comp = self.ring.components[j]
            return [f"{comp.name}:{comp.basis_names[m]}"]
        return [self.reg[x].name for x in word]

    def fmt(self, x: Elem) -> str:
        if not x:
            return "0"
        parts = []
        for w in sorted(x):
            c = x[w]
            parts.append(f"{format_fraction(c)}*{' '.join(self.word_names(w))}")
        return " + ".join(parts)

    def to_json(self, x: Elem) -> List[dict]:
        return [{"coeff": format_fraction(x[w]), "word": self.word_names(w)} for w in sorted(x)]


# ----------------------------------------------------------------------
# cyclic words


def _rotate_sign(T: TensorAlgebra, word: Word, k: int) -> int:
    a = sum(T.reg[x].degree for x in word[:k])
    b = sum(T.reg[x].degree for x in word[k:])
    return -1 if (a * b) % 2 else 1


def is_closed_word(T: TensorAlgebra, word: Word) -> bool:
    return T.is_base(word) or T.reg[word[0]].target == T.reg[word[-1]].source


def cyclic_normal_form(T: TensorAlgebra, x: Elem) -> Elem:
    """Representative of the class of x modulo graded commutators.

    Each word is rotated to its lexicographically least rotation with the
    Koszul sign, then renormalised.  A word whose rotation by its period
    picks up a minus sign is zero in the quotient.  For bases where every
    letter is a left-basis letter (all split quivers) this is canonical.
    """
    out: Elem = {}
    for w, c in x.items():
        if not is_closed_word(T, w):
            raise NotClosed(f"word {T.word_names(w)} is not closed")
        if T.is_base(w):
            vec_add(out, {w: c})
            continue
        n = len(w)
        period = next(p for p in range(1, n + 1) if n % p == 0 and w[p:] + w[:p] == w)
        if period < n and _rotate_sign(T, w, period) < 0:
            continue
        k = min(range(n), key=lambda r: w[r:] + w[:r])
        rot = w[k:] + w[:k]
        vec_add(out, T.normalize(rot), c * _rotate_sign(T, w, k))
    return out


def cyclic_rep(T: TensorAlgebra, word: Word) -> Tuple[Word, int]:
    """Order-minimal rotation of a closed word and the Koszul sign picked up.

    Sign 0 means the word vanishes modulo graded commutators.
    """
    if T.is_base(word):
        return word, 1
    n = len(word)
    period = next(p for p in range(1, n + 1) if n % p == 0 and word[p:] + word[:p] == word)
    if period < n and _rotate_sign(T, word, period) < 0:
        return word, 0
    k = min(range(n), key=lambda r: word[r:] + word[:r])
    return word[k:] + word[:k], _rotate_sign(T, word, k)


class Potential:
    """An element of the cyclic quotient, stored via a representative."""

    def __init__(self, T: TensorAlgebra, elem: Elem, min_length: int = 3):
        self.T = T
        for w in elem:
            if not is_closed_word(T, w):
                raise NotClosed(f"potential word {T.word_names(w)} is not closed")
            if T.length(w) < min_length:
                raise DegreeWindowViolation(
                    f"potential word {T.word_names(w)} shorter than {min_length}")
        degs = {T.degree(w) for w in elem}
        if len(degs) > 1:
            raise DegreeWindowViolation(f"potential not homogeneous: degrees {sorted(degs)}")
        self.elem = cyclic_normal_form(T, elem)
        self.degree = degs.pop() if degs else None

    @classmethod
    def from_terms(cls, T: TensorAlgebra, terms: Iterable[Tuple[object, Sequence[str]]],
                   min_length: int = 3) -> "Potential":
        elem: Elem = {}
        for coeff, tokens in terms:
            vec_add(elem, T.from_tokens(tokens, coeff))
        return cls(T, elem, min_length)


def cyclic_derivative(T: TensorAlgebra, w: Elem, xi: Callable[[Dict[int, Fraction]], Fraction],
                      xi_block: Optional[Tuple[int, int, int]] = None) -> Elem:
    """Derivative of a closed element along a k-linear functional on letters.

    For an occurrence ``P v S`` the contribution is
    ``(-1)^{|P|(|v|+|S|)} sum_{p,q} xi(e^q v e^p) e_p S P e_q``,
    the Casimir sums running over the components at the two ends of v.
    The result is independent of the representative of w.
    """
    reg, ring = T.reg, T.ring
    out: Elem = {}
    for word, c in w.items():
        if T.is_base(word):
            continue
        n = len(word)
        degs = [reg[x].degree for x in word]
        for i, v in enumerate(word):
            if xi_block is not None and reg.block_key(v) != xi_block:
                continue
            dp = sum(degs[:i])
            ds = sum(degs[i + 1:])
            sign = -1 if (dp * (degs[i] + ds)) % 2 else 1
            s_comp, t_comp = reg[v].source, reg[v].target
            cas_s = ring.components[s_comp].casimir()
            cas_t = ring.components[t_comp].casimir()
            rest = word[i + 1:] + word[:i]
            for e_p, e_up in cas_s:
                vr = reg.act_right(v, e_up)
                if not vr:
                    continue
                for e_q, e_uq in cas_t:
                    val = xi(reg.act_left_vec(e_uq, vr))
                    if not val:
                        continue
                    if rest:
                        mid = T.normalize(rest)
                    else:
                        mid = T.unit(s_comp) if s_comp == t_comp else {}
                    term = T.mul(T.mul(T.scalar(s_comp, e_p), mid), T.scalar(t_comp, e_q))
                    vec_add(out, term, c * sign * val)
    return out


def dual_functional(i: int) -> Callable[[Dict[int, Fraction]], Fraction]:
    return lambda v: v.get(i, Fraction(0))


def letter_derivative(T: TensorAlgebra, w: Elem, i: int) -> Elem:
    """Derivative along the coordinate functional of letter i."""
    return cyclic_derivative(T, w, dual_functional(i), T.reg.block_key(i))


# ----------------------------------------------------------------------
# pairings eta in V (x)_{l^e} V

EtaEntry = Tuple[Fraction, int, int]   # coefficient, first letter, second letter


def contraction(T: TensorAlgebra, eta: Sequence[EtaEntry],
                xi: Callable[[Dict[int, Fraction]], Fraction]) -> Dict[int, Fraction]:
    """eta(xi) = sum c sum_{p,q} xi(e^q g1 e^p) e_p g2 e_q, a vector of letters."""
    reg, ring = T.reg, T.ring
    out: Dict[int, Fraction] = {}
    for c, g1, g2 in eta:
        s, t = reg[g1].source, reg[g1].target
        for e_p, e_up in ring.components[s].casimir():
            vr = reg.act_right(g1, e_up)
            if not vr:
                continue
            for e_q, e_uq in ring.components[t].casimir():
                val = xi(reg.act_left_vec(e_uq, vr))
                if val:
                    img = reg.act_right_vec(reg.act_left(e_p, g2), e_q)
                    vec_add(out, img, c * val)
    return out


def _coinvariant_space(T: TensorAlgebra, pairs: Iterable[Word]) -> Subspace:
    """Relations lam.u - u.lam spanning the kernel of V(x)_l V -> V(x)_{l^e} V."""
    reg, ring = T.reg, T.ring
    rel = Subspace()
    seen = set()
    for g1, g2 in pairs:
        key = (reg.block_key(g1), reg.block_key(g2))
        if key in seen:
            continue
        seen.add(key)
        for x in reg.block(key[0]):
            for y in reg.block(key[1]):
                u = T.normalize((x, y))
                t = reg[x].target
                comp = ring.components[t]
                for m in range(1, comp.dim):
                    lam = T.scalar(t, comp.basis(m))
                    r = T.mul(lam, u)
                    vec_add(r, T.mul(u, lam), -1)
                    rel.add(r)
    return rel


def eta_element(T: TensorAlgebra, eta: Sequence[EtaEntry]) -> Elem:
    out: Elem = {}
    for c, g1, g2 in eta:
        vec_add(out, T.normalize((g1, g2)), c)
    return out


def check_eta(T: TensorAlgebra, eta: Sequence[EtaEntry], d: int,
              letters: Optional[Sequence[int]] = None) -> dict:
    """Check degree, closedness, graded antisymmetry and nondegeneracy of eta.

    Nondegeneracy means that the contraction xi -> eta(xi) is a bijection
    from the k-dual of the letters onto their span, block by block.
    """
    reg = T.reg
    for c, g1, g2 in eta:
        if reg[g1].source != reg[g2].target or reg[g1].target != reg[g2].source:
            raise NotClosed(f"eta term {reg[g1].name}(x){reg[g2].name} is not closed")
    bad_deg = [(reg[g1].name, reg[g2].name) for c, g1, g2 in eta
               if reg[g1].degree + reg[g2].degree != 2 - d]
    elem = eta_element(T, eta)
    swapped: Elem = {}
    for c, g1, g2 in eta:
        sign = -1 if (reg[g1].degree * reg[g2].degree) % 2 else 1
        vec_add(swapped, T.normalize((g2, g1)), c * sign)
    rel = _coinvariant_space(T, [w for w in elem] + [w for w in swapped])
    total = dict(elem)
    vec_add(total, swapped)
    residue = rel.reduce(total)
    if letters is None:
        letters = sorted({g for _, g1, g2 in eta for g in (g1, g2)})
    nondeg, failing = _nondegenerate(T, eta, letters)
    return {
        "degree_ok": not bad_deg,
        "degree_failures": bad_deg,
        "antisymmetric": not residue,
        "antisymmetry_residue": residue,
        "nondegenerate": nondeg,
        "failing_blocks": failing,
    }


def _contraction_columns(T: TensorAlgebra, eta, letters: Sequence[int]):
    return {a: contraction(T, eta, dual_functional(a)) for a in letters}


def _nondegenerate(T: TensorAlgebra, eta, letters: Sequence[int]):
    reg = T.reg
    cols = _contraction_columns(T, eta, letters)
    letter_set = set(letters)
    failing = []
    blocks: Dict[Tuple[int, int, int], List[int]] = {}
    for a in letters:
        blocks.setdefault(reg.block_key(a), []).append(a)
    for key, members in sorted(blocks.items()):
        images = Subspace()
        targets = set()
        for a in members:
            images.add(cols[a])
            targets.update(cols[a])
        ok = len(images) == len(members) and targets <= letter_set
        if ok:
            partner = sorted({reg.block_key(b) for b in targets})
            ok = len(partner) == 1 and len(reg.block(partner[0])) == len(members)
        if not ok:
            failing.append(key)
    return not failing, failing


def hamiltonian_differential(T: TensorAlgebra, eta: Sequence[EtaEntry], w: Elem,
                             letters: Sequence[int]) -> Dict[int, Elem]:
    """d(eta(xi)) = -partial_xi w, solved for every letter of V.

    The contraction matrix is inverted so that each letter v is written as
    sum_a X_va eta(a^dual); then d(v) = -sum_a (-1)^{|a|} X_va partial_a w.
    The parity factor is the Koszul sign of the functional a^dual; it is
    invisible when the differentiated letters are even.
    """
    for c, g1, g2 in eta:
        if g1 == g2:
            raise EtaNotSymplecticBasis(f"eta pairs letter {T.reg[g1].name} with itself")
    cols = _contraction_columns(T, eta, letters)
    order = list(letters)
    colvecs = [cols[a] for a in order]
    derivs: Dict[int, Elem] = {}
    out: Dict[int, Elem] = {}
    for v in letters:
        sol = solve(colvecs, {v: Fraction(1)})
        if sol is None:
            raise EtaNotSymplecticBasis(
                f"letter {T.reg[v].name} is not in the image of the eta contraction")
        dv: Elem = {}
        for j, x in sol.items():
            a = order[j]
            if a not in derivs:
                derivs[a] = letter_derivative(T, w, a)
            par = -1 if T.reg[a].degree % 2 else 1
            vec_add(dv, derivs[a], -x * par)
        out[v] = dv
    return out


def z_differential(T: TensorAlgebra, eta: Sequence[EtaEntry], comp: int) -> Elem:
    """sum_k e_k (eta' eta'') e^k restricted to loops at one component."""
    reg = T.reg
    loops: Elem = {}
    for c, g1, g2 in eta:
        if reg[g1].target == comp and reg[g2].source == comp:
            vec_add(loops, T.normalize((g1, g2)), c)
    out: Elem = {}
    for e_k, e_uk in T.ring.components[comp].casimir():
        vec_add(out, T.mul(T.mul(T.scalar(comp, e_k), loops), T.scalar(comp, e_uk)))
    return out


# ----------------------------------------------------------------------
# dg presentations


class DGPresentation:
    """A truncated semi-free dg algebra T_l(V) with d given on letters."""

    def __init__(self, T: TensorAlgebra, d_letters: Dict[int, Elem], truncation: int,
                 name: str = ""):
        self.T = T
        self.d_letters = d_letters
        self.N = int(truncation)
        self.name = name
        if self.N < 1:
            raise LengthCapExceeded("truncation must be at least 1")

    def _cut(self, x: Elem) -> Elem:
        T = self.T
        return {w: c for w, c in x.items() if T.length(w) <= self.N}

    def d_word(self, word: Word) -> Elem:
        T = self.T
        if T.is_base(word):
            return {}
        out: Elem = {}
        deg = 0
        n = len(word)
        for i, x in enumerate(word):
            dx = self.d_letters.get(x, {})
            if dx:
                sign = -1 if deg % 2 else 1
                left_len = i
                right_len = n - i - 1
                piece = {w: c for w, c in dx.items()
                         if T.length(w) + left_len + right_len <= self.N}
                if piece:
                    term = piece
                    if i:
                        term = T.mul({word[:i]: Fraction(1)}, term)
                    if right_len:
                        term = T.mul(term, {word[i + 1:]: Fraction(1)})
                    vec_add(out, self._cut(term), sign)
            deg += T.reg[x].degree
        return out

    def d(self, x: Elem) -> Elem:
        out: Elem = {}
        for w, c in x.items():
            if self.T.length(w) > self.N:
                continue
            vec_add(out, self.d_word(w), c)
        return out

    def letter_name(self, i: int) -> str:
        return self.T.reg[i].name


def check_d_squared(p: DGPresentation, letters: Optional[Iterable[int]] = None) -> dict:
    """d^2 on generators; by the Leibniz rule this controls every word."""
    if letters is None:
        letters = sorted(p.d_letters)
    failures = []
    for i in letters:
        dd = p.d(p.d_letters.get(i, {}))
        if dd:
            failures.append({"letter": p.letter_name(i), "d2": p.T.to_json(dd)})
    return {"ok": not failures, "failures": failures}


def z_letters(reg: LetterRegistry, comps: Iterable[int], degree: int,
              names: Optional[Dict[int, str]] = None) -> Dict[int, List[int]]:
    """Add a copy of each component K_j as letters t_j * e_m (central)."""
    out: Dict[int, List[int]] = {}
    for j in comps:
        comp = reg.ring.components[j]
        base = (names or {}).get(j) or f"t{comp.name}"
        idx = []
        for m in range(comp.dim):
            nm = base if m == 0 else f"{comp.basis_names[m]}{base}"
            idx.append(reg.add(nm, j, j, degree, kind="z", z_of=(j, m)))
        for m, i in enumerate(idx):
            for a in range(1, comp.dim):
                prod = comp.mul(comp.basis(a), comp.basis(m))
                act = {idx[k]: c for k, c in enumerate(prod) if c}
                reg[i].left[a] = act
                reg[i].right[a] = dict(act)
        out[j] = idx
    return out


def _z_diff_table(T: TensorAlgebra, eta, zmap: Dict[int, List[int]]) -> Dict[int, Elem]:
    out = {}
    for j, idx in zmap.items():
        dz = z_differential(T, eta, j)
        comp = T.ring.components[j]
        for m, i in enumerate(idx):
            out[i] = T.mul(T.scalar(j, comp.basis(m)), dz)
    return out


def build_preprojective(reg: LetterRegistry, eta: Sequence[EtaEntry], potential_terms,
                        d: int, truncation: int,
                        z_names: Optional[Dict[int, str]] = None,
                        components: Optional[Iterable[int]] = None) -> DGPresentation:
    """The derived deformed preprojective algebra Pi_d(l, V, eta, w)."""
    comps = sorted(range(len(reg.ring)) if components is None else set(components))
    v_letters = [i for i, x in enumerate(reg.letters) if x.kind != "z"]
    for i in v_letters:
        x = reg[i]
        if not 2 - d <= x.degree <= 0:
            raise DegreeWindowViolation(f"letter {x.name} has degree {x.degree} outside [{2 - d}, 0]")
    zmap = z_letters(reg, comps, 1 - d, z_names)
    T = TensorAlgebra(reg, comps)
    report = check_eta(T, eta, d, v_letters)
    if not report["degree_ok"]:
        raise DegreeWindowViolation(f"eta terms of wrong degree: {report['degree_failures']}")
    if not report["antisymmetric"] or not report["nondegenerate"]:
        raise EtaNotSymplecticBasis(
            f"eta fails antisymmetry/nondegeneracy (blocks {report['failing_blocks']})")
    w = potential_terms if isinstance(potential_terms, Potential) else \
        Potential.from_terms(T, potential_terms)
    if w.degree is not None and w.degree != 3 - d:
        raise DegreeWindowViolation(f"potential has degree {w.degree}, expected {3 - d}")
    dl = hamiltonian_differential(T, eta, w.elem, v_letters)
    dl.update(_z_diff_table(T, eta, zmap))
    p = DGPresentation(T, dl, truncation, name="preprojective")
    p.eta = list(eta)
    p.potential = w
    p.dimension = d
    p.z_letters = zmap
    return p


# ----------------------------------------------------------------------
# the relative (frozen) construction


def make_eta_F(reg: LetterRegistry, f_letters: Sequence[int], d: int,
               suffix: str = "*") -> Tuple[List[EtaEntry], Dict[int, int]]:
    """Adjoin R = shifted dual of F and return (eta_F, f -> r map).

    eta_F is the image of the identity of F under
    a (x) b -> (-1)^{(d-3)|a|} a (x) s b - (-1)^{|a||b|} s b (x) a.
    """
    reg.finalize()
    rmap: Dict[int, int] = {}
    for f in f_letters:
        x = reg[f]
        name = x.name + suffix
        while name in reg.by_name:
            name += "#"
        rmap[f] = reg.add(name, x.target, x.source, 3 - d - x.degree, kind="dual")
    for f in f_letters:
        left, right = dual_letter_actions(reg, f)
        reg[rmap[f]].left = {m: {rmap[g]: c for g, c in t.items()} for m, t in left.items()}
        reg[rmap[f]].right = {m: {rmap[g]: c for g, c in t.items()} for m, t in right.items()}
    eta: List[EtaEntry] = []
    for f in f_letters:
        deg = reg[f].degree
        s1 = -1 if ((d - 3) * deg) % 2 else 1
        s2 = -1 if (deg * deg) % 2 else 1
        eta.append((Fraction(s1), f, rmap[f]))
        eta.append((Fraction(-s2), rmap[f], f))
    return eta, rmap


def substitute(T_src: TensorAlgebra, T_tgt: TensorAlgebra, images: Dict[int, Elem],
               x: Elem, max_len: Optional[int] = None) -> Elem:
    """Apply the algebra map determined by letter images (base maps to base)."""
    out: Elem = {}
    for w, c in x.items():
        if T_src.is_base(w):
            j, m = T_src.base_of(w)
            vec_add(out, {T_tgt.base_word(j, m): Fraction(1)}, c)
            continue
        cur = images[w[0]]
        for y in w[1:]:
            cur = T_tgt.mul(cur, images[y], max_len)
        vec_add(out, cur, c)
    return out


class GLMorphism:
    """gamma : relative source algebra -> relative target algebra."""

    def __init__(self, source: DGPresentation, target: DGPresentation,
                 images: Dict[int, Elem]):
        self.source = source
        self.target = target
        self.images = images

    def apply(self, x: Elem) -> Elem:
        out = substitute(self.source.T, self.target.T, self.images, x, self.target.N)
        return {w: c for w, c in out.items() if self.target.T.length(w) <= self.target.N}

    def chain_map_defect(self) -> List[dict]:
        """Letters where gamma(d x) != d(gamma x) at the target truncation."""
        bad = []
        for i in sorted(self.images):
            lhs = self.apply(self.source.d_letters.get(i, {}))
            rhs = self.target.d(self.images[i])
            diff = dict(lhs)
            vec_add(diff, rhs, -1)
            if diff:
                bad.append({"letter": self.source.T.reg[i].name,
                            "defect": self.target.T.to_json(diff)})
        return bad


def build_gl_morphism(ring: BaseRing, letter_specs: Sequence[dict], f_names: Sequence[str],
                      n_names: Sequence[str], eta_n: Sequence[Tuple[object, str, str]],
                      potential_terms, potential_frozen_terms, d: int, truncation: int,
                      z_names: Optional[Dict[int, str]] = None) -> GLMorphism:
    """Source T_{l_F}(F+R+z_F), target T_l(F+N+z), and gamma between them.

    The target differential on F letters is gamma applied to the source
    differential, which is what makes gamma a chain map by construction.
    """
    frozen = sorted(ring.frozen)
    unfrozen = [j for j in range(len(ring)) if j not in ring.frozen]
    specs = {s["name"]: s for s in letter_specs}
    for nm in f_names:
        s = specs[nm]
        if s["source"] not in ring.frozen or s["target"] not in ring.frozen:
            raise IncompatibleComponents(f"frozen letter {nm} touches an unfrozen component")
        if not (3 - d) / 2 <= s["degree"] <= 0:
            raise DegreeWindowViolation(f"frozen letter {nm} degree outside [(3-d)/2, 0]")
    for nm in n_names:
        if not 2 - d <= specs[nm]["degree"] <= 0:
            raise DegreeWindowViolation(f"letter {nm} degree outside [{2 - d}, 0]")

    # source: F + R + z_F over l_F
    sreg = LetterRegistry(ring)
    for nm in f_names:
        _add_spec(sreg, specs[nm])
    sreg.resolve_actions()
    f_src = [sreg.index(nm) for nm in f_names]
    eta_f, rmap = make_eta_F(sreg, f_src, d)
    zf = z_letters(sreg, frozen, 2 - d, z_names)
    Ts = TensorAlgebra(sreg, frozen)
    rep = check_eta(Ts, eta_f, d - 1, f_src + list(rmap.values()))
    if not rep["antisymmetric"] or not rep["nondegenerate"]:
        raise EtaNotSymplecticBasis("eta_F is degenerate")
    wF = Potential.from_terms(Ts, potential_frozen_terms) if potential_frozen_terms else Potential(Ts, {})
    if wF.degree is not None and wF.degree != 4 - d:
        raise DegreeWindowViolation(f"frozen potential degree {wF.degree}, expected {4 - d}")
    fr_letters = f_src + [rmap[f] for f in f_src]
    d_src = hamiltonian_differential(Ts, eta_f, wF.elem, fr_letters) if fr_letters else {}
    d_src.update(_z_diff_table(Ts, eta_f, zf))
    src = DGPresentation(Ts, d_src, truncation, name="relative-source")

    # target: F + N + z over l
    treg = LetterRegistry(ring)
    for nm in list(f_names) + list(n_names):
        _add_spec(treg, specs[nm])
    treg.resolve_actions()
    zt = z_letters(treg, unfrozen, 1 - d, z_names)
    Tt = TensorAlgebra(treg)
    n_tgt = [treg.index(nm) for nm in n_names]
    eta = [(to_fraction(c), treg.index(a), treg.index(b)) for c, a, b in eta_n]
    rep = check_eta(Tt, eta, d, n_tgt)
    if not rep["antisymmetric"] or not rep["nondegenerate"] or not rep["degree_ok"]:
        raise EtaNotSymplecticBasis("eta on N fails the symplectic checks")
    w = Potential.from_terms(Tt, potential_terms)
    if w.degree is not None and w.degree != 3 - d:
        raise DegreeWindowViolation(f"potential degree {w.degree}, expected {3 - d}")

    # gamma on letters
    images: Dict[int, Elem] = {}
    for nm in f_names:
        images[sreg.index(nm)] = Tt.letter(nm)
    # r letters: gamma(r) = -{w, r} = partial_xi w where eta_F(xi) = r
    f_tgt = {f: treg.index(sreg[f].name) for f in f_src}
    cols = _contraction_columns(Ts, eta_f, fr_letters)
    order = list(fr_letters)
    for f in f_src:
        r = rmap[f]
        sol = solve([cols[a] for a in order], {r: Fraction(1)})
        if sol is None:
            raise EtaNotSymplecticBasis("eta_F contraction not surjective")
        img: Elem = {}
        for j, x in sol.items():
            a = order[j]
            if a not in f_tgt:
                raise EtaNotSymplecticBasis("eta_F pairs R with R")
            vec_add(img, letter_derivative(Tt, w.elem, f_tgt[a]), x)
        images[r] = img
    for j, idx in zf.items():
        dz = z_differential(Tt, eta, j)
        comp = ring.components[j]
        for m, i in enumerate(idx):
            images[i] = Tt.mul(Tt.scalar(j, comp.basis(m)), dz)

    d_tgt = hamiltonian_differential(Tt, eta, w.elem, n_tgt) if n_tgt else {}
    d_tgt.update(_z_diff_table(Tt, eta, zt))
    tgt = DGPresentation(Tt, d_tgt, truncation, name="relative-target")
    morph = GLMorphism(src, tgt, images)
    for f in f_src:
        tgt.d_letters[f_tgt[f]] = morph.apply(src.d_letters.get(f, {}))
    return morph


def _add_spec(reg: LetterRegistry, s: dict) -> int:
    return reg.add(s["name"], s["source"], s["target"], s["degree"],
                   left=s.get("left"), right=s.get("right"))
