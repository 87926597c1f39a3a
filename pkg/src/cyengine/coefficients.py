"""Base rings, trace forms and bimodules of generating letters.

The ground field is the rationals.  A base ring is a finite product of
commutative field extensions ("components"), each given by structure
constants in a basis whose first vector is the unit, together with a
linear trace form.  Bimodules over the base ring are presented by a finite
set of letters (a k-basis) plus action tables for the non-unit basis
elements of the adjacent components.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (AssumptionViolation, IncompatibleComponents, SchemaError,
                     SingularTrace)
from .linalg import Subspace, inverse, solve, vec_add

Scalar = Fraction
KVec = Tuple[Fraction, ...]  # coordinates of a component element


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions and "p/q" strings.  Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise SchemaError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad scalar {x!r}") from exc
    raise SchemaError(f"scalars must be exact, got {type(x).__name__}")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ----------------------------------------------------------------------
# components


class BaseComponent:
    """A commutative field extension K of the rationals with a trace form."""

    def __init__(self, name: str, mult, trace, basis_names: Optional[Sequence[str]] = None):
        self.name = str(name)
        self.dim = len(trace)
        self.mult: List[List[KVec]] = [
            [tuple(to_fraction(c) for c in mult[i][j]) for j in range(self.dim)]
            for i in range(self.dim)]
        self.trace_weights: KVec = tuple(to_fraction(t) for t in trace)
        if basis_names is None:
            basis_names = ["1"] + [f"e{m}" for m in range(1, self.dim)]
        self.basis_names = [str(b) for b in basis_names]
        if len(self.basis_names) != self.dim:
            raise SchemaError(f"component {name}: basis name count != dim")
        self._validate()
        self._casimir = None

    # construction helpers
    @classmethod
    def rational(cls, name: str) -> "BaseComponent":
        return cls(name, [[[1]]], [1], ["1"])

    @classmethod
    def gaussian(cls, name: str) -> "BaseComponent":
        """Q(i) with the real-part trace."""
        mult = [[[1, 0], [0, 1]], [[0, 1], [-1, 0]]]
        return cls(name, mult, [1, 0], ["1", "i"])

    def _validate(self) -> None:
        n = self.dim
        for i in range(n):
            if len(self.mult[i]) != n or any(len(v) != n for v in self.mult[i]):
                raise SchemaError(f"component {self.name}: structure constants shape")
        unit = self.basis(0)
        for i in range(n):
            e = self.basis(i)
            if self.mul(unit, e) != e or self.mul(e, unit) != e:
                raise SchemaError(f"component {self.name}: first basis vector is not the unit")
            for j in range(n):
                if self.mul(e, self.basis(j)) != self.mul(self.basis(j), e):
                    raise SchemaError(f"component {self.name}: not commutative")
                for k in range(n):
                    a = self.mul(self.mul(e, self.basis(j)), self.basis(k))
                    b = self.mul(e, self.mul(self.basis(j), self.basis(k)))
                    if a != b:
                        raise SchemaError(f"component {self.name}: not associative")

    def basis(self, m: int) -> KVec:
        return tuple(Fraction(int(i == m)) for i in range(self.dim))

    def unit(self) -> KVec:
        return self.basis(0)

    def zero(self) -> KVec:
        return tuple(Fraction(0) for _ in range(self.dim))

    def mul(self, x: KVec, y: KVec) -> KVec:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def add(self, x: KVec, y: KVec, scale: Fraction = Fraction(1)) -> KVec:
        return tuple(a + scale * b for a, b in zip(x, y))

    def trace(self, x: KVec) -> Fraction:
        return sum((a * t for a, t in zip(x, self.trace_weights)), Fraction(0))

    def gram(self) -> List[List[Fraction]]:
        return [[self.trace(self.mul(self.basis(i), self.basis(j))) for j in range(self.dim)]
                for i in range(self.dim)]

    def inverse(self, x: KVec) -> KVec:
        """Multiplicative inverse via the regular representation."""
        cols = [self.mul(x, self.basis(j)) for j in range(self.dim)]
        rhs = {m: v for m, v in enumerate(self.unit()) if v}
        sol = solve([{m: v for m, v in enumerate(c) if v} for c in cols], rhs)
        if sol is None:
            raise AssumptionViolation(f"element {x} not invertible in {self.name}")
        return tuple(sol.get(j, Fraction(0)) for j in range(self.dim))

    def casimir(self) -> List[Tuple[KVec, KVec]]:
        """Pairs (e_k, e^k) with Tr(e_k e^j) = delta_kj."""
        if self._casimir is None:
            g = self.gram()
            ginv = inverse(g)
            if ginv is None:
                raise SingularTrace(f"trace form on component {self.name} is degenerate")
            # e^j = sum_m X[j][m] e_m with sum_m X[j][m] g[k][m] = delta; g symmetric
            self._casimir = [(self.basis(k), tuple(ginv[k][m] for m in range(self.dim)))
                             for k in range(self.dim)]
        return self._casimir


class BaseRing:
    """Finite product of components, some of which may be frozen."""

    def __init__(self, components: Sequence[BaseComponent], frozen: Sequence[int] = ()):
        self.components = list(components)
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate component names")
        self.frozen = frozenset(frozen)
        for j in self.frozen:
            if not 0 <= j < len(self.components):
                raise SchemaError(f"frozen index {j} out of range")
        self.flat: List[Tuple[int, int]] = []
        self.flat_index: Dict[Tuple[int, int], int] = {}
        for j, comp in enumerate(self.components):
            for m in range(comp.dim):
                self.flat_index[(j, m)] = len(self.flat)
                self.flat.append((j, m))

    def __len__(self) -> int:
        return len(self.components)

    def index(self, name: str) -> int:
        for j, c in enumerate(self.components):
            if c.name == str(name):
                return j
        raise SchemaError(f"unknown component {name!r}")

    @property
    def dim(self) -> int:
        return len(self.flat)

    def casimir(self) -> Dict[int, List[Tuple[KVec, KVec]]]:
        return {j: c.casimir() for j, c in enumerate(self.components)}


def make_casimir(ring: BaseRing):
    """Casimir pairs for every component; raises SingularTrace if degenerate."""
    return ring.casimir()


# ----------------------------------------------------------------------
# letters and bimodule structure


@dataclass
class Letter:
    name: str
    source: int
    target: int
    degree: int
    kind: str = "arrow"            # "arrow", "dual", "z"
    left: Dict[int, Dict[int, Fraction]] = field(default_factory=dict)
    right: Dict[int, Dict[int, Fraction]] = field(default_factory=dict)
    z_of: Optional[Tuple[int, int]] = None   # (component, basis index) for z letters


class LetterRegistry:
    """All letters over a base ring, with their bimodule action tables.

    Letter ``x`` with source s and target t lies in e_t V e_s.  Left actions
    use K_t, right actions K_s.  Action tables give the image of a non-unit
    basis element acting on a letter as a combination of letters of the same
    block (source, target, degree).
    """

    def __init__(self, ring: BaseRing):
        self.ring = ring
        self.letters: List[Letter] = []
        self.by_name: Dict[str, int] = {}
        self._ready = False

    # -- building
    def add(self, name: str, source: int, target: int, degree: int, kind: str = "arrow",
            left=None, right=None, z_of=None) -> int:
        if name in self.by_name:
            raise SchemaError(f"duplicate letter name {name!r}")
        if ":" in name:
            raise SchemaError(f"letter names may not contain ':' ({name!r})")
        for comp in (source, target):
            if not 0 <= comp < len(self.ring):
                raise SchemaError(f"letter {name}: component index {comp} out of range")
        self.letters.append(Letter(name, source, target, int(degree), kind,
                                   dict(left or {}), dict(right or {}), z_of))
        self.by_name[name] = len(self.letters) - 1
        self._ready = False
        return len(self.letters) - 1

    def resolve_actions(self) -> None:
        """Translate name-keyed action tables into index-keyed ones."""
        for x in self.letters:
            for side in ("left", "right"):
                table = getattr(x, side)
                comp = self.ring.components[x.target if side == "left" else x.source]
                fixed: Dict[int, Dict[int, Fraction]] = {}
                for key, combo in table.items():
                    m = key if isinstance(key, int) else _basis_index(comp, key)
                    fixed[m] = {self.index(y) if not isinstance(y, int) else y: to_fraction(c)
                                for y, c in combo.items() if to_fraction(c)}
                setattr(x, side, fixed)

    def index(self, name: str) -> int:
        try:
            return self.by_name[name]
        except KeyError:
            raise SchemaError(f"unknown letter {name!r}") from None

    def __getitem__(self, i: int) -> Letter:
        return self.letters[i]

    def __len__(self) -> int:
        return len(self.letters)

    def block_key(self, i: int) -> Tuple[int, int, int]:
        x = self.letters[i]
        return (x.target, x.source, x.degree)

    # -- actions
    def act_basis_left(self, m: int, i: int) -> Dict[int, Fraction]:
        if m == 0:
            return {i: Fraction(1)}
        x = self.letters[i]
        if m not in x.left:
            raise SchemaError(f"letter {x.name}: missing left action of basis element {m}")
        return x.left[m]

    def act_basis_right(self, i: int, m: int) -> Dict[int, Fraction]:
        if m == 0:
            return {i: Fraction(1)}
        x = self.letters[i]
        if m not in x.right:
            raise SchemaError(f"letter {x.name}: missing right action of basis element {m}")
        return x.right[m]

    def act_left(self, lam: KVec, i: int) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for m, c in enumerate(lam):
            if c:
                vec_add(out, self.act_basis_left(m, i), c)
        return out

    def act_right(self, i: int, lam: KVec) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for m, c in enumerate(lam):
            if c:
                vec_add(out, self.act_basis_right(i, m), c)
        return out

    def act_left_vec(self, lam: KVec, v: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, c in v.items():
            vec_add(out, self.act_left(lam, i), c)
        return out

    def act_right_vec(self, v: Dict[int, Fraction], lam: KVec) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, c in v.items():
            vec_add(out, self.act_right(i, lam), c)
        return out

    # -- validation and normal-form data
    def finalize(self) -> "LetterRegistry":
        if self._ready:
            return self
        self.resolve_actions()
        self._check_bimodule()
        self._blocks: Dict[Tuple[int, int, int], List[int]] = {}
        for i in range(len(self.letters)):
            self._blocks.setdefault(self.block_key(i), []).append(i)
        self.left_basis: Dict[Tuple[int, int, int], List[int]] = {}
        self.is_left_basis: List[bool] = [False] * len(self.letters)
        self.decomp: Dict[int, List[Tuple[int, KVec]]] = {}
        for key, members in self._blocks.items():
            self._choose_basis(key, members, side="left")
        self.right_basis: Dict[Tuple[int, int, int], List[int]] = {}
        for key, members in self._blocks.items():
            self._choose_basis(key, members, side="right")
        self._ready = True
        return self

    def block(self, key) -> List[int]:
        return self._blocks.get(key, [])

    def _check_bimodule(self) -> None:
        for i, x in enumerate(self.letters):
            kt = self.ring.components[x.target]
            ks = self.ring.components[x.source]
            for a in range(kt.dim):
                for b in range(kt.dim):
                    lhs = self.act_left(kt.mul(kt.basis(a), kt.basis(b)), i)
                    rhs = self.act_left_vec(kt.basis(a), self.act_left(kt.basis(b), i))
                    if lhs != rhs:
                        raise IncompatibleComponents(
                            f"letter {x.name}: left action is not a module structure")
            for a in range(ks.dim):
                for b in range(ks.dim):
                    lhs = self.act_right(i, ks.mul(ks.basis(a), ks.basis(b)))
                    rhs = self.act_right_vec(self.act_right(i, ks.basis(a)), ks.basis(b))
                    if lhs != rhs:
                        raise IncompatibleComponents(
                            f"letter {x.name}: right action is not a module structure")
            for a in range(kt.dim):
                for b in range(ks.dim):
                    lhs = self.act_right_vec(self.act_left(kt.basis(a), i), ks.basis(b))
                    rhs = self.act_left_vec(kt.basis(a), self.act_right(i, ks.basis(b)))
                    if lhs != rhs:
                        raise IncompatibleComponents(
                            f"letter {x.name}: left and right actions do not commute")
            for table in (x.left, x.right):
                for combo in table.values():
                    for y in combo:
                        if self.block_key(y) != self.block_key(i):
                            raise IncompatibleComponents(
                                f"letter {x.name}: action leaves its block")

    def _choose_basis(self, key, members: List[int], side: str) -> None:
        target, source, _ = key
        comp = self.ring.components[target if side == "left" else source]
        act = (lambda m, i: self.act_basis_left(m, i)) if side == "left" \
            else (lambda m, i: self.act_basis_right(i, m))
        sub = Subspace()
        chosen: List[int] = []
        for i in members:
            images = [act(m, i) for m in range(comp.dim)]
            if sub.contains(images[0]):
                continue
            gained = sum(1 for v in images if sub.add(v))
            if gained != comp.dim:
                raise IncompatibleComponents(
                    f"block {key}: letters do not span a free {side} module")
            chosen.append(i)
        if side == "right":
            self.right_basis[key] = chosen
            return
        self.left_basis[key] = chosen
        for i in chosen:
            self.is_left_basis[i] = True
        cols, labels = [], []
        for j in chosen:
            for m in range(comp.dim):
                cols.append(act(m, j))
                labels.append((j, m))
        for i in members:
            sol = solve(cols, {i: Fraction(1)})
            if sol is None:
                raise IncompatibleComponents(f"letter {self.letters[i].name} outside span")
            parts: Dict[int, List[Fraction]] = {}
            for col, c in sol.items():
                j, m = labels[col]
                parts.setdefault(j, [Fraction(0)] * comp.dim)[m] += c
            self.decomp[i] = [(j, tuple(v)) for j, v in sorted(parts.items())]


def _basis_index(comp: BaseComponent, name) -> int:
    try:
        return comp.basis_names.index(str(name))
    except ValueError:
        raise SchemaError(f"component {comp.name} has no basis element {name!r}") from None


# ----------------------------------------------------------------------
# tensor products over the base ring


def tensor_over_base(reg: LetterRegistry, left_letters: Sequence[int],
                     right_letters: Sequence[int], side: str = "left") -> List[Tuple[int, int]]:
    """Normal-form k-basis of V (x)_l W for letter sets V and W.

    With ``side="left"`` scalars are pushed onto the left factor, so the right
    factor ranges over a free left basis.  ``side="right"`` is the mirror
    normalisation; both give bases of the same space.
    """
    reg.finalize()
    right_set = set(right_letters)
    left_set = set(left_letters)
    out = []
    if side == "left":
        for v in left_letters:
            for key, basis in reg.left_basis.items():
                for w in basis:
                    if w in right_set and reg[w].target == reg[v].source:
                        out.append((v, w))
    elif side == "right":
        for w in right_letters:
            for key, basis in reg.right_basis.items():
                for v in basis:
                    if v in left_set and reg[w].target == reg[v].source:
                        out.append((v, w))
    else:
        raise ValueError("side must be 'left' or 'right'")
    return sorted(out)


def dual_letter_actions(reg: LetterRegistry, f: int) -> Tuple[dict, dict]:
    """Action tables of the k-dual of letter f inside the dual bimodule.

    (lam . phi)(v) = phi(v . lam) and (phi . mu)(v) = phi(mu . v).
    Returned tables are keyed by basis index and valued over F-letter
    indices, to be re-pointed at the dual letters by the caller.
    """
    x = reg[f]
    block = reg.block(reg.block_key(f))
    ks = reg.ring.components[x.source]   # acts on the left of the dual
    kt = reg.ring.components[x.target]
    left, right = {}, {}
    for m in range(1, ks.dim):
        left[m] = {g: reg.act_basis_right(g, m).get(f, Fraction(0)) for g in block}
        left[m] = {g: c for g, c in left[m].items() if c}
    for m in range(1, kt.dim):
        right[m] = {g: reg.act_basis_left(m, g).get(f, Fraction(0)) for g in block}
        right[m] = {g: c for g, c in right[m].items() if c}
    return left, right
