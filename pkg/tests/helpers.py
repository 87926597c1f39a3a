"""Shared fixture builders for the test-suite."""

import json
import random
from fractions import Fraction
from pathlib import Path

from cyengine.coefficients import BaseComponent, BaseRing, LetterRegistry
from cyengine.linalg import vec_add
from cyengine.schema import load_session
from cyengine.tensor import build_preprojective

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


def load_doc(name):
    return json.loads((CORPUS / name).read_text())


def session_preprojective(name, **overrides):
    doc = load_doc(name)
    doc.update(overrides)
    s = load_session(doc)
    reg = s.registry()
    return build_preprojective(reg, s.eta(reg), s.potential(), s.d, s.N, z_names=s.z_names())


def gaussian_cycle(truncation=8):
    return session_preprojective("gaussian_cycle.json", truncation=truncation)


def reference_table(T):
    """The reference differential table for the Gaussian three-cycle."""
    def el(*terms):
        out = {}
        for coeff, toks in terms:
            vec_add(out, T.from_tokens(toks), Fraction(coeff))
        return out
    cc, bb = (["c", "c*"], ["b*", "b"])
    one, i = "3:1", "3:i"
    return {
        "t1": el((1, ["b", "b*"]), (1, ["bi", "b*"]), (-1, ["a*", "a"])),
        "t2": el((1, ["a", "a*"]), (-1, ["c*", "c"]), (-1, ["c*", "ic"])),
        "t3": el((1, [one] + cc), (1, [i] + cc), (-1, [one] + bb), (-1, [i] + bb),
                 (1, cc + [i]), (-1, [i] + cc + [i]), (-1, bb + [i]), (1, [i] + bb + [i])),
        "a*": el((-1, ["b", "c"])),
        "b*": el((-1, ["c", "a"])),
        "c*": el((-1, ["a", "b"])),
    }


def random_species(seed, d, max_arrows=3):
    """A random admissible (V_c, eta, w) over rational components, or None."""
    rng = random.Random(seed)
    nv = rng.randint(1, 3)
    ring = BaseRing([BaseComponent.rational(str(j)) for j in range(nv)])
    reg = LetterRegistry(ring)
    eta, arrows = [], []
    for k in range(rng.randint(2, max_arrows)):
        s, t = rng.randrange(nv), rng.randrange(nv)
        deg = rng.choice([0, 0, -1]) if d == 4 else 0
        pdeg = 2 - d - deg
        x = reg.add(f"x{k}", s, t, deg)
        xs = reg.add(f"x{k}*", t, s, pdeg)
        eps = -1 if (deg * pdeg) % 2 else 1
        c = Fraction(rng.choice([1, 2, -1, 3]))
        eta += [(c, x, xs), (-eps * c, xs, x)]
        arrows.append(x)
    terms = []
    for _ in range(300):
        L = rng.randint(3, 4)
        w = [rng.choice(arrows)]
        ok = True
        for _ in range(L - 1):
            cand = [a for a in arrows if reg[a].target == reg[w[-1]].source]
            if not cand:
                ok = False
                break
            w.append(rng.choice(cand))
        if not ok or reg[w[0]].target != reg[w[-1]].source:
            continue
        if sum(reg[a].degree for a in w) != 3 - d:
            continue
        terms.append((rng.randint(-3, 3) or 1, [reg[a].name for a in w]))
        if len(terms) >= 3:
            break
    if not terms:
        return None
    return reg, eta, terms


def reference_presentation(truncation=8):
    """The Gaussian three-cycle with the reference table substituted verbatim.

    The letters c*i and ib* get d(c*)i and i d(b*), as forced by the action.
    """
    from cyengine.tensor import DGPresentation
    p = gaussian_cycle(truncation)
    T = p.T
    tab = reference_table(T)
    dl = dict(p.d_letters)
    for name, v in tab.items():
        dl[T.reg.index(name)] = v
    i = (Fraction(0), Fraction(1))
    dl[T.reg.index("c*i")] = T.right_scalar(tab["c*"], 2, i)
    dl[T.reg.index("ib*")] = T.left_scalar(2, i, tab["b*"])
    return DGPresentation(T, dl, truncation)


def quiver_preprojective(vertices, arrows, potential, truncation, d=3):
    """Ginzburg-type presentation of a quiver over rational vertices.

    arrows: (name, source, target) of degree 0; duals get degree 2 - d.
    """
    ring = BaseRing([BaseComponent.rational(str(v)) for v in vertices])
    reg = LetterRegistry(ring)
    pos = {v: k for k, v in enumerate(vertices)}
    eta = []
    for name, s, t in arrows:
        x = reg.add(name, pos[s], pos[t], 0)
        xs = reg.add(name + "*", pos[t], pos[s], 2 - d)
        eta += [(Fraction(1), x, xs), (Fraction(-1), xs, x)]
    reg.resolve_actions()
    return build_preprojective(reg, eta, potential, d, truncation)


# ----------------------------------------------------------------------
# dg categories used by the quotient and homotopy tests


def dg_fixture_ungraded(twist=True):
    """X -a-> N -b-> Y with an idempotent-free loop e on N; all in degree 0."""
    from cyengine.dgcat import DGCategory
    objs = ["X", "N", "Y"]
    mors = [("1X", "X", "X", 0), ("1N", "N", "N", 0), ("1Y", "Y", "Y", 0), ("a", "X", "N", 0),
            ("e", "N", "N", 0), ("ea", "X", "N", 0), ("b", "N", "Y", 0), ("be", "N", "Y", 0),
            ("ba", "X", "Y", 0), ("bea", "X", "Y", 0)]
    comp = {("e", "a"): {"ea": 1}, ("b", "e"): {"be": 1}, ("b", "a"): {"ba": 1},
            ("b", "ea"): {"bea": 1}, ("be", "a"): {"bea": 1}}
    nu = num = None
    if twist:
        nu = {o: o for o in objs}
        num = {m[0]: {m[0]: (-1 if "e" in m[0] else 1)} for m in mors}
    return DGCategory(objs, ["N"], mors, comp, {"X": "1X", "N": "1N", "Y": "1Y"},
                      nu_objects=nu, nu_morphisms=num)


def dg_fixture_graded():
    """Odd-degree morphisms u (degree 1) and g (degree -1) with d(g) = g u."""
    from cyengine.dgcat import DGCategory
    objs = ["X", "N", "P"]
    mors = [("1X", "X", "X", 0), ("1N", "N", "N", 0), ("1P", "P", "P", 0), ("a", "X", "N", 0),
            ("u", "N", "N", 1), ("ua", "X", "N", 1), ("g", "N", "P", -1), ("gu", "N", "P", 0),
            ("ga", "X", "P", -1), ("gua", "X", "P", 0)]
    comp = {("u", "a"): {"ua": 1}, ("g", "u"): {"gu": 1}, ("g", "a"): {"ga": 1},
            ("g", "ua"): {"gua": 1}, ("gu", "a"): {"gua": 1}}
    return DGCategory(objs, ["N", "P"], mors, comp, {"X": "1X", "N": "1N", "P": "1P"},
                      diff={"g": {"gu": 1}, "ga": {"gua": 1}})


def dg_fixture_square():
    """X, N with i: X -> N, g: N -> X, c = i g and g i = 0; N in B."""
    from cyengine.dgcat import DGCategory
    mors = [("1X", "X", "X", 0), ("1N", "N", "N", 0), ("i", "X", "N", 0), ("g", "N", "X", 0),
            ("c", "N", "N", 0)]
    return DGCategory(["X", "N"], ["N"], mors, {("i", "g"): {"c": 1}}, {"X": "1X", "N": "1N"})
