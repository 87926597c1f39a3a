"""Independent brute-force oracles.

Nothing here imports the engine; all linear algebra goes through sympy.
"""

from fractions import Fraction
from itertools import product

import sympy


def _paths(vertices, arrows, max_len):
    """Paths as tuples of arrow names, composed right to left; trivial = ('e', v)."""
    src = {a: s for a, s, t in arrows}
    tgt = {a: t for a, s, t in arrows}
    out = [("e", v) for v in vertices]
    layer = [(a,) for a, _, _ in arrows]
    n = 1
    while layer and n <= max_len:
        out.extend(layer)
        layer = [(a,) + p for p in layer for a, _, _ in arrows if src[a] == tgt[p[0]]]
        n += 1
    return out, src, tgt


def _concat(p, q, src, tgt):
    ps = p[1] if p[0] == "e" else src[p[-1]]
    qt = q[1] if q[0] == "e" else tgt[q[0]]
    if ps != qt:
        return None
    if p[0] == "e":
        return q
    if q[0] == "e":
        return p
    return p + q


def cyclic_derivative(potential, arrow):
    """d_a of sum c * (x_1 ... x_k): sum over occurrences of x_{i+1}..x_k x_1..x_{i-1}."""
    out = {}
    for coeff, word in potential:
        k = len(word)
        for i, x in enumerate(word):
            if x == arrow:
                rest = tuple(word[i + 1:]) + tuple(word[:i])
                out[rest] = out.get(rest, 0) + Fraction(coeff)
    return {w: c for w, c in out.items() if c}


def jacobian_dim(vertices, arrows, potential, N):
    """dim of kQ/(d_a w) restricted to paths of length <= N, relations truncated at N."""
    paths, src, tgt = _paths(vertices, arrows, N)
    index = {p: i for i, p in enumerate(paths)}
    rows = []
    for a, _, _ in arrows:
        rel = cyclic_derivative(potential, a)
        if not rel:
            continue
        for u, v in product(paths, repeat=2):
            vec = [0] * len(paths)
            nonzero = False
            for w, c in rel.items():
                r = _concat(u, w, src, tgt)
                r = _concat(r, v, src, tgt) if r is not None else None
                if r is not None and len([x for x in r if x != "e"]) <= N and r in index:
                    vec[index[r]] += sympy.Rational(c.numerator, c.denominator)
                    nonzero = True
            if nonzero:
                rows.append(vec)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return len(paths) - rank


def quiver_hom_dim(arrows, dims_x, mats_x, dims_y, mats_y):
    """dim of intertwiners phi with Y_a phi_s = phi_t X_a, by sympy nullspace."""
    unknowns = [(v, i, j) for v in dims_x for i in range(dims_y[v]) for j in range(dims_x[v])]
    syms = sympy.symbols(f"u0:{len(unknowns)}") if unknowns else ()
    phi = {v: sympy.zeros(dims_y[v], dims_x[v]) for v in dims_x}
    for s, (v, i, j) in zip(syms, unknowns):
        phi[v][i, j] = s
    eqs = []
    for a, s, t in arrows:
        X = sympy.Matrix(dims_x[t], dims_x[s], lambda r, c: mats_x[a][r][c]) if dims_x[t] * dims_x[s] else sympy.zeros(dims_x[t], dims_x[s])
        Y = sympy.Matrix(dims_y[t], dims_y[s], lambda r, c: mats_y[a][r][c]) if dims_y[t] * dims_y[s] else sympy.zeros(dims_y[t], dims_y[s])
        eqs.extend(list(Y * phi[s] - phi[t] * X))
    if not syms:
        return 0
    M = sympy.Matrix([[sympy.diff(e, s) for s in syms] for e in eqs]) if eqs else sympy.zeros(0, len(syms))
    return len(syms) - (M.rank() if eqs else 0)


def euler_form(arrows, dx, dy):
    """<x, y> = sum_v x_v y_v - sum_a x_s y_t = dim Hom - dim Ext^1 (hereditary)."""
    return sum(dx[v] * dy[v] for v in dx) - sum(dx[s] * dy[t] for a, s, t in arrows)


def dual_numbers_ext(n):
    """Ext^n(k, k) over k[x]/x^2 from the periodic resolution ... -x-> A -x-> A -> k.

    Hom(A, k) = k and x acts by zero on k, so every induced map vanishes.
    """
    induced = sympy.Matrix([[0]])
    kernel = 1 - induced.rank()
    image = 0 if n == 0 else induced.rank()
    return kernel - image
