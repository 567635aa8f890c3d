"""Independent reference computations built on sympy, sharing no code with the package."""

from fractions import Fraction
from itertools import product

import sympy


def _mat(m, rows, cols):
    if rows == 0 or cols == 0:
        return sympy.zeros(rows, cols)
    return sympy.Matrix([[sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in row] for row in m.tolist()])


def hom_dim_kronecker(x, y):
    """dim Hom(X, Y) from one naive stacked system: unknowns are all entries of all
    vertex maps, one block row ``G_t X_a - Y_a G_s = 0`` per arrow (vec trick)."""
    q = x.algebra.quiver
    verts = list(q.vertices)
    offs, n = {}, 0
    for v in verts:
        offs[v] = n
        n += y.dims[v] * x.dims[v]
    if n == 0:
        return 0
    blocks = []
    for a in q.arrows:
        s, t = a.source, a.target
        xs, xt, ys, yt = x.dims[s], x.dims[t], y.dims[s], y.dims[t]
        if yt * xs == 0:
            continue
        X = _mat(x.maps[a.name], xt, xs)
        Y = _mat(y.maps[a.name], yt, ys)
        row = sympy.zeros(yt * xs, n)
        # vec(G_t X) = (X^T kron I) vec(G_t); vec(Y G_s) = (I kron Y) vec(G_s)
        if xt and yt:
            row[:, offs[t]:offs[t] + yt * xt] += sympy.kronecker_product(X.T, sympy.eye(yt))
        if ys and xs:
            row[:, offs[s]:offs[s] + ys * xs] -= sympy.kronecker_product(sympy.eye(xs), Y)
        blocks.append(row)
    if not blocks:
        return n
    return n - sympy.Matrix.vstack(*blocks).rank()


def algebra_dim_bruteforce(quiver, relations, bound):
    """dim kQ/(I + J^bound) by ranking the span of all u*r*v inside paths of length < bound."""
    layer = [((), v, v) for v in quiver.vertices]
    allp = list(layer)
    for _ in range(bound - 1):
        nxt = []
        for arrs, s, t in layer:
            for a in quiver.arrows:
                if a.source == t:
                    nxt.append(((a.name,) + arrs, s, a.target))
        allp += nxt
        layer = nxt
    index = {p: i for i, p in enumerate(allp)}
    rows = []
    for r in relations:
        for u, v in product(allp, allp):
            vec = [0] * len(allp)
            hit = False
            for c, p in r.terms:
                if v[2] != p.source or p.target != u[1]:
                    break
                arrs = u[0] + p.arrows + v[0]
                key = (arrs, v[1], u[2])
                if key in index:
                    vec[index[key]] += c
                    hit = True
            else:
                if hit and any(vec):
                    rows.append(vec)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return len(allp) - rank
