"""Left modules over a presented algebra, given as quiver representations.

Arrow ``alpha`` acts as a matrix from the ``s(alpha)`` component to the
``e(alpha)`` component.  The global basis of a representation is the
concatenation of its vertex components in the algebra's vertex order.
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    AlgebraMismatch,
    CharacteristicTooSmall,
    RelationViolated,
    ShapeMismatch,
    UnknownArrow,
)
from .exactlin import EchelonForm, Matrix, Subspace, to_dense, to_sparse
from .presentation import Path, PresentedAlgebra

log = logging.getLogger(__name__)


class Representation:
    """A finite-dimensional left module ``X`` over ``algebra``.

    Args:
        algebra: the presented algebra acting on the module.
        dims: vertex -> dimension of the vertex component (missing vertices are 0).
        maps: arrow name -> matrix ``X_alpha`` (``dims[e] x dims[s]``); ``0`` or a
            missing entry means the zero map.
        label: optional display name.
        word: for serial modules ``M(C)``, the defining path ``C``.
    """

    def __init__(self, algebra: PresentedAlgebra, dims, maps=None, label=None, word=None, check=True):
        self.algebra = algebra
        self.field = algebra.field
        q = algebra.quiver
        for v in dims:
            if v not in q.vertex_index:
                raise ShapeMismatch(f"unknown vertex {v!r}")
        self.dims: Dict[str, int] = {v: int(dims.get(v, 0)) for v in q.vertices}
        maps = dict(maps or {})
        for name in maps:
            q.arrow(name)
        self.maps: Dict[str, Matrix] = {}
        f = self.field
        for a in q.arrows:
            r, c = self.dims[a.target], self.dims[a.source]
            m = maps.get(a.name)
            if m is None or (not isinstance(m, Matrix) and not isinstance(m, list) and m == 0):
                m = Matrix.zeros(r, c, f)
            elif not isinstance(m, Matrix):
                m = Matrix(m, cols=c, field=f)
            if m.shape != (r, c):
                raise ShapeMismatch(
                    f"map {a.name} has shape {m.shape}, expected {(r, c)} from dims of {a.source}, {a.target}"
                )
            self.maps[a.name] = m
        self.label = label
        self.word = word
        self.offsets: Dict[str, int] = {}
        off = 0
        for v in q.vertices:
            self.offsets[v] = off
            off += self.dims[v]
        self.dim = off
        self._hom_cache: Dict[int, Tuple["Representation", "HomBasis"]] = {}
        self._local: Optional[bool] = None
        if check:
            self.check_relations()

    # -- validation -----------------------------------------------------------
    def path_matrix(self, p: Path) -> Matrix:
        if p.is_trivial:
            return Matrix.identity(self.dims[p.source], self.field)
        m = self.maps[p.arrows[-1]]
        for name in reversed(p.arrows[:-1]):
            m = self.maps[name] @ m
        return m

    def check_relations(self):
        alg = self.algebra
        for rel in alg.relations:
            acc = Matrix.zeros(self.dims[rel.target], self.dims[rel.source], self.field)
            for c, p in rel.terms:
                acc = acc + self.path_matrix(p).scale(c)
            if not acc.is_zero():
                raise RelationViolated(f"relation {rel} does not act as zero", relation=rel)
        # paths of length N act as zero
        layer = {v: Subspace(self.field, self.dims[v], _unit_columns(self.dims[v])) for v in self.dims}
        for _ in range(alg.bound):
            layer = self._push(layer)
        if any(s.dim for s in layer.values()):
            raise RelationViolated(f"paths of length {alg.bound} do not act as zero", relation=None)

    def _push(self, spaces: Dict[str, Subspace]) -> Dict[str, Subspace]:
        out = {v: Subspace(self.field, self.dims[v]) for v in self.dims}
        for a in self.algebra.quiver.arrows:
            m = self.maps[a.name]
            for vec in spaces[a.source].basis:
                out[a.target].add(m.apply(vec))
        return out

    # -- basic structure --------------------------------------------------------
    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def arrow_global(self, name: str) -> List[list]:
        a = self.algebra.quiver.arrow(name)
        n = self.dim
        out = [[0] * n for _ in range(n)]
        m = self.maps[name].data
        ro, co = self.offsets[a.target], self.offsets[a.source]
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                if x:
                    out[ro + i][co + j] = x
        return out

    def element_matrix(self, elem: Dict[int, object]) -> List[list]:
        """Global matrix of the action of an algebra element given over the basis."""
        n = self.dim
        out = [[0] * n for _ in range(n)]
        f = self.field
        for k, c in elem.items():
            p = self.algebra.basis[k]
            m = self.path_matrix(p).data
            ro, co = self.offsets[p.target], self.offsets[p.source]
            for i, row in enumerate(m):
                for j, x in enumerate(row):
                    if x:
                        out[ro + i][co + j] = f.norm(out[ro + i][co + j] + c * x)
        return out

    def same_as(self, other: "Representation") -> bool:
        return (
            self.algebra is other.algebra
            and self.dims == other.dims
            and all(self.maps[a] == other.maps[a] for a in self.maps)
        )

    def transport(self, change: Dict[str, Matrix]) -> "Representation":
        """Isomorphic copy ``P_e X_alpha P_s^{-1}`` for invertible per-vertex matrices ``P``."""
        from .exactlin import matrix_inverse

        change = {v: change.get(v) or Matrix.identity(self.dims[v], self.field) for v in self.dims}
        inv = {}
        for v, p in change.items():
            inv[v] = matrix_inverse(p)
            if inv[v] is None:
                raise ValueError(f"change of basis at {v} is singular")
        maps = {}
        for a in self.algebra.quiver.arrows:
            maps[a.name] = change[a.target] @ self.maps[a.name] @ inv[a.source]
        return Representation(self.algebra, self.dims, maps, label=self.label, word=self.word)

    def identity(self) -> "Morphism":
        return Morphism(self, self, {v: Matrix.identity(d, self.field) for v, d in self.dims.items()})

    def zero_to(self, other: "Representation") -> "Morphism":
        return Morphism(self, other, {v: Matrix.zeros(other.dims[v], self.dims[v], self.field) for v in self.dims})

    def with_label(self, label, word=None) -> "Representation":
        r = Representation(self.algebra, self.dims, self.maps, label=label, word=word or self.word, check=False)
        r._local = self._local
        return r

    def __repr__(self):
        tag = self.label or (str(self.word) if self.word is not None else "")
        return f"<Representation {tag} dimvec={self.dim_vector}>"


def _unit_columns(n):
    return [{i: 1} for i in range(n)]


def zero_module(alg: PresentedAlgebra) -> Representation:
    return Representation(alg, {}, {}, label="0")


def simple_module(alg: PresentedAlgebra, v: str) -> Representation:
    return Representation(alg, {v: 1}, {}, label=f"S({v})", word=Path.trivial(v))


def direct_sum(*reps: Representation, label=None) -> Representation:
    if not reps:
        raise ValueError("direct_sum needs at least one summand")
    alg = reps[0].algebra
    for r in reps:
        _same_algebra(r, reps[0])
    dims = {v: sum(r.dims[v] for r in reps) for v in alg.vertices}
    maps = {}
    f = alg.field
    for a in alg.quiver.arrows:
        data = [[0] * dims[a.source] for _ in range(dims[a.target])]
        ro = co = 0
        for r in reps:
            m = r.maps[a.name].data
            for i, row in enumerate(m):
                data[ro + i][co:co + len(row)] = row
            ro += r.dims[a.target]
            co += r.dims[a.source]
        maps[a.name] = Matrix._raw(data, dims[a.target], dims[a.source], f)
    return Representation(alg, dims, maps, label=label, check=False)


def sum_injections(reps: Sequence[Representation], total: Representation) -> List["Morphism"]:
    """Canonical inclusions of the summands into ``total = direct_sum(*reps)``."""
    out = []
    offs = {v: 0 for v in total.dims}
    f = total.field
    for r in reps:
        comps = {}
        for v in total.dims:
            m = [[0] * r.dims[v] for _ in range(total.dims[v])]
            for i in range(r.dims[v]):
                m[offs[v] + i][i] = 1
            comps[v] = Matrix._raw(m, total.dims[v], r.dims[v], f)
            offs[v] += r.dims[v]
        out.append(Morphism(r, total, comps))
    return out


def sum_morphism(parts: Sequence["Morphism"], source: Representation, target: Representation) -> "Morphism":
    """The map ``(f_1, ..., f_k): X_1 + ... + X_k -> Y`` from maps ``f_i: X_i -> Y``."""
    comps = {}
    for v in target.dims:
        rows = [[] for _ in range(target.dims[v])]
        for p in parts:
            for i, row in enumerate(p.comps[v].data):
                rows[i].extend(row)
        comps[v] = Matrix._raw(rows, target.dims[v], source.dims[v], target.field)
    return Morphism(source, target, comps)


def _same_algebra(x: Representation, y: Representation):
    if x.algebra is y.algebra:
        return
    if not x.algebra.same_as(y.algebra):
        raise AlgebraMismatch("modules live over different algebras")


# ---------------------------------------------------------------------------
# Standard modules


def projective_module(alg: PresentedAlgebra, i: str) -> Representation:
    """``A e_i``: paths starting at ``i``, graded by target, arrows act on the left."""
    idx = {v: alg.basis_indices(source=i, target=v) for v in alg.vertices}
    pos = {}
    for v, lst in idx.items():
        for k, b in enumerate(lst):
            pos[b] = k
    maps = {}
    f = alg.field
    for a in alg.quiver.arrows:
        ai = alg.arrow_index(a.name)
        src, dst = idx[a.source], idx[a.target]
        data = [[0] * len(src) for _ in range(len(dst))]
        for col, b in enumerate(src):
            for k, c in alg.mult_basis(ai, b).items():
                data[pos[k]][col] = c
        maps[a.name] = Matrix._raw(data, len(dst), len(src), f)
    dims = {v: len(idx[v]) for v in alg.vertices}
    return Representation(alg, dims, maps, label=f"P({i})", check=False)


def injective_module(alg: PresentedAlgebra, i: str) -> Representation:
    """``D(e_i A)`` with ``(a.phi)(x) = phi(x a)``; the dual of path ``p`` sits at ``s(p)``."""
    idx = {v: alg.basis_indices(source=v, target=i) for v in alg.vertices}
    pos = {}
    for v, lst in idx.items():
        for k, b in enumerate(lst):
            pos[b] = k
    maps = {}
    f = alg.field
    for a in alg.quiver.arrows:
        ai = alg.arrow_index(a.name)
        src, dst = idx[a.source], idx[a.target]
        data = [[0] * len(src) for _ in range(len(dst))]
        for row, qb in enumerate(dst):
            for k, c in alg.mult_basis(qb, ai).items():
                data[row][pos[k]] = c
        maps[a.name] = Matrix._raw(data, len(dst), len(src), f)
    dims = {v: len(idx[v]) for v in alg.vertices}
    return Representation(alg, dims, maps, label=f"I({i})", check=False)


def free_module(alg: PresentedAlgebra) -> Representation:
    return direct_sum(*[projective_module(alg, v) for v in alg.vertices], label="A")


def dual_module(alg: PresentedAlgebra) -> Representation:
    return direct_sum(*[injective_module(alg, v) for v in alg.vertices], label="A*")


# ---------------------------------------------------------------------------
# Morphisms


class Morphism:
    """An intertwiner ``X -> Y`` given by one matrix per vertex."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Representation, target: Representation, comps: Dict[str, Matrix]):
        self.source = source
        self.target = target
        self.comps = comps

    def check(self) -> bool:
        for a in self.source.algebra.quiver.arrows:
            lhs = self.comps[a.target] @ self.source.maps[a.name]
            rhs = self.target.maps[a.name] @ self.comps[a.source]
            if lhs != rhs:
                return False
        return True

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self o other``."""
        return Morphism(other.source, self.target, {v: self.comps[v] @ other.comps[v] for v in self.comps})

    def __add__(self, other):
        return Morphism(self.source, self.target, {v: self.comps[v] + other.comps[v] for v in self.comps})

    def __sub__(self, other):
        return Morphism(self.source, self.target, {v: self.comps[v] - other.comps[v] for v in self.comps})

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, {v: m.scale(c) for v, m in self.comps.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())

    def rank(self) -> int:
        total = 0
        for m in self.comps.values():
            ech = EchelonForm(m.field, m.cols)
            for row in m.data:
                ech.add(to_sparse(row))
            total += len(ech)
        return total

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.rank() == self.source.dim

    def global_matrix(self) -> List[list]:
        x, y = self.source, self.target
        out = [[0] * x.dim for _ in range(y.dim)]
        for v, m in self.comps.items():
            ro, co = y.offsets[v], x.offsets[v]
            for i, row in enumerate(m.data):
                out[ro + i][co:co + len(row)] = row
        return out

    def power(self, k: int) -> "Morphism":
        out = self.source.identity()
        for _ in range(k):
            out = self @ out
        return out

    def __repr__(self):
        return f"<Morphism {self.source!r} -> {self.target!r}>"


class HomBasis:
    """Basis of ``Hom_A(X, Y)`` read off a reduced kernel.

    Coordinates of a morphism in this basis are its entries at ``free_pos``.
    """

    def __init__(self, source, target, basis: List[Morphism], free_pos: List[Tuple[str, int, int]]):
        self.source = source
        self.target = target
        self.basis = basis
        self.free_pos = free_pos

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, k):
        return self.basis[k]

    def coords(self, m: Morphism) -> list:
        return [m.comps[v].data[i][j] for v, i, j in self.free_pos]

    def combine(self, coeffs: Sequence) -> Morphism:
        x, y = self.source, self.target
        f = x.field
        comps = {v: [[0] * x.dims[v] for _ in range(y.dims[v])] for v in x.dims}
        for c, m in zip(coeffs, self.basis):
            if not c:
                continue
            for v, mat in m.comps.items():
                tgt = comps[v]
                for i, row in enumerate(mat.data):
                    trow = tgt[i]
                    for j, val in enumerate(row):
                        if val:
                            trow[j] = f.norm(trow[j] + c * val)
        return Morphism(x, y, {v: Matrix._raw(d, y.dims[v], x.dims[v], f) for v, d in comps.items()})


def hom_basis(x: Representation, y: Representation) -> HomBasis:
    """Solve the intertwiner equations ``g_e X_alpha = Y_alpha g_s`` for all arrows."""
    _same_algebra(x, y)
    hit = x._hom_cache.get(id(y))
    if hit is not None and hit[0] is y:
        return hit[1]
    f = x.field
    verts = x.algebra.vertices
    off = {}
    n = 0
    for v in verts:
        off[v] = n
        n += y.dims[v] * x.dims[v]
    ech = EchelonForm(f, n)
    for a in x.algebra.quiver.arrows:
        s, e = a.source, a.target
        xs, xe, ys = x.dims[s], x.dims[e], y.dims[s]
        ye = y.dims[e]
        if not ye or not xs:
            continue
        xa = x.maps[a.name].data
        ya = y.maps[a.name].data
        xcols = [[(k, xa[k][j]) for k in range(xe) if xa[k][j]] for j in range(xs)]
        yrows = [[(k, v) for k, v in enumerate(ya[i]) if v] for i in range(ye)]
        oe, os_ = off[e], off[s]
        for i in range(ye):
            for j in range(xs):
                row: Dict[int, object] = {}
                for k, val in xcols[j]:
                    c = oe + i * xe + k
                    row[c] = row.get(c, 0) + val
                for k, val in yrows[i]:
                    c = os_ + k * xs + j
                    row[c] = row.get(c, 0) - val
                row = {c: f.norm(v) for c, v in row.items() if f.norm(v)}
                if row:
                    ech.add(row)
    locate = []
    for v in verts:
        for i in range(y.dims[v]):
            for j in range(x.dims[v]):
                locate.append((v, i, j))
    basis = []
    free_pos = []
    for vec in ech.kernel():
        comps = {v: [[0] * x.dims[v] for _ in range(y.dims[v])] for v in verts}
        fc = None
        for c, val in vec.items():
            v, i, j = locate[c]
            comps[v][i][j] = val
            if c not in ech.rows:
                fc = c
        free_pos.append(locate[fc])
        basis.append(Morphism(x, y, {v: Matrix._raw(d, y.dims[v], x.dims[v], f) for v, d in comps.items()}))
    hb = HomBasis(x, y, basis, free_pos)
    x._hom_cache[id(y)] = (y, hb)
    return hb


def hom_dim(x: Representation, y: Representation) -> int:
    return hom_basis(x, y).dim


# ---------------------------------------------------------------------------
# Submodules, quotients, kernels, images


def subrepresentation(x: Representation, spaces: Dict[str, Subspace], check=True):
    """The submodule with vertex components ``spaces`` and its inclusion."""
    f = x.field
    maps = {}
    for a in x.algebra.quiver.arrows:
        src, dst = spaces[a.source], spaces[a.target]
        m = x.maps[a.name]
        cols = []
        for vec in src.basis:
            w = m.apply(vec)
            if check and not dst.contains(w):
                raise ValueError(f"subspace is not stable under arrow {a.name}")
            cols.append(dst.coords(w))
        data = [[cols[j][i] for j in range(len(cols))] for i in range(dst.dim)]
        maps[a.name] = Matrix._raw(data, dst.dim, src.dim, f)
    dims = {v: spaces[v].dim for v in x.dims}
    sub = Representation(x.algebra, dims, maps, check=False)
    comps = {}
    for v in x.dims:
        b = spaces[v].basis
        data = [[b[j][i] for j in range(len(b))] for i in range(x.dims[v])]
        comps[v] = Matrix._raw(data, x.dims[v], len(b), f)
    return sub, Morphism(sub, x, comps)


def quotient_representation(x: Representation, spaces: Dict[str, Subspace]):
    """The quotient ``X / U`` for a submodule given by vertex components, and the projection."""
    f = x.field
    maps = {}
    for a in x.algebra.quiver.arrows:
        src, dst = spaces[a.source], spaces[a.target]
        m = x.maps[a.name].data
        comp = src.complement
        cols = []
        for c in comp:
            col = {i: m[i][c] for i in range(len(m)) if m[i][c]}
            cols.append(dst.quotient_coords(col))
        rows = dst.codim
        data = [[cols[j][i] for j in range(len(cols))] for i in range(rows)]
        maps[a.name] = Matrix._raw(data, rows, len(comp), f)
    dims = {v: spaces[v].codim for v in x.dims}
    quo = Representation(x.algebra, dims, maps, check=False)
    comps = {}
    for v in x.dims:
        s = spaces[v]
        cols = [s.quotient_coords({j: 1}) for j in range(x.dims[v])]
        data = [[cols[j][i] for j in range(x.dims[v])] for i in range(s.codim)]
        comps[v] = Matrix._raw(data, s.codim, x.dims[v], f)
    return quo, Morphism(x, quo, comps)


def _kernel_space(m: Matrix) -> Subspace:
    ech = EchelonForm(m.field, m.cols)
    for row in m.data:
        ech.add(to_sparse(row))
    return Subspace(m.field, m.cols, ech.kernel())


def _image_space(m: Matrix) -> Subspace:
    s = Subspace(m.field, m.rows)
    for j in range(m.cols):
        s.add({i: m.data[i][j] for i in range(m.rows) if m.data[i][j]})
    return s


@dataclass
class KernelImageCokernel:
    kernel: Representation
    kernel_inclusion: Morphism
    image: Representation
    image_inclusion: Morphism
    cokernel: Representation
    cokernel_projection: Morphism


def hom_image_kernel_cokernel(f: Morphism) -> KernelImageCokernel:
    x, y = f.source, f.target
    ker = {v: _kernel_space(m) for v, m in f.comps.items()}
    img = {v: _image_space(m) for v, m in f.comps.items()}
    k, ki = subrepresentation(x, ker)
    i, ii = subrepresentation(y, img)
    c, cp = quotient_representation(y, img)
    return KernelImageCokernel(k, ki, i, ii, c, cp)


def kernel_of(f: Morphism):
    return subrepresentation(f.source, {v: _kernel_space(m) for v, m in f.comps.items()})


def image_of(f: Morphism):
    return subrepresentation(f.target, {v: _image_space(m) for v, m in f.comps.items()})


def cokernel_of(f: Morphism):
    return quotient_representation(f.target, {v: _image_space(m) for v, m in f.comps.items()})


# ---------------------------------------------------------------------------
# Radical, socle, top


def radical_spaces(x: Representation) -> Dict[str, Subspace]:
    out = {v: Subspace(x.field, x.dims[v]) for v in x.dims}
    for a in x.algebra.quiver.arrows:
        m = x.maps[a.name].data
        for j in range(x.dims[a.source]):
            out[a.target].add({i: m[i][j] for i in range(len(m)) if m[i][j]})
    return out


def socle_spaces(x: Representation) -> Dict[str, Subspace]:
    out = {}
    for v in x.dims:
        ech = EchelonForm(x.field, x.dims[v])
        for a in x.algebra.quiver.arrows:
            if a.source == v:
                for row in x.maps[a.name].data:
                    ech.add(to_sparse(row))
        out[v] = Subspace(x.field, x.dims[v], ech.kernel())
    return out


@dataclass
class Layers:
    radical: Representation
    socle: Representation
    top: Representation
    is_semisimple: bool


def layers(x: Representation) -> Layers:
    rad = radical_spaces(x)
    r, _ = subrepresentation(x, rad)
    s, _ = subrepresentation(x, socle_spaces(x))
    t, _ = quotient_representation(x, rad)
    return Layers(r, s, t, r.dim == 0)


def is_semisimple(x: Representation) -> bool:
    return all(m.is_zero() for m in x.maps.values())


def top_dims(x: Representation) -> Dict[str, int]:
    return {v: s.codim for v, s in radical_spaces(x).items()}


def socle_dims(x: Representation) -> Dict[str, int]:
    return {v: s.dim for v, s in socle_spaces(x).items()}


# ---------------------------------------------------------------------------
# Endomorphism rings


@dataclass
class EndRing:
    hom: HomBasis
    table: List[List[Dict[int, object]]]
    radical: List[list]

    @property
    def dim(self) -> int:
        return self.hom.dim

    @property
    def top_dim(self) -> int:
        return self.hom.dim - len(self.radical)


def _check_characteristic(field, n: int):
    p = getattr(field, "characteristic", 0)
    if p and p <= n:
        raise CharacteristicTooSmall(
            f"radical by trace form needs characteristic 0 or > {n}; field has characteristic {p}"
        )


def _trace_product(a: Morphism, b: Morphism) -> object:
    total = 0
    for v, am in a.comps.items():
        bm = b.comps[v].data
        for i, row in enumerate(am.data):
            for j, val in enumerate(row):
                if val:
                    y = bm[j][i]
                    if y:
                        total += val * y
    return total


def endomorphism_radical(x: Representation, hom: Optional[HomBasis] = None) -> List[list]:
    """Radical of ``End(X)`` as coordinate vectors: kernel of ``(f, g) -> tr_X(f g)``.

    In characteristic 0 (or larger than ``dim End`` and ``dim X``) this form
    vanishes exactly on the nilpotent ideal.
    """
    hom = hom or hom_basis(x, x)
    d = hom.dim
    f = x.field
    _check_characteristic(f, max(d, x.dim))
    ech = EchelonForm(f, d)
    for a in range(d):
        row = {}
        for b in range(d):
            t = f.norm(_trace_product(hom[a], hom[b]))
            if t:
                row[b] = t
        if row:
            ech.add(row)
    return [to_dense(k, d) for k in ech.kernel()]


def end_ring_with_radical(x: Representation) -> EndRing:
    hom = hom_basis(x, x)
    table = [[_sparse(hom.coords(hom[a] @ hom[b])) for b in range(hom.dim)] for a in range(hom.dim)]
    return EndRing(hom, table, endomorphism_radical(x, hom))


def _sparse(vec):
    return {i: v for i, v in enumerate(vec) if v}


def is_local(x: Representation) -> bool:
    """True iff ``End(X)/rad`` is one-dimensional (so ``X`` is indecomposable)."""
    if x._local is None:
        if x.dim == 0:
            x._local = False
        else:
            hom = hom_basis(x, x)
            x._local = hom.dim == 1 or hom.dim - len(endomorphism_radical(x, hom)) == 1
    return x._local


# ---------------------------------------------------------------------------
# Decomposition


def _minimal_polynomial(phi: Morphism) -> list:
    """Coefficients (constant term first, monic) of the minimal polynomial of ``phi``."""
    f = phi.source.field
    x = phi.source
    size = sum(d * d for d in x.dims.values())
    powers = []
    cur = x.identity()
    while True:
        flat = {}
        pos = 0
        for v in x.dims:
            for row in cur.comps[v].data:
                for val in row:
                    if val:
                        flat[pos] = val
                    pos += 1
        powers.append(flat)
        dep = _dependency(f, powers, size)
        if dep is not None:
            return dep
        cur = phi @ cur


def _dependency(field, vecs, size):
    # solve sum c_i v_i = -v_last with c over earlier powers
    n = len(vecs) - 1
    ech = EchelonForm(field, size + n + 1)
    for i, v in enumerate(vecs[:-1]):
        row = dict(v)
        row[size + i] = 1
        ech.add(row)
    res = ech.reduce(vecs[-1])
    if any(c < size for c in res):
        return None
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for c, val in res.items():
        coeffs[c - size] = field.norm(-val)
    return coeffs


def _factor(coeffs: list, field) -> List[Tuple[list, int]]:
    """Irreducible factors (constant term first) of a polynomial over ``field``."""
    import sympy

    t = sympy.Symbol("t")
    p = field.characteristic
    if p == 0:
        poly = sympy.Poly([sympy.Rational(str(c)) for c in reversed(coeffs)], t, domain="QQ")
    else:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], t, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for fac, mult in facs:
        cs = []
        for c in reversed(fac.all_coeffs()):
            if p == 0:
                c = sympy.Rational(c)
                cs.append(field(Fraction(int(c.p), int(c.q))))
            else:
                cs.append(field(int(c)))
        out.append((cs, mult))
    return out


def _poly_at(coeffs: list, phi: Morphism) -> Morphism:
    x = phi.source
    acc = x.zero_to(x)
    for c in reversed(coeffs):
        acc = phi @ acc
        if c:
            acc = acc + x.identity().scale(c)
    return acc


def _fitting_split(psi: Morphism):
    """Split ``X = ker psi^n + im psi^n`` when both parts are nonzero."""
    x = psi.source
    n = max(x.dims.values()) if x.dims else 0
    p = psi.power(max(n, 1))
    r = p.rank()
    if r == 0 or r == x.dim:
        return None
    k, _ = kernel_of(p)
    i, _ = image_of(p)
    return k, i


def split_once(x: Representation, seed: int = 0, trials: int = 30):
    """Find a nontrivial direct sum decomposition ``X = U + V`` or return ``None``."""
    hom = hom_basis(x, x)
    if hom.dim <= 1:
        return None
    rad = endomorphism_radical(x, hom)
    if hom.dim - len(rad) == 1:
        x._local = True
        return None
    rng = random.Random(seed)
    f = x.field
    cands: List[Morphism] = list(hom.basis)
    d = hom.dim
    for _ in range(trials):
        cands.append(hom.combine([f.random_element(rng, 3) for _ in range(d)]))
    for phi in cands:
        if phi.is_zero():
            continue
        sp = _fitting_split(phi)
        if sp:
            return sp
        mp = _minimal_polynomial(phi)
        facs = _factor(mp, f)
        if len(facs) < 2:
            continue
        for cs, _ in facs:
            sp = _fitting_split(_poly_at(cs, phi))
            if sp:
                return sp
    log.warning("no splitting idempotent found for %r; treating it as indecomposable", x)
    return None


def indecomposable_summands(x: Representation, seed: int = 0) -> List[Representation]:
    if x.dim == 0:
        return []
    sp = split_once(x, seed)
    if sp is None:
        return [x]
    u, v = sp
    return indecomposable_summands(u, seed) + indecomposable_summands(v, seed)


def decompose(x: Representation, seed: int = 0) -> List[Tuple[Representation, int]]:
    """Indecomposable summands of ``X`` up to isomorphism, with multiplicities."""
    groups: List[List] = []
    for s in indecomposable_summands(x, seed):
        for g in groups:
            if is_isomorphic(g[0], s):
                g[1] += 1
                break
        else:
            groups.append([s, 1])
    return [(g[0], g[1]) for g in groups]


def is_indecomposable(x: Representation) -> bool:
    if x.dim == 0:
        return False
    return is_local(x) or split_once(x) is None


# ---------------------------------------------------------------------------
# Isomorphism


@dataclass
class IsoResult:
    isomorphic: bool
    certificate: Optional[Morphism] = None
    exact: bool = True

    def __bool__(self):
        return self.isomorphic


def _local_iso(x: Representation, y: Representation) -> IsoResult:
    # x has local End: x = y iff some g_a o f_b is invertible
    fwd = hom_basis(x, y)
    bwd = hom_basis(y, x)
    for fb in fwd:
        if fb.rank() != x.dim:
            continue
        for ga in bwd:
            if (ga @ fb).is_iso():
                return IsoResult(True, fb, True)
    return IsoResult(False, None, True)


def is_isomorphic(x: Representation, y: Representation, seed: int = 0) -> IsoResult:
    """Decide ``X = Y`` and produce an invertible intertwiner when true.

    Exact for serial modules (word comparison) and whenever one side has a
    local endomorphism ring; otherwise randomized with ``exact=False`` on a
    negative answer.
    """
    _same_algebra(x, y)
    if x.dim_vector != y.dim_vector:
        return IsoResult(False)
    if x.dim == 0:
        return IsoResult(True, x.zero_to(y))
    if x.same_as(y):
        return IsoResult(True, Morphism(x, y, {v: Matrix.identity(d, x.field) for v, d in x.dims.items()}))
    if x.word is not None and y.word is not None:
        if x.word != y.word:
            return IsoResult(False)
        res = _local_iso(x, y)
        if not res.isomorphic:
            raise AssertionError("serial modules with equal words must be isomorphic")
        return res
    dxy, dyx = hom_dim(x, y), hom_dim(y, x)
    if dxy != dyx or dxy == 0:
        return IsoResult(False)
    if hom_dim(x, x) != dxy or hom_dim(y, y) != dxy:
        return IsoResult(False)
    if x._local or y._local or is_local(x):
        return _local_iso(x, y)
    hom = hom_basis(x, y)
    rng = random.Random(seed)
    f = x.field
    for trial in range(20):
        bound = 2 + 2 * trial
        g = hom.combine([f.random_element(rng, bound) for _ in range(hom.dim)])
        if g.is_iso():
            return IsoResult(True, g)
    return IsoResult(False, None, exact=False)
