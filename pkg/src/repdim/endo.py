"""The endomorphism algebra of a catalog, its simple modules' projective
resolutions, and quasi-hereditary certificates.

A module over ``G = End_A(M_1 + ... + M_n)`` is handled as a contravariant
functor on the catalog: a space ``T_i`` per summand and, for each basis map
``phi: M_i -> M_j``, a linear map ``T_j -> T_i``.  The indecomposable
projective at ``M_k`` is ``Hom_A(-, M_k)``.  Everything is expressed in the
coordinates of the Hom bases, so composition is a table of structure
constants and no module is ever materialised as matrices over ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CapExceeded, NotQuasiHereditaryForOrder, VerificationFailed
from .exactlin import EchelonForm, Subspace, to_sparse
from .rep import HomBasis, Representation, _check_characteristic, endomorphism_radical, hom_basis

SparseVec = Dict[int, object]


class EndoAlgebra:
    """``End_A(M)`` for a list of pairwise non-isomorphic modules with local endomorphism rings."""

    def __init__(self, modules: Sequence[Representation], labels: Optional[Sequence[str]] = None):
        self.modules = list(modules)
        self.n = len(self.modules)
        self.labels = list(labels) if labels is not None else [
            m.label or f"M{i}" for i, m in enumerate(self.modules)
        ]
        self.field = self.modules[0].field if self.modules else None
        n = self.n
        self.H: List[List[HomBasis]] = [[hom_basis(self.modules[i], self.modules[j]) for j in range(n)] for i in range(n)]
        self.hd = [[self.H[i][j].dim for j in range(n)] for i in range(n)]
        if self.field is not None:
            _check_characteristic(self.field, self.dim)
        self._comp: Dict[Tuple[int, int, int], List[List[SparseVec]]] = {}
        self.rad: List[List[List[SparseVec]]] = [[[] for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j:
                    self.rad[i][j] = [{b: 1} for b in range(self.hd[i][j])]
            r = [to_sparse(v) for v in endomorphism_radical(self.modules[i], self.H[i][i])]
            if self.hd[i][i] - len(r) != 1:
                raise VerificationFailed(f"summand {self.labels[i]} does not have a local endomorphism ring")
            self.rad[i][i] = r

    @property
    def dim(self) -> int:
        return sum(sum(row) for row in self.hd)

    @property
    def radical_dim(self) -> int:
        return sum(len(self.rad[i][j]) for i in range(self.n) for j in range(self.n))

    def comp(self, i: int, j: int, k: int) -> List[List[SparseVec]]:
        """``comp(i,j,k)[b][a]``: coordinates of ``H[j][k][a] o H[i][j][b]`` in ``H[i][k]``."""
        key = (i, j, k)
        hit = self._comp.get(key)
        if hit is not None:
            return hit
        f = self.field
        hij, hjk, hik = self.H[i][j], self.H[j][k], self.H[i][k]
        fp = hik.free_pos
        out = []
        for phi in hij.basis:
            row = []
            pc = phi.comps
            for psi in hjk.basis:
                qc = psi.comps
                vec = {}
                for t, (v, r, c) in enumerate(fp):
                    prow = qc[v].data[r]
                    pm = pc[v].data
                    s = 0
                    for m, x in enumerate(prow):
                        if x:
                            y = pm[m][c]
                            if y:
                                s += x * y
                    if s:
                        s = f.norm(s)
                        if s:
                            vec[t] = s
                row.append(vec)
            out.append(row)
        self._comp[key] = out
        return out

    def structure_check(self, trials: int = 50, seed: int = 0) -> bool:
        """Associativity of the composition table on random basis triples."""
        import random

        rng = random.Random(seed)
        n = self.n
        if not n:
            return True
        f = self.field
        for _ in range(trials):
            i, j, k, l = (rng.randrange(n) for _ in range(4))
            if not (self.hd[i][j] and self.hd[j][k] and self.hd[k][l]):
                continue
            b = rng.randrange(self.hd[i][j])
            a = rng.randrange(self.hd[j][k])
            c = rng.randrange(self.hd[k][l])
            # (c o a) o b versus c o (a o b)
            ca = self.comp(j, k, l)[a][c]
            lhs = _combine(f, [(x, self.comp(i, j, l)[b][t]) for t, x in ca.items()])
            ab = self.comp(i, j, k)[b][a]
            rhs = _combine(f, [(x, self.comp(i, k, l)[t][c]) for t, x in ab.items()])
            if lhs != rhs:
                return False
        return True


def _combine(f, terms) -> SparseVec:
    out: SparseVec = {}
    for c, vec in terms:
        for k, v in vec.items():
            nv = f.norm(out.get(k, 0) + c * v)
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def build_endo(catalog) -> EndoAlgebra:
    """``End_A(M)`` from a :class:`SummandCatalog` or a list of modules."""
    if hasattr(catalog, "entries"):
        return EndoAlgebra(catalog.modules, catalog.labels)
    return EndoAlgebra(list(catalog))


# ---------------------------------------------------------------------------
# Submodules of direct sums of projectives


class GammaModule:
    """A submodule of ``P_{k_1} + ... + P_{k_m}`` given by its components.

    ``copies`` lists the summands ``k_c``; the ambient space at ``i`` is the
    concatenation of ``H[i][k_c]`` over the copies.
    """

    def __init__(self, gamma: EndoAlgebra, copies: List[int], spaces: Optional[List[Subspace]] = None):
        self.gamma = gamma
        self.copies = copies
        n = gamma.n
        self.offsets = []
        self.ambient = []
        for i in range(n):
            offs, o = [], 0
            for k in copies:
                offs.append(o)
                o += gamma.hd[i][k]
            self.offsets.append(offs)
            self.ambient.append(o)
        if spaces is None:
            spaces = [Subspace(gamma.field, self.ambient[i], [{t: 1} for t in range(self.ambient[i])]) for i in range(n)]
        self.spaces = spaces

    @property
    def dims(self) -> List[int]:
        return [s.dim for s in self.spaces]

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def act(self, i: int, j: int, phi: SparseVec, vec: SparseVec) -> SparseVec:
        """Action of ``phi`` in ``Hom(M_i, M_j)`` (coordinates) sending component ``j`` to ``i``."""
        g = self.gamma
        f = g.field
        out: SparseVec = {}
        offj, offi = self.offsets[j], self.offsets[i]
        for c, k in enumerate(self.copies):
            dj = g.hd[j][k]
            if not dj or not g.hd[i][k]:
                continue
            oj, oi = offj[c], offi[c]
            part = {t - oj: x for t, x in vec.items() if oj <= t < oj + dj}
            if not part:
                continue
            table = g.comp(i, j, k)
            for b, cb in phi.items():
                row = table[b]
                for a, x in part.items():
                    for t, y in row[a].items():
                        key = oi + t
                        nv = f.norm(out.get(key, 0) + cb * x * y)
                        if nv:
                            out[key] = nv
                        else:
                            out.pop(key, None)
        return out

    def radical_spaces(self) -> List[Subspace]:
        g = self.gamma
        n = g.n
        out = [Subspace(g.field, self.ambient[i]) for i in range(n)]
        for j in range(n):
            basis = self.spaces[j].sparse_basis()
            if not basis:
                continue
            for i in range(n):
                for phi in g.rad[i][j]:
                    for u in basis:
                        w = self.act(i, j, phi, u)
                        if w:
                            out[i].add(w)
        return out

    def top_generators(self) -> List[Tuple[int, SparseVec]]:
        rad = self.radical_spaces()
        gens = []
        for i in range(self.gamma.n):
            r = rad[i].copy()
            for u in self.spaces[i].sparse_basis():
                if r.add(u):
                    gens.append((i, u))
        return gens

    def syzygy(self) -> Tuple[List[int], "GammaModule"]:
        """Projective cover ``P -> self`` (by top generators) and its kernel."""
        g = self.gamma
        n = g.n
        gens = self.top_generators()
        cover = GammaModule(g, [i for i, _ in gens])
        spaces = []
        for j in range(n):
            ech = EchelonForm(g.field, cover.ambient[j])
            # columns of the cover map at j; kernel = null space of the column matrix
            cols = []
            for c, (i, u) in enumerate(gens):
                for a in range(g.hd[j][i]):
                    cols.append(self.act(j, i, {a: 1}, u))
            rows: Dict[int, SparseVec] = {}
            for col, vec in enumerate(cols):
                for r, x in vec.items():
                    rows.setdefault(r, {})[col] = x
            for r in rows.values():
                ech.add(r)
            if len(ech) != self.spaces[j].dim:
                raise VerificationFailed("projective cover is not surjective")
            spaces.append(Subspace(g.field, cover.ambient[j], ech.kernel()))
        return [i for i, _ in gens], GammaModule(g, cover.copies, spaces)


def radical_of_projective(gamma: EndoAlgebra, k: int) -> GammaModule:
    spaces = []
    for i in range(gamma.n):
        spaces.append(Subspace(gamma.field, gamma.hd[i][k], gamma.rad[i][k]))
    return GammaModule(gamma, [k], spaces)


@dataclass
class Resolution:
    label: str
    projdim: int
    terms: List[List[int]]
    syzygy_dims: List[int]


def projdim_simple(gamma: EndoAlgebra, k: int, cap: int = 10) -> Resolution:
    """Minimal projective resolution of the simple top of ``Hom(-, M_k)``."""
    terms = [[k]]
    omega = radical_of_projective(gamma, k)
    dims = [omega.dim]
    depth = 0
    while omega.dim:
        depth += 1
        if depth > cap:
            raise CapExceeded(
                f"resolution of L({gamma.labels[k]}) longer than {cap}",
                partial=Resolution(gamma.labels[k], -1, terms, dims),
            )
        copies, omega = omega.syzygy()
        terms.append(copies)
        dims.append(omega.dim)
    return Resolution(gamma.labels[k], depth, terms, dims)


@dataclass
class GldimReport:
    gldim: int
    projdims: Dict[str, int]
    resolutions: List[Resolution]


def gldim(gamma: EndoAlgebra, cap: int = 10) -> GldimReport:
    res = [projdim_simple(gamma, k, cap) for k in range(gamma.n)]
    pd = {r.label: r.projdim for r in res}
    return GldimReport(max(pd.values(), default=0), pd, res)


# ---------------------------------------------------------------------------
# Quasi-hereditary structure


@dataclass
class QHOrder:
    """Strict partial order on catalog indices: ``less[i]`` is the set of ``j`` with ``i < j``."""

    labels: List[str]
    less: List[set]

    def lt(self, i: int, j: int) -> bool:
        return j in self.less[i]

    def maximal(self, among: Sequence[int]) -> List[int]:
        s = set(among)
        return [i for i in among if not (self.less[i] & s)]

    def is_strict_partial_order(self) -> bool:
        n = len(self.less)
        for i in range(n):
            if i in self.less[i]:
                return False
            for j in self.less[i]:
                if not self.less[j] <= self.less[i]:
                    return False
        return True

    def pairs(self) -> List[Tuple[str, str]]:
        return [(self.labels[i], self.labels[j]) for i in range(len(self.less)) for j in sorted(self.less[i])]


def qh_order(catalog) -> QHOrder:
    """Reverse ``B``-length on ``FN`` labels; every other label lies below all ``FN`` labels."""
    entries = catalog.entries
    n = len(entries)
    less = [set() for _ in range(n)]
    for i, x in enumerate(entries):
        for j, y in enumerate(entries):
            if i == j or not y.is_fn:
                continue
            if not x.is_fn or x.fn_length > y.fn_length:
                less[i].add(j)
    return QHOrder([e.label for e in entries], less)


@dataclass
class StandardModule:
    label: str
    dims: List[int]
    projective_dim: int
    multiplicity: int


def _ideal_through(gamma: EndoAlgebra, i: int, j: int, via: Sequence[int]) -> Subspace:
    """Maps ``M_i -> M_j`` in the span of compositions through summands in ``via``."""
    s = Subspace(gamma.field, gamma.hd[i][j])
    vs = set(via)
    if i in vs or j in vs:
        for t in range(gamma.hd[i][j]):
            s.add({t: 1})
        return s
    for y in via:
        table = gamma.comp(i, y, j)
        for row in table:
            for vec in row:
                if vec:
                    s.add(vec)
                    if s.codim == 0:
                        return s
    return s


def standard_modules(gamma: EndoAlgebra, order: QHOrder) -> List[StandardModule]:
    """``Delta(X) = P(X)/U(X)`` with ``U(X)`` the maps ``M -> X`` factoring through some ``Y > X``."""
    out = []
    for x in range(gamma.n):
        bigger = sorted(order.less[x])
        dims = []
        for i in range(gamma.n):
            u = _ideal_through(gamma, i, x, bigger) if bigger else Subspace(gamma.field, gamma.hd[i][x])
            dims.append(gamma.hd[i][x] - u.dim)
        out.append(StandardModule(gamma.labels[x], dims, sum(gamma.hd[i][x] for i in range(gamma.n)), dims[x]))
    return out


@dataclass
class HeredityStage:
    layer: List[str]
    ideal_dim_before: int
    ideal_dim_after: int
    tensor_dim: int


@dataclass
class HeredityCertificate:
    stages: List[HeredityStage]
    refined: bool
    linear_order: List[str] = dc_field(default_factory=list)

    def as_dict(self):
        return {
            "stages": [
                {
                    "layer": s.layer,
                    "ideal_dim_before": s.ideal_dim_before,
                    "ideal_dim_after": s.ideal_dim_after,
                    "tensor_dim": s.tensor_dim,
                }
                for s in self.stages
            ],
            "refined": self.refined,
        }


class _IdealTracker:
    """The ideal of ``G`` generated by the idempotents of processed summands."""

    def __init__(self, gamma: EndoAlgebra):
        self.g = gamma
        n = gamma.n
        self.done: List[int] = []
        self.space = [[Subspace(gamma.field, gamma.hd[i][j]) for j in range(n)] for i in range(n)]

    def dim(self) -> int:
        return sum(s.dim for row in self.space for s in row)

    def quotient_dim(self, i: int, j: int) -> int:
        return self.space[i][j].codim

    def radical_inside(self, i: int, j: int) -> bool:
        s = self.space[i][j]
        return all(s.contains(v) for v in self.g.rad[i][j])

    def extended(self, layer: Sequence[int]) -> List[List[Subspace]]:
        g = self.g
        n = g.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                s = self.space[i][j].copy()
                if s.codim:
                    if i in layer or j in layer:
                        for t in range(g.hd[i][j]):
                            s.add({t: 1})
                    else:
                        for y in layer:
                            for r in g.comp(i, y, j):
                                for vec in r:
                                    if vec and s.codim:
                                        s.add(vec)
                row.append(s)
            out.append(row)
        return out

    def check_layer(self, layer: Sequence[int]):
        """Return ``(None, stage)`` when the layer gives a heredity ideal, else ``(condition, None)``."""
        g = self.g
        n = g.n
        for x in layer:
            for y in layer:
                if not self.radical_inside(x, y):
                    return "a", None
        tensor = 0
        for x in layer:
            left = sum(self.quotient_dim(i, x) for i in range(n))
            right = sum(self.quotient_dim(x, j) for j in range(n))
            tensor += left * right
        new = self.extended(layer)
        before = self.dim()
        after = sum(s.dim for row in new for s in row)
        if after - before != tensor:
            return "b", None
        return None, (new, HeredityStage([g.labels[x] for x in layer], before, after, tensor))

    def commit(self, layer, new):
        self.space = new
        self.done.extend(layer)


def heredity_chain_verify(gamma: EndoAlgebra, order: QHOrder) -> HeredityCertificate:
    """Verify a chain of heredity ideals processing labels from maximal downward.

    Each stage takes all maximal remaining labels as one layer; if a layer
    fails, labels are instead taken one at a time along a linear refinement
    (first passing maximal label).

    Raises:
        NotQuasiHereditaryForOrder: with the failing stage and condition.
    """
    remaining = list(range(gamma.n))
    tracker = _IdealTracker(gamma)
    stages = []
    refined = False
    linear = []
    stage_no = 0
    while remaining:
        stage_no += 1
        layer = order.maximal(remaining)
        cond, res = tracker.check_layer(layer)
        if cond is not None:
            refined = True
            layer = None
            for x in order.maximal(remaining):
                c1, r1 = tracker.check_layer([x])
                if c1 is None:
                    layer, res = [x], r1
                    break
                cond = c1
            if layer is None:
                raise NotQuasiHereditaryForOrder(
                    f"stage {stage_no}: condition ({cond}) fails for every maximal label among "
                    f"{[gamma.labels[i] for i in order.maximal(remaining)]}",
                    stage=stage_no,
                    condition=cond,
                )
        new, stage = res
        tracker.commit(layer, new)
        stages.append(stage)
        linear.extend(gamma.labels[x] for x in layer)
        remaining = [i for i in remaining if i not in layer]
    if tracker.dim() != gamma.dim:
        raise VerificationFailed("heredity chain does not exhaust the algebra")
    return HeredityCertificate(stages, refined, linear)
