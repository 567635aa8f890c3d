"""Quivers, paths, relations and presented algebras kQ/I.

Composition follows the convention ``alpha_1 alpha_2 ... alpha_n`` with
``s(alpha_i) == e(alpha_{i+1})``: the rightmost arrow acts first, so the
product ``p * q`` of two paths is defined iff ``p.source == q.target``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import AdmissibilityViolated, InvalidRelation, UnknownArrow
from .exactlin import QQ, EchelonForm


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    """Finite quiver with labelled vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Iterable):
        self.vertices: Tuple[str, ...] = tuple(vertices)
        arrs = []
        for a in arrows:
            arrs.append(a if isinstance(a, Arrow) else Arrow(*a))
        self.arrows: Tuple[Arrow, ...] = tuple(arrs)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex label")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow label")
        if set(names) & set(self.vertices):
            raise ValueError("arrow and vertex labels must be distinct")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an endpoint outside the vertex set")
        self._by_name = {a.name: a for a in self.arrows}
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownArrow(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def starting_at(self, v: str) -> List[str]:
        """S(v): arrows with source v."""
        return [a.name for a in self.arrows if a.source == v]

    def ending_at(self, v: str) -> List[str]:
        """E(v): arrows with target v."""
        return [a.name for a in self.arrows if a.target == v]

    def path(self, *names: str) -> "Path":
        """The path ``names[0] * names[1] * ...`` (rightmost arrow first)."""
        if not names:
            raise ValueError("use Path.trivial for paths of length zero")
        arrs = [self.arrow(n) for n in names]
        for left, right in zip(arrs, arrs[1:]):
            if left.source != right.target:
                raise InvalidRelation(
                    f"{left.name}*{right.name} is not a path: s({left.name}) != e({right.name})"
                )
        return Path(arrs[-1].source, arrs[0].target, tuple(names))

    def is_path(self, names: Sequence[str]) -> bool:
        arrs = [self._by_name.get(n) for n in names]
        if any(a is None for a in arrs):
            return False
        return all(l.source == r.target for l, r in zip(arrs, arrs[1:]))

    def suffixes(self, p: "Path") -> List["Path"]:
        """Right subwords of ``p`` (``e_{s(p)}``, last arrow, ...), shortest first."""
        out = [Path.trivial(p.source)]
        n = len(p.arrows)
        for k in range(1, n + 1):
            tail = p.arrows[n - k:]
            out.append(Path(p.source, self._by_name[tail[0]].target, tail))
        return out

    def paths_up_to(self, max_len: int) -> List["Path"]:
        layer = [Path.trivial(v) for v in self.vertices]
        out = list(layer)
        for _ in range(max_len):
            nxt = []
            for p in layer:
                for a in self.arrows:
                    if a.source == p.target:
                        nxt.append(Path(p.source, a.target, (a.name,) + p.arrows))
            out.extend(nxt)
            layer = nxt
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arrs = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}, [{arrs}])"


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @staticmethod
    def trivial(v: str) -> "Path":
        return Path(v, v, ())

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __mul__(self, other: "Path") -> Optional["Path"]:
        if self.source != other.target:
            return None
        return Path(other.source, self.target, self.arrows + other.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)


def path_key(vertex_index: Dict[str, int], p: Path):
    """Monomial order: length first, then arrow labels lexicographically."""
    if p.is_trivial:
        return (0, (), vertex_index[p.source])
    return (len(p.arrows), p.arrows, 0)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each of length at least 2."""

    terms: Tuple[Tuple[object, Path], ...]

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def source(self) -> str:
        return self.terms[0][1].source

    @property
    def target(self) -> str:
        return self.terms[0][1].target

    def __str__(self):
        parts = []
        for i, (c, p) in enumerate(self.terms):
            neg = c < 0 if not hasattr(c, "p") else False
            mag = -c if neg else c
            coef = "" if mag == 1 else f"{mag} "
            sign = ("- " if neg else "+ ") if i else ("-" if neg else "")
            parts.append(f"{sign}{coef}{p}")
        return " ".join(parts)


def relation(*terms) -> Relation:
    """Convenience constructor: ``relation(path)`` or ``relation((c1, p1), (c2, p2))``."""
    out = []
    for t in terms:
        if isinstance(t, Path):
            out.append((1, t))
        else:
            out.append((t[0], t[1]))
    return Relation(tuple(out))


Element = Union[Path, Relation, Sequence[Tuple[object, Path]]]


class PresentedAlgebra:
    """The basic algebra kQ/(I + J^N) with a normal-form monomial basis.

    Build instances with :func:`build_algebra`.
    """

    def __init__(self, quiver, relations, bound, field, basis, nf, name=None):
        self.quiver: Quiver = quiver
        self.relations: Tuple[Relation, ...] = tuple(relations)
        self.bound: int = bound
        self.field = field
        self.basis: List[Path] = basis
        self.index: Dict[Path, int] = {p: i for i, p in enumerate(basis)}
        self._nf: Dict[Path, Dict[int, object]] = nf
        self.name = name
        self._mult: Dict[Tuple[int, int], Dict[int, object]] = {}
        self._fill_mult()
        self._by_ends: Dict[Tuple[str, str], List[int]] = {}
        for i, p in enumerate(basis):
            self._by_ends.setdefault((p.source, p.target), []).append(i)

    # -- construction helpers ------------------------------------------------
    def _fill_mult(self):
        basis = self.basis
        for i, p in enumerate(basis):
            for j, q in enumerate(basis):
                if p.source != q.target:
                    continue
                r = self._nf_path(Path(q.source, p.target, p.arrows + q.arrows))
                if r:
                    self._mult[(i, j)] = r

    def _nf_path(self, p: Path) -> Dict[int, object]:
        if len(p.arrows) >= self.bound:
            return {}
        return self._nf[p]

    # -- basic queries ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def is_monomial(self) -> bool:
        """True iff every supplied relation is a single path (syntactic)."""
        return all(r.is_monomial for r in self.relations)

    def basis_indices(self, source: Optional[str] = None, target: Optional[str] = None) -> List[int]:
        if source is not None and target is not None:
            return list(self._by_ends.get((source, target), []))
        return [
            i
            for i, p in enumerate(self.basis)
            if (source is None or p.source == source) and (target is None or p.target == target)
        ]

    def idempotent_index(self, v: str) -> int:
        return self.index[Path.trivial(v)]

    def arrow_index(self, name: str) -> int:
        a = self.quiver.arrow(name)
        return self.index[Path(a.source, a.target, (name,))]

    def radical_basis(self) -> List[int]:
        """Indices of the non-trivial basis paths; their span is J_A."""
        return [i for i, p in enumerate(self.basis) if not p.is_trivial]

    def format_path(self, p: Path) -> str:
        """Word notation: ``1_x`` for trivial paths, ``ab`` when every arrow label is one character."""
        if p.is_trivial:
            return f"1_{p.source}"
        if all(len(a.name) == 1 for a in self.quiver.arrows):
            return "".join(p.arrows)
        return "*".join(p.arrows)

    # -- arithmetic ------------------------------------------------------------
    def normal_form_sparse(self, elem: Element) -> Dict[int, object]:
        f = self.field
        if isinstance(elem, Path):
            terms = [(1, elem)]
        elif isinstance(elem, Relation):
            terms = list(elem.terms)
        else:
            terms = list(elem)
        out: Dict[int, object] = {}
        for c, p in terms:
            self._check_path(p)
            c = f(c)
            for k, v in self._nf_path(p).items():
                nv = f.norm(out.get(k, 0) + c * v)
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def normal_form(self, elem: Element) -> list:
        """Coordinates of ``elem`` in :attr:`basis`."""
        sv = self.normal_form_sparse(elem)
        out = [0] * self.dim
        for k, v in sv.items():
            out[k] = v
        return out

    def _check_path(self, p: Path):
        if p.is_trivial:
            if p.source not in self.quiver.vertex_index:
                raise UnknownArrow(f"unknown vertex {p.source!r}")
            return
        if not self.quiver.is_path(p.arrows):
            for n in p.arrows:
                self.quiver.arrow(n)
            raise InvalidRelation(f"{p} is not a path")

    def mult_basis(self, i: int, j: int) -> Dict[int, object]:
        """Normal form of ``basis[i] * basis[j]`` as a sparse vector."""
        return self._mult.get((i, j), {})

    def multiply_sparse(self, x: Dict[int, object], y: Dict[int, object]) -> Dict[int, object]:
        f = self.field
        out: Dict[int, object] = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self._mult.get((i, j))
                if not prod:
                    continue
                ab = a * b
                for k, v in prod.items():
                    nv = f.norm(out.get(k, 0) + ab * v)
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def multiply(self, x: Sequence, y: Sequence) -> list:
        sx = {i: v for i, v in enumerate(x) if v}
        sy = {i: v for i, v in enumerate(y) if v}
        out = [0] * self.dim
        for k, v in self.multiply_sparse(sx, sy).items():
            out[k] = v
        return out

    def one(self) -> list:
        out = [0] * self.dim
        for v in self.vertices:
            out[self.idempotent_index(v)] = 1
        return out

    def element(self, elem: Element) -> list:
        return self.normal_form(elem)

    def structure_constants(self):
        """Dense table ``c[i][j][k]`` with ``basis[i]*basis[j] = sum_k c[i][j][k] basis[k]``."""
        n = self.dim
        table = [[[0] * n for _ in range(n)] for _ in range(n)]
        for (i, j), prod in self._mult.items():
            for k, v in prod.items():
                table[i][j][k] = v
        return table

    def same_as(self, other: "PresentedAlgebra") -> bool:
        """Identical quiver, field, bound, basis and multiplication table."""
        return (
            self.quiver == other.quiver
            and self.field == other.field
            and self.bound == other.bound
            and self.basis == other.basis
            and self._mult == other._mult
        )

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<PresentedAlgebra{tag} dim={self.dim} vertices={list(self.vertices)}>"


def _validate_relation(quiver: Quiver, rel: Relation, field) -> Relation:
    terms = []
    for c, p in rel.terms:
        c = field(c)
        if not c:
            continue
        if not p.is_trivial and not quiver.is_path(p.arrows):
            for n in p.arrows:
                quiver.arrow(n)
            raise InvalidRelation(f"{p} is not a path in the quiver")
        if len(p.arrows) < 2:
            raise InvalidRelation(f"relation term {p} has length < 2")
        terms.append((c, p))
    if not terms:
        raise InvalidRelation("relation has no nonzero terms")
    s, e = terms[0][1].source, terms[0][1].target
    for _, p in terms:
        if p.source != s or p.target != e:
            raise InvalidRelation(f"relation terms are not parallel: {rel}")
    return Relation(tuple(terms))


def build_algebra(
    quiver: Quiver,
    relations: Iterable[Relation],
    bound: int,
    field=QQ,
    name: Optional[str] = None,
) -> PresentedAlgebra:
    """Compute the normal-form basis and multiplication table of kQ/I.

    The ideal is computed inside the truncated path algebra: the span of all
    ``u * r * v`` of total length at most ``bound`` is row reduced with larger
    paths as pivots, and every path of length ``bound`` must reduce to zero.

    Raises:
        AdmissibilityViolated: some path of length ``bound`` is not in the ideal.
        InvalidRelation: a relation has non-parallel terms or a term shorter than 2.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    rels = [_validate_relation(quiver, r, field) for r in relations]
    vidx = quiver.vertex_index
    paths = quiver.paths_up_to(bound)
    paths.sort(key=lambda p: path_key(vidx, p), reverse=True)
    col = {p: i for i, p in enumerate(paths)}
    from_src: Dict[str, List[Path]] = {}
    to_tgt: Dict[str, List[Path]] = {}
    for p in paths:
        from_src.setdefault(p.source, []).append(p)
        to_tgt.setdefault(p.target, []).append(p)

    ech = EchelonForm(field, len(paths))
    for r in rels:
        minlen = min(len(p.arrows) for _, p in r.terms)
        for u in from_src.get(r.target, []):
            lu = len(u.arrows)
            if lu + minlen > bound:
                continue
            for v in to_tgt.get(r.source, []):
                lv = len(v.arrows)
                if lu + minlen + lv > bound:
                    continue
                vec: Dict[int, object] = {}
                for c, p in r.terms:
                    if lu + len(p.arrows) + lv > bound:
                        continue
                    q = Path(v.source, u.target, u.arrows + p.arrows + v.arrows)
                    k = col[q]
                    nv = field.norm(vec.get(k, 0) + c)
                    if nv:
                        vec[k] = nv
                    else:
                        vec.pop(k, None)
                if vec:
                    ech.add(vec)

    for p in paths:
        if len(p.arrows) == bound and ech.reduce({col[p]: 1}):
            raise AdmissibilityViolated(
                f"path {p} of length {bound} does not lie in the ideal generated by the relations"
            )

    short = [p for p in paths if len(p.arrows) < bound]
    basis = sorted((p for p in short if col[p] not in ech.rows), key=lambda p: path_key(vidx, p))
    bidx = {col[p]: i for i, p in enumerate(basis)}
    nf: Dict[Path, Dict[int, object]] = {}
    for p in short:
        res = ech.reduce({col[p]: 1})
        nf[p] = {bidx[c]: v for c, v in res.items()}
    return PresentedAlgebra(quiver, rels, bound, field, basis, nf, name=name)
