"""Special biserial and string algebras, serial modules M(C), socle quotients."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .errors import NotStringAlgebra, SocleNotTwoSidedIdeal, UnsupportedReduction
from .exactlin import EchelonForm, Matrix
from .presentation import Path, PresentedAlgebra, Quiver, Relation, build_algebra
from .rep import (
    Representation,
    injective_module,
    is_isomorphic,
    projective_module,
    socle_spaces,
)


@dataclass
class AlgebraClass:
    special_biserial: bool
    string: bool
    c_value: int
    serial_type: bool
    problems: List[str] = dc_field(default_factory=list)

    def as_dict(self):
        return {
            "special_biserial": self.special_biserial,
            "string": self.string,
            "c": self.c_value,
            "serial_type": self.serial_type,
            "problems": list(self.problems),
        }


def c_invariant(alg: PresentedAlgebra) -> int:
    """Vertices with two outgoing arrows plus vertices with two incoming arrows."""
    q = alg.quiver
    return sum(1 for v in q.vertices if len(q.starting_at(v)) == 2) + sum(
        1 for v in q.vertices if len(q.ending_at(v)) == 2
    )


def _nonzero_product(alg: PresentedAlgebra, left: str, right: str) -> bool:
    q = alg.quiver
    a, b = q.arrow(left), q.arrow(right)
    if a.source != b.target:
        return False
    return bool(alg.normal_form_sparse(Path(b.source, a.target, (left, right))))


def _line_or_cycle(q: Quiver) -> bool:
    # every component is a linearly oriented line or an oriented cycle
    adj: Dict[str, set] = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = set()
    for v in q.vertices:
        if v in seen:
            continue
        comp, stack = set(), [v]
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(adj[u] - comp)
        seen |= comp
        arrows = [a for a in q.arrows if a.source in comp]
        if any(len(q.starting_at(u)) > 1 or len(q.ending_at(u)) > 1 for u in comp):
            return False
        if len(arrows) not in (len(comp) - 1, len(comp)):
            return False
    return True


def classify(alg: PresentedAlgebra) -> AlgebraClass:
    q = alg.quiver
    problems = []
    for v in q.vertices:
        if len(q.starting_at(v)) > 2:
            problems.append(f"vertex {v} starts more than two arrows")
        if len(q.ending_at(v)) > 2:
            problems.append(f"vertex {v} ends more than two arrows")
    names = [a.name for a in q.arrows]
    for b in names:
        left = [a for a in names if _nonzero_product(alg, a, b)]
        right = [g for g in names if _nonzero_product(alg, b, g)]
        if len(left) > 1:
            problems.append(f"{b} has two nonzero left continuations {left}")
        if len(right) > 1:
            problems.append(f"{b} has two nonzero right continuations {right}")
    sb = not problems
    string = sb and alg.is_monomial
    if sb and not string:
        problems.append("relations are not all monomial")
    c = c_invariant(alg)
    serial = string and c == 0 and _line_or_cycle(q)
    return AlgebraClass(sb, string, c, serial, problems)


# ---------------------------------------------------------------------------
# Serial modules


def serial_module(alg: PresentedAlgebra, word: Path) -> Representation:
    """The uniserial module ``M(C)`` with basis the right subwords of ``C``.

    Basis vector ``k`` is the suffix of length ``k``; it lives at the target
    of that suffix (``s(C)`` for ``k = 0``).
    """
    if not alg.normal_form_sparse(word):
        raise ValueError(f"{word} is zero in the algebra")
    q = alg.quiver
    sufs = q.suffixes(word)
    n = len(word.arrows)
    dims: Dict[str, int] = {v: 0 for v in q.vertices}
    local: List[int] = []
    for s in sufs:
        local.append(dims[s.target])
        dims[s.target] += 1
    f = alg.field
    maps = {a.name: [[0] * dims[a.source] for _ in range(dims[a.target])] for a in q.arrows}
    for k in range(n):
        name = word.arrows[n - k - 1]
        maps[name][local[k + 1]][local[k]] = 1
    mats = {
        a.name: Matrix._raw(maps[a.name], dims[a.target], dims[a.source], f) for a in q.arrows
    }
    label = f"M({alg.format_path(word)})"
    rep = Representation(alg, dims, mats, label=label, word=word)
    rep._local = True
    return rep


def serial_modules(alg: PresentedAlgebra) -> List[Tuple[Path, Representation]]:
    """``M(C)`` for every nonzero path ``C`` of a string algebra."""
    if not alg.is_monomial:
        raise NotStringAlgebra("serial modules M(C) are produced only for string algebras")
    cls = classify(alg)
    if not cls.string:
        raise NotStringAlgebra("; ".join(cls.problems) or "not a string algebra")
    return [(p, serial_module(alg, p)) for p in alg.basis]


# ---------------------------------------------------------------------------
# Socle quotients


@dataclass
class SocleReduction:
    algebra: PresentedAlgebra
    vertex: str
    projective: Representation
    socle_element: Dict[int, object]
    kind: str
    description: str


def monomial_representation(alg: PresentedAlgebra) -> Optional[PresentedAlgebra]:
    """Re-present ``alg`` by path relations when its ideal is spanned by paths."""
    q = alg.quiver
    zero = []
    for p in q.paths_up_to(alg.bound):
        if p.is_trivial:
            continue
        nf = alg.normal_form_sparse(p)
        if not nf:
            zero.append(p)
        elif nf != {alg.index.get(p, -1): 1}:
            return None
    zset = set(zero)
    minimal = []
    for p in zero:
        if len(p.arrows) < 2:
            return None
        left = Path(p.source, q.arrow(p.arrows[1]).target, p.arrows[1:])
        right = Path(q.arrow(p.arrows[-2]).source, p.target, p.arrows[:-1])
        if left not in zset and right not in zset:
            minimal.append(p)
    rels = [Relation(((1, p),)) for p in minimal]
    out = build_algebra(q, rels, alg.bound, alg.field, name=alg.name)
    if out.basis != alg.basis:
        return None
    return out


def _projective_injectives(alg: PresentedAlgebra):
    for i in alg.vertices:
        p = projective_module(alg, i)
        soc = socle_spaces(p)
        where = [v for v, s in soc.items() if s.dim]
        if sum(soc[v].dim for v in where) != 1:
            continue
        j = where[0]
        inj = injective_module(alg, j)
        if is_isomorphic(p, inj):
            vec = soc[j].basis[0]
            idx = alg.basis_indices(source=i, target=j)
            z = {idx[k]: c for k, c in enumerate(vec) if c}
            yield i, p, z


def _two_sided_span_is_line(alg: PresentedAlgebra, z: Dict[int, object]) -> bool:
    ech = EchelonForm(alg.field, alg.dim)
    ech.add(z)
    for b in range(alg.dim):
        for side in (0, 1):
            prod = alg.multiply_sparse({b: 1}, z) if side == 0 else alg.multiply_sparse(z, {b: 1})
            if prod and ech.reduce(prod):
                return False
    return True


def socle_reduction_step(alg: PresentedAlgebra) -> Optional[SocleReduction]:
    """Factor out the socle of an indecomposable projective-injective module.

    Returns ``None`` when no projective-injective indecomposable exists.
    Non-monomial socles are preferred so that binomial relations disappear first.
    """
    found = list(_projective_injectives(alg))
    if not found:
        return None
    found.sort(key=lambda t: len(t[2]) == 1)
    i, p, z = found[0]
    if not _two_sided_span_is_line(alg, z):
        raise SocleNotTwoSidedIdeal(f"socle of P({i}) does not span a two-sided ideal")
    paths = [alg.basis[k] for k in z]
    q = alg.quiver
    if len(paths) == 1 and paths[0].is_trivial:
        v = paths[0].source
        nq = Quiver([u for u in q.vertices if u != v], q.arrows)
        rels = list(alg.relations)
        kind, desc = "vertex", f"removed simple projective-injective vertex {v}"
    elif len(paths) == 1 and len(paths[0].arrows) == 1:
        name = paths[0].arrows[0]
        nq = Quiver(q.vertices, [a for a in q.arrows if a.name != name])
        rels = []
        for r in alg.relations:
            terms = tuple((c, t) for c, t in r.terms if name not in t.arrows)
            if terms:
                rels.append(Relation(terms))
        kind, desc = "arrow", f"removed arrow {name} spanning the socle of P({i})"
    else:
        if any(len(t.arrows) < 2 for t in paths):
            raise UnsupportedReduction(f"socle element of P({i}) mixes arrows and longer paths")
        nq = q
        rels = list(alg.relations) + [Relation(tuple((z[k], alg.basis[k]) for k in z))]
        kind = "relation"
        desc = f"added relation {rels[-1]} (socle of P({i}))"
    b = build_algebra(nq, rels, alg.bound, alg.field, name=alg.name)
    mono = monomial_representation(b)
    if mono is not None:
        b = mono
    if b.dim != alg.dim - 1:
        raise UnsupportedReduction(f"socle quotient has dimension {b.dim}, expected {alg.dim - 1}")
    return SocleReduction(b, i, p, z, kind, desc)
