"""The generator-cogenerator M = A + A* + FN and its summand catalog."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence

from .embed import ReductionChain, restrict
from .errors import NotSerialType, SummandNotInAddM, VerificationFailed
from .presentation import PresentedAlgebra
from .rep import (
    Representation,
    injective_module,
    is_isomorphic,
    is_local,
    projective_module,
)
from .strings import SocleReduction, classify, serial_modules


@dataclass
class CatalogEntry:
    label: str
    kind: str
    module: Representation
    aliases: List[str] = dc_field(default_factory=list)
    fn_length: Optional[int] = None

    @property
    def is_fn(self) -> bool:
        return self.fn_length is not None

    def as_dict(self):
        return {
            "label": self.label,
            "kind": self.kind,
            "aliases": list(self.aliases),
            "dim": self.module.dim,
            "dim_vector": list(self.module.dim_vector),
            "fn_length": self.fn_length,
        }


@dataclass
class SummandCatalog:
    algebra: PresentedAlgebra
    entries: List[CatalogEntry]
    chain: Optional[ReductionChain] = None
    reductions: List[SocleReduction] = dc_field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    @property
    def modules(self) -> List[Representation]:
        return [e.module for e in self.entries]

    @property
    def labels(self) -> List[str]:
        return [e.label for e in self.entries]

    @property
    def total_dim(self) -> int:
        return sum(e.module.dim for e in self.entries)

    def index(self, label: str) -> int:
        for i, e in enumerate(self.entries):
            if e.label == label or label in e.aliases:
                return i
        raise KeyError(label)

    def permuted(self, order: Sequence[int]) -> "SummandCatalog":
        return SummandCatalog(self.algebra, [self.entries[i] for i in order], self.chain, self.reductions)

    def as_dict(self):
        return {
            "count": len(self.entries),
            "total_dim": self.total_dim,
            "entries": [e.as_dict() for e in self.entries],
        }


def serial_indecomposables(b: PresentedAlgebra) -> List[Representation]:
    """All indecomposable modules of an algebra of serial type (``c = 0``)."""
    if not classify(b).serial_type:
        raise NotSerialType("algebra is not a string algebra with c = 0")
    return [m for _, m in serial_modules(b)]


def _proj_inj_labels(alg: PresentedAlgebra):
    if len(alg.vertices) == 1:
        return (lambda v: "A"), (lambda v: "A*")
    return (lambda v: f"P({v})"), (lambda v: f"I({v})")


def _add(entries: List[CatalogEntry], cand: CatalogEntry) -> Optional[CatalogEntry]:
    """Append ``cand`` unless isomorphic to an entry; returns the matching entry if any."""
    m = cand.module
    for e in entries:
        if e.module.dim_vector == m.dim_vector and is_isomorphic(e.module, m):
            return e
    entries.append(cand)
    return None


def build_M(chain: ReductionChain, alg: Optional[PresentedAlgebra] = None) -> SummandCatalog:
    """Projectives, then injectives, then restrictions of the terminal serial modules.

    Entries isomorphic to an earlier one are dropped and their label kept as an
    alias.  An entry isomorphic to some ``FN`` carries the ``B``-length of the
    shortest such ``N``.
    """
    alg = alg or chain.source
    b = chain.terminal
    f = chain.composite()
    plab, ilab = _proj_inj_labels(alg)
    entries: List[CatalogEntry] = []
    for v in alg.vertices:
        _add(entries, CatalogEntry(plab(v), "P", projective_module(alg, v).with_label(plab(v))))
    for v in alg.vertices:
        cand = CatalogEntry(ilab(v), "I", injective_module(alg, v).with_label(ilab(v)))
        hit = _add(entries, cand)
        if hit is not None:
            hit.aliases.append(cand.label)
    for n in serial_indecomposables(b):
        fn = restrict(f, n)
        length = len(n.word.arrows)
        cand = CatalogEntry(fn.label, "FN", fn, fn_length=length)
        hit = _add(entries, cand)
        if hit is not None:
            if cand.label != hit.label and cand.label not in hit.aliases:
                hit.aliases.append(cand.label)
            if hit.fn_length is None or length < hit.fn_length:
                hit.fn_length = length
    for e in entries:
        if not is_local(e.module):
            raise VerificationFailed(f"catalog entry {e.label} is not indecomposable with local End")
    return SummandCatalog(alg, entries, chain)


def inflate(module: Representation, alg: PresentedAlgebra) -> Representation:
    """View a module over a quotient ``A/K`` (presented on a subquiver) as an ``A``-module."""
    dims = {v: module.dims.get(v, 0) for v in alg.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        if a.name in module.maps:
            maps[a.name] = module.maps[a.name]
    out = Representation(alg, dims, maps, label=module.label, word=module.word)
    out._local = module._local
    return out


def build_M_with_reductions(
    reductions: List[SocleReduction], inner: SummandCatalog, alg: PresentedAlgebra
) -> SummandCatalog:
    """Undo socle quotients: catalog for ``A`` is ``inflate(catalog for A/soc P) + P``."""
    cat = inner
    for red in reversed(reductions):
        cur = _algebra_before(red, reductions, alg)
        entries = []
        for e in cat.entries:
            entries.append(CatalogEntry(e.label, e.kind, inflate(e.module, cur), list(e.aliases), e.fn_length))
        p = projective_module(cur, red.vertex)
        label = f"P({red.vertex})"
        for x in entries:
            if x.label == label:
                # over the quotient this is P/soc P
                x.label = f"{label}/soc"
        hit = _add(entries, CatalogEntry(label, "PI", p.with_label(label)))
        if hit is not None:
            raise VerificationFailed(f"projective-injective P({red.vertex}) already in the catalog")
        cat = SummandCatalog(cur, entries, inner.chain, reductions)
    _check_generator_cogenerator(cat)
    return cat


def _algebra_before(red: SocleReduction, reductions: List[SocleReduction], alg: PresentedAlgebra):
    k = reductions.index(red)
    return alg if k == 0 else reductions[k - 1].algebra


def _check_generator_cogenerator(cat: SummandCatalog) -> None:
    alg = cat.algebra
    for v in alg.vertices:
        for m in (projective_module(alg, v), injective_module(alg, v)):
            if not any(e.module.dim_vector == m.dim_vector and is_isomorphic(e.module, m) for e in cat.entries):
                raise SummandNotInAddM(f"{m.label} is missing from the catalog")
