"""Line-oriented text formats: ``.quiv`` for algebras and ``.rep`` for modules.

An algebra file::

    field: Q
    vertices: x
    arrows:
      a: x -> x
      b: x -> x
    relations: a*a, b*b, a*b*a*b, b*a*b*a
    bound: 4

``*`` is the algebra product (right factor acts first); terms of a relation
may carry rational coefficients (``a*b - 1/2 c*d``).  A module file::

    dim x = 2
    map a = [[0,0],[1,0]]
    map b = 0

Matrices map the source-vertex component to the target-vertex component.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path as FsPath
from typing import Dict, List, Optional, Tuple

from .errors import DuplicateLabel, QuivSyntaxError, UnknownSymbol
from .exactlin import QQ, PrimeField, field_from_spec
from .presentation import Arrow, Path, PresentedAlgebra, Quiver, Relation, build_algebra
from .rep import Representation

SECTIONS = ("field", "vertices", "arrows", "relations", "bound")
_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_VERTEX = r"[A-Za-z0-9_][A-Za-z0-9_']*"
_VERTEX_RE = re.compile(_VERTEX + r"\Z")
_HEADER_RE = re.compile(r"\s*(" + "|".join(SECTIONS) + r")\s*:(?!\s*\S+\s*->)")
_ARROW_RE = re.compile(r"\s*(" + _IDENT + r")\s*:\s*(" + _VERTEX + r")\s*->\s*(" + _VERTEX + r")\s*\Z")
_IDENT_ONLY = re.compile(_IDENT)
_NUM_RE = re.compile(r"\d+(?:/\d+)?")


@dataclass
class AlgebraFile:
    field: object = QQ
    vertices: List[str] = dc_field(default_factory=list)
    arrows: List[Arrow] = dc_field(default_factory=list)
    relations: List[Relation] = dc_field(default_factory=list)
    bound: Optional[int] = None
    name: Optional[str] = None

    def build(self) -> PresentedAlgebra:
        return build_algebra(Quiver(self.vertices, self.arrows), self.relations, self.bound, self.field, name=self.name)


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _split_items(text: str, col0: int) -> List[Tuple[str, int]]:
    """Comma separated items with their 1-based start columns."""
    out, start = [], 0
    for k, ch in enumerate(text + ","):
        if ch == ",":
            piece = text[start:k]
            if piece.strip():
                lead = len(piece) - len(piece.lstrip())
                out.append((piece.strip(), col0 + start + lead + 1))
            start = k + 1
    return out


def _parse_relation(text: str, line: int, col: int, quiver: Quiver, fld) -> Relation:
    pos, n = 0, len(text)
    terms: List[Tuple[object, Path]] = []

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def fail(msg, cls=QuivSyntaxError):
        raise cls(msg, line, col + pos)

    while True:
        skip()
        sign = 1
        if pos < n and text[pos] in "+-":
            if text[pos] == "-":
                sign = -1
            pos += 1
            skip()
        elif terms:
            fail("expected '+' or '-' between relation terms")
        coef = 1
        m = _NUM_RE.match(text, pos)
        if m:
            coef = fld.parse(m.group(0))
            pos = m.end()
            skip()
            if pos < n and text[pos] == "*":
                pos += 1
                skip()
        names: List[str] = []
        while True:
            m = _IDENT_ONLY.match(text, pos)
            if not m:
                fail("expected an arrow name")
            if not quiver.has_arrow(m.group(0)):
                fail(f"unknown arrow {m.group(0)!r}", UnknownSymbol)
            names.append(m.group(0))
            pos = m.end()
            skip()
            if pos < n and text[pos] == "*":
                pos += 1
                skip()
                continue
            break
        if not quiver.is_path(names):
            fail(f"{'*'.join(names)} is not a path in the quiver")
        terms.append((fld.norm(sign * coef), quiver.path(*names)))
        skip()
        if pos >= n:
            break
    return Relation(tuple(terms))


def parse_algebra_file(text: str, name: Optional[str] = None) -> AlgebraFile:
    """Parse ``.quiv`` text.  Errors carry 1-based line and column."""
    out = AlgebraFile(name=name)
    seen = set()
    section = None
    pending_rel: List[Tuple[str, int, int]] = []
    vset: set = set()
    anames: set = set()
    for ln, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        m = _HEADER_RE.match(line)
        if m:
            section = m.group(1)
            if section in seen:
                raise DuplicateLabel(f"section {section!r} given twice", ln, m.start(1) + 1)
            seen.add(section)
            body, col0 = line[m.end():], m.end()
        elif section is None:
            raise QuivSyntaxError("expected a section header (field:, vertices:, arrows:, relations:, bound:)", ln, 1)
        else:
            body, col0 = line, 0
        items = _split_items(body, col0)
        if section == "field":
            for item, col in items:
                try:
                    out.field = field_from_spec(item)
                except ValueError:
                    raise QuivSyntaxError(f"unknown field {item!r}", ln, col) from None
        elif section == "bound":
            for item, col in items:
                if not item.isdigit():
                    raise QuivSyntaxError(f"bound must be a positive integer, got {item!r}", ln, col)
                if out.bound is not None:
                    raise DuplicateLabel("bound given twice", ln, col)
                out.bound = int(item)
        elif section == "vertices":
            for item, col in items:
                for k, tok in enumerate(item.split()):
                    if not _VERTEX_RE.match(tok):
                        raise QuivSyntaxError(f"bad vertex label {tok!r}", ln, col)
                    if tok in vset:
                        raise DuplicateLabel(f"vertex {tok!r} declared twice", ln, col)
                    vset.add(tok)
                    out.vertices.append(tok)
        elif section == "arrows":
            for item, col in items:
                am = _ARROW_RE.match(item)
                if not am:
                    raise QuivSyntaxError(f"expected 'name: source -> target', got {item!r}", ln, col)
                a, s, t = am.groups()
                if a in anames or a in vset:
                    raise DuplicateLabel(f"label {a!r} already used", ln, col)
                for v in (s, t):
                    if v not in vset:
                        raise UnknownSymbol(f"unknown vertex {v!r}", ln, col + item.index(v, len(a)))
                anames.add(a)
                out.arrows.append(Arrow(a, s, t))
        elif section == "relations":
            pending_rel.extend((item, ln, col) for item, col in items)
    if out.bound is None:
        raise QuivSyntaxError("missing 'bound:' section", None, None)
    if not out.vertices:
        raise QuivSyntaxError("missing or empty 'vertices:' section", None, None)
    quiver = Quiver(out.vertices, out.arrows)
    out.relations = [_parse_relation(t, ln, col, quiver, out.field) for t, ln, col in pending_rel]
    return out


def load_algebra(path) -> PresentedAlgebra:
    p = FsPath(path)
    return parse_algebra_file(p.read_text(), name=p.stem).build()


# ---------------------------------------------------------------------------
# Modules

_DIM_RE = re.compile(r"\s*dim\s+(" + _VERTEX + r")\s*=\s*(\d+)\s*\Z")
_MAP_RE = re.compile(r"\s*(?:map\s+)?(" + _IDENT + r")\s*=\s*(.*)\Z", re.S)
_ROW_RE = re.compile(r"\[([^\[\]]*)\]")


def _parse_matrix(body: str, ln: int, col: int, fld):
    body = body.strip()
    if body == "0":
        return 0
    if not (body.startswith("[") and body.endswith("]")):
        raise QuivSyntaxError("expected a matrix [[...],...] or 0", ln, col)
    inner = body[1:-1].strip()
    if not inner:
        return []
    rows = []
    for m in _ROW_RE.finditer(inner):
        entries = [e.strip() for e in m.group(1).split(",") if e.strip()]
        try:
            rows.append([fld.parse(e) for e in entries])
        except ValueError as exc:
            raise QuivSyntaxError(str(exc), ln, col) from None
    if _ROW_RE.sub("", inner).replace(",", "").strip():
        raise QuivSyntaxError("malformed matrix", ln, col)
    return rows


def parse_module_file(text: str, alg: PresentedAlgebra, label: Optional[str] = None) -> Representation:
    """Parse ``.rep`` text into a module over ``alg``; relations are checked on load."""
    q = alg.quiver
    dims: Dict[str, int] = {}
    raw_maps: Dict[str, Tuple[str, int, int]] = {}
    lines = text.splitlines()
    k = 0
    while k < len(lines):
        ln = k + 1
        line = _strip_comment(lines[k])
        k += 1
        if not line.strip():
            continue
        m = _DIM_RE.match(line)
        if m:
            v = m.group(1)
            if v not in q.vertex_index:
                raise UnknownSymbol(f"unknown vertex {v!r}", ln, m.start(1) + 1)
            if v in dims:
                raise DuplicateLabel(f"dim {v} given twice", ln, m.start(1) + 1)
            dims[v] = int(m.group(2))
            continue
        m = _MAP_RE.match(line)
        if not m or m.group(1) == "dim":
            raise QuivSyntaxError("expected 'dim <vertex> = n' or 'map <arrow> = [[...]]'", ln, 1)
        name, body = m.group(1), m.group(2)
        while body.count("[") > body.count("]") and k < len(lines):
            body += " " + _strip_comment(lines[k])
            k += 1
        if not q.has_arrow(name):
            raise UnknownSymbol(f"unknown arrow {name!r}", ln, m.start(1) + 1)
        if name in raw_maps:
            raise DuplicateLabel(f"map {name} given twice", ln, m.start(1) + 1)
        raw_maps[name] = (body, ln, m.start(2) + 1)
    maps = {}
    for name, (body, ln, col) in raw_maps.items():
        mat = _parse_matrix(body, ln, col, alg.field)
        a = q.arrow(name)
        if mat == [] and dims.get(a.target, 0) == 0:
            mat = 0
        maps[name] = mat
    return Representation(alg, dims, maps, label=label)


def load_module(path, alg: PresentedAlgebra) -> Representation:
    p = FsPath(path)
    return parse_module_file(p.read_text(), alg, label=p.stem)


# ---------------------------------------------------------------------------
# Emitters


def _field_spec(fld) -> str:
    return f"F{fld.p}" if isinstance(fld, PrimeField) else "Q"


def emit_algebra(alg: PresentedAlgebra) -> str:
    q = alg.quiver
    lines = [f"field: {_field_spec(alg.field)}", f"vertices: {', '.join(q.vertices)}", "arrows:"]
    lines += [f"  {a.name}: {a.source} -> {a.target}" for a in q.arrows]
    lines.append("relations:")
    lines += [f"  {r}" for r in alg.relations]
    lines.append(f"bound: {alg.bound}")
    return "\n".join(lines) + "\n"


def emit_module(x: Representation) -> str:
    lines = [f"dim {v} = {x.dims[v]}" for v in x.algebra.vertices]
    for a in x.algebra.quiver.arrows:
        m = x.maps[a.name]
        if m.is_zero():
            lines.append(f"map {a.name} = 0")
        else:
            rows = ",".join("[" + ",".join(str(c) for c in row) + "]" for row in m.tolist())
            lines.append(f"map {a.name} = [{rows}]")
    return "\n".join(lines) + "\n"
