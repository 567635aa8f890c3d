"""Exact linear algebra over the rationals or a prime field.

Field elements of QQ are plain ``int`` or ``fractions.Fraction`` values (integral
values are kept as ``int`` for speed); elements of ``GF(p)`` are ints in
``range(p)``.  Vectors are dense lists, or ``{column: value}`` dicts inside the
elimination engine.  Nothing here ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence

from .errors import ShapeMismatch

SparseVec = Dict[int, object]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class RationalField:
    """The field of rational numbers."""

    characteristic = 0
    name = "Q"

    def __call__(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {x!r} to a rational")

    def parse(self, text: str):
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ValueError(f"not a rational number: {text!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise ValueError("zero denominator")
        return self(Fraction(num, den))

    def inv(self, a):
        if a == 1 or a == -1:
            return a
        return self(Fraction(1) / a)

    def div(self, a, b):
        if b == 1:
            return a
        if b == -1:
            return -a
        return self(Fraction(a) / b)

    def norm(self, a):
        return self(a) if isinstance(a, Fraction) else a

    def sub_scaled(self, target: SparseVec, factor, src: SparseVec) -> None:
        """In place: ``target -= factor * src``."""
        get = target.get
        for c, v in src.items():
            nv = get(c, 0) - factor * v
            if nv:
                target[c] = nv
            else:
                target.pop(c, None)

    def scale(self, vec: SparseVec, factor) -> SparseVec:
        return {c: factor * v for c, v in vec.items()}

    def matmul(self, a, b, ncols=None):
        if not a:
            return []
        inner = len(b)
        if ncols is None:
            ncols = len(b[0]) if b else 0
        out = []
        for row in a:
            acc = [0] * ncols
            for k in range(inner):
                x = row[k]
                if x:
                    bk = b[k]
                    for j in range(ncols):
                        y = bk[j]
                        if y:
                            acc[j] += x * y
            out.append(acc)
        return out

    def dot(self, u, v):
        return sum(x * y for x, y in zip(u, v) if x and y)

    def random_element(self, rng, bound: int):
        return rng.randint(-bound, bound)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """The prime field GF(p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {x!r} to GF({self.p})")

    def parse(self, text: str):
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ValueError(f"not a field element: {text!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den % self.p == 0:
            raise ValueError(f"denominator divisible by {self.p}")
        return (num * pow(den, -1, self.p)) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * pow(b, -1, self.p)) % self.p

    def norm(self, a):
        return a % self.p

    def sub_scaled(self, target: SparseVec, factor, src: SparseVec) -> None:
        p = self.p
        get = target.get
        for c, v in src.items():
            nv = (get(c, 0) - factor * v) % p
            if nv:
                target[c] = nv
            else:
                target.pop(c, None)

    def scale(self, vec: SparseVec, factor) -> SparseVec:
        p = self.p
        return {c: (factor * v) % p for c, v in vec.items()}

    def matmul(self, a, b, ncols=None):
        out = RationalField.matmul(self, a, b, ncols)
        p = self.p
        return [[x % p for x in row] for row in out]

    def dot(self, u, v):
        return sum(x * y for x, y in zip(u, v)) % self.p

    def random_element(self, rng, bound: int):
        return rng.randrange(self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(spec: str):
    """Parse ``Q``, ``QQ``, ``F5``, ``Fp(5)`` or ``GF(5)``."""
    s = spec.strip()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:GF|Fp|F)\(?\s*(\d+)\s*\)?", s)
    if m:
        return PrimeField(int(m.group(1)))
    raise ValueError(f"unknown field {spec!r}")


# ---------------------------------------------------------------------------
# Matrices


class Matrix:
    """Dense row-major matrix over an exact field."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, data, cols: Optional[int] = None, field=QQ):
        data = [[field(x) for x in row] for row in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ShapeMismatch("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self.data = data
        self.field = field

    @classmethod
    def _raw(cls, data, rows, cols, field):
        m = cls.__new__(cls)
        m.data, m.rows, m.cols, m.field = data, rows, cols, field
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> "Matrix":
        return cls._raw([[0] * cols for _ in range(rows)], rows, cols, field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Matrix":
        data = [[0] * n for _ in range(n)]
        for i in range(n):
            data[i][i] = 1
        return cls._raw(data, n, n, field)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        return tuple(x for row in self.data for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def tolist(self):
        return [list(r) for r in self.data]

    def transpose(self) -> "Matrix":
        data = [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return Matrix._raw(data, self.cols, self.rows, self.field)

    T = property(transpose)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        data = self.field.matmul(self.data, other.data, other.cols)
        return Matrix._raw(data, self.rows, other.cols, self.field)

    def apply(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ShapeMismatch("vector length does not match matrix columns")
        f = self.field
        return [f.norm(f.dot(row, vec)) for row in self.data]

    def _zip(self, other, op):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shape {self.shape} vs {other.shape}")
        f = self.field
        data = [[f.norm(op(x, y)) for x, y in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix._raw(data, self.rows, self.cols, f)

    def __add__(self, other):
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._zip(other, lambda x, y: x - y)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        f = self.field
        data = [[f.norm(c * x) for x in row] for row in self.data]
        return Matrix._raw(data, self.rows, self.cols, f)

    def is_zero(self) -> bool:
        return not any(x for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for r, s in zip(self.data, other.data) for x, y in zip(r, s)
        )

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        return f"Matrix({self.tolist()!r})"


# ---------------------------------------------------------------------------
# Sparse incremental row reduction


class EchelonForm:
    """Reduced row echelon basis of a growing row space.

    Pivot rows are kept fully reduced, so the pivot of a stored row is the
    leftmost nonzero column and no other stored row has a nonzero entry there.
    """

    __slots__ = ("field", "ncols", "rows")

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: Dict[int, SparseVec] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: SparseVec) -> SparseVec:
        """Residue of ``vec`` modulo the row space (supported on non-pivots)."""
        v = dict(vec)
        rows = self.rows
        f = self.field
        for c in [c for c in v if c in rows]:
            x = v.get(c)
            if x:
                f.sub_scaled(v, x, rows[c])
        return v

    def add(self, vec: SparseVec) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        f = self.field
        p = min(v)
        lead = v[p]
        if lead != 1:
            v = f.scale(v, f.inv(lead))
        for r in self.rows.values():
            x = r.get(p)
            if x:
                f.sub_scaled(r, x, v)
        self.rows[p] = v
        return True

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def kernel(self) -> List[SparseVec]:
        """Right null space of the stored rows, one vector per free column."""
        free = [c for c in range(self.ncols) if c not in self.rows]
        basis = []
        for fc in free:
            vec = {fc: 1}
            for p, row in self.rows.items():
                x = row.get(fc)
                if x:
                    vec[p] = self.field.norm(-x)
            basis.append(vec)
        return basis


def to_sparse(vec: Sequence) -> SparseVec:
    return {i: x for i, x in enumerate(vec) if x}


def to_dense(vec: SparseVec, n: int) -> list:
    out = [0] * n
    for i, x in vec.items():
        out[i] = x
    return out


class Subspace:
    """A subspace of ``field^n`` stored by its reduced echelon basis.

    Coordinates of a member vector with respect to :attr:`basis` are its
    entries at the pivot columns; quotient coordinates are the entries of the
    reduced residue at the non-pivot columns.
    """

    def __init__(self, field, n: int, vectors: Iterable = ()):
        self.field = field
        self.n = n
        self._ech = EchelonForm(field, n)
        self._pivots = None
        for v in vectors:
            self.add(v)

    def add(self, vec) -> bool:
        sv = vec if isinstance(vec, dict) else to_sparse(vec)
        added = self._ech.add(sv)
        if added:
            self._pivots = None
        return added

    @property
    def dim(self) -> int:
        return len(self._ech.rows)

    @property
    def codim(self) -> int:
        return self.n - self.dim

    @property
    def pivots(self) -> List[int]:
        if self._pivots is None:
            self._pivots = self._ech.pivots()
        return self._pivots

    @property
    def complement(self) -> List[int]:
        piv = set(self._ech.rows)
        return [c for c in range(self.n) if c not in piv]

    @property
    def basis(self) -> List[list]:
        return [to_dense(self._ech.rows[p], self.n) for p in self.pivots]

    def sparse_basis(self) -> List[SparseVec]:
        return [self._ech.rows[p] for p in self.pivots]

    def reduce(self, vec) -> SparseVec:
        sv = vec if isinstance(vec, dict) else to_sparse(vec)
        return self._ech.reduce(sv)

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    __contains__ = contains

    def coords(self, vec) -> list:
        """Coordinates of a member vector in the echelon basis."""
        if isinstance(vec, dict):
            return [vec.get(p, 0) for p in self.pivots]
        return [vec[p] for p in self.pivots]

    def quotient_coords(self, vec) -> list:
        r = self.reduce(vec)
        return [r.get(c, 0) for c in self.complement]

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.sparse_basis())

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.n == other.n
            and self.dim == other.dim
            and self.contains_subspace(other)
        )

    def copy(self) -> "Subspace":
        s = Subspace(self.field, self.n)
        s._ech.rows = {p: dict(r) for p, r in self._ech.rows.items()}
        return s


def sparse_kernel(field, rows: Iterable[SparseVec], ncols: int) -> List[SparseVec]:
    ech = EchelonForm(field, ncols)
    for r in rows:
        ech.add(r)
    return ech.kernel()


# ---------------------------------------------------------------------------
# Public dense API


class RREF(NamedTuple):
    rref: Matrix
    rank: int
    kernel: List[list]
    pivots: List[int]


def rref_rank_kernel(m: Matrix) -> RREF:
    """Reduced row echelon form, rank and a right null space basis of ``m``.

    Pivoting is deterministic (leftmost column first), so the returned kernel
    basis is canonical: kernel vector ``k`` has a 1 at the ``k``-th free
    column and 0 at every other free column.
    """
    ech = EchelonForm(m.field, m.cols)
    for row in m.data:
        ech.add(to_sparse(row))
    pivots = ech.pivots()
    data = [to_dense(ech.rows[p], m.cols) for p in pivots]
    data += [[0] * m.cols for _ in range(m.rows - len(pivots))]
    kernel = [to_dense(k, m.cols) for k in ech.kernel()]
    return RREF(Matrix._raw(data, m.rows, m.cols, m.field), len(pivots), kernel, pivots)


def rank(m: Matrix) -> int:
    ech = EchelonForm(m.field, m.cols)
    for row in m.data:
        ech.add(to_sparse(row))
    return len(ech.rows)


def solve_linear(a: Matrix, b: Sequence) -> Optional[list]:
    """Some ``x`` with ``a @ x == b``, or ``None`` when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(b) != a.rows:
        raise ShapeMismatch(f"right-hand side has length {len(b)}, expected {a.rows}")
    f = a.field
    n = a.cols
    ech = EchelonForm(f, n + 1)
    for row, rhs in zip(a.data, b):
        sv = to_sparse(row)
        rhs = f(rhs)
        if rhs:
            sv[n] = rhs
        ech.add(sv)
    if n in ech.rows:
        return None
    x = [0] * n
    for p, row in ech.rows.items():
        x[p] = row.get(n, 0)
    return x


def matrix_inverse(m: Matrix) -> Optional[Matrix]:
    if m.rows != m.cols:
        raise ShapeMismatch("matrix_inverse needs a square matrix")
    n = m.rows
    f = m.field
    ech = EchelonForm(f, 2 * n)
    for i, row in enumerate(m.data):
        sv = to_sparse(row)
        sv[n + i] = 1
        ech.add(sv)
    if any(p not in ech.rows for p in range(n)) or any(p >= n for p in ech.rows):
        return None
    data = [[ech.rows[i].get(n + j, 0) for j in range(n)] for i in range(n)]
    return Matrix._raw(data, n, n, f)


def kernel_matrix_columns(field, data: List[list], ncols: int) -> List[list]:
    """Null space basis of a raw list-of-lists matrix (dense vectors)."""
    return [to_dense(k, ncols) for k in sparse_kernel(field, (to_sparse(r) for r in data), ncols)]


def column_space(field, data: List[list], nrows: int) -> Subspace:
    """Column space of a raw ``nrows`` x k matrix as a :class:`Subspace`."""
    s = Subspace(field, nrows)
    ncols = len(data[0]) if data else 0
    for j in range(ncols):
        s.add({i: data[i][j] for i in range(nrows) if data[i][j]})
    return s
