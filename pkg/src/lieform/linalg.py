"""Exact linear algebra over the rationals.

Elimination works on sparse rows of integers (fraction-free, every row kept
primitive), with leftmost pivots and first-come tie breaking so that every
basis returned here is reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Vector = tuple  # tuple of Fraction
SparseVec = dict  # column index -> Fraction


class LinalgError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.replace("−", "-"))
    return Fraction(x)


def _primitive(row: dict) -> dict:
    g = gcd(*row.values()) if row else 1
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _int_row(row: Mapping) -> dict:
    """Scale a rational sparse row to a primitive integer row."""
    items = [(k, as_fraction(v)) for k, v in row.items() if v]
    if not items:
        return {}
    den = lcm(*(v.denominator for _, v in items))
    return _primitive({k: v.numerator * (den // v.denominator) for k, v in items})


def _eliminate(r: dict, p: dict, c) -> dict:
    """Return a*r - b*p with the entry at column c cancelled, made primitive."""
    a, b = p[c], r[c]
    g = gcd(a, b)
    a //= g
    b //= g
    if a == 1:
        new = dict(r)
    else:
        new = {k: a * v for k, v in r.items()}
    for k, v in p.items():
        nv = new.get(k, 0) - b * v
        if nv:
            new[k] = nv
        else:
            new.pop(k, None)
    return _primitive(new)


class Echelon:
    """Incremental row echelon form over Q.

    Rows are stored as primitive integer dicts keyed by their leftmost
    column.  Column keys only need to be mutually comparable.
    """

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: dict = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce_int(self, r: dict) -> dict:
        rows = self.rows
        while r:
            c = min(r)
            p = rows.get(c)
            if p is None:
                return r
            r = _eliminate(r, p, c)
        return r

    def add(self, vec: Mapping) -> bool:
        """Insert vec; return True when it was independent of the rows so far."""
        r = self._reduce_int(_int_row(vec))
        if not r:
            return False
        c = min(r)
        if r[c] < 0:
            r = {k: -v for k, v in r.items()}
        self.rows[c] = r
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self._reduce_int(_int_row(vec))

    def copy(self) -> "Echelon":
        e = Echelon()
        e.rows = dict(self.rows)
        return e

    def reduced(self) -> dict:
        """Fully reduced echelon form: pivot column -> row with pivot entry 1."""
        piv = sorted(self.rows)
        rows = {c: dict(self.rows[c]) for c in piv}
        for c in reversed(piv):
            pc = rows[c]
            for c2 in piv:
                if c2 >= c:
                    break
                r = rows[c2]
                if c in r:
                    rows[c2] = _eliminate(r, pc, c)
                    if rows[c2][c2] < 0:
                        rows[c2] = {k: -v for k, v in rows[c2].items()}
        out = {}
        for c in piv:
            r = rows[c]
            lead = r[c]
            out[c] = {k: Fraction(v, lead) for k, v in sorted(r.items())}
        return out


def rref_rows(rows: Iterable[Mapping]) -> dict:
    return Echelon(rows).reduced()


def sparse_kernel(rows: Iterable[Mapping], columns: Sequence) -> list:
    """Basis of {x : row . x = 0 for every row}, as sparse dicts.

    `columns` lists the column keys in order.  Basis vector j has a 1 at the
    j-th free column and 0 at every other free column.
    """
    red = rref_rows(rows)
    free = [c for c in columns if c not in red]
    vecs = {f: {f: Fraction(1)} for f in free}
    for pc, r in red.items():
        for k, v in r.items():
            if k != pc and k in vecs:
                vecs[k][pc] = -v
    return [vecs[f] for f in free]


def sparse_kernel_with_free(rows: Iterable[Mapping], columns: Sequence):
    red = rref_rows(rows)
    free = [c for c in columns if c not in red]
    vecs = {f: {f: Fraction(1)} for f in free}
    for pc, r in red.items():
        for k, v in r.items():
            if k != pc and k in vecs:
                vecs[k][pc] = -v
    return [vecs[f] for f in free], free


def transpose_sparse(cols: Sequence[Mapping]) -> dict:
    """Columns (list of dicts row->value) to rows (dict row -> dict col->value)."""
    rows: dict = {}
    for j, col in enumerate(cols):
        for i, v in col.items():
            if v:
                rows.setdefault(i, {})[j] = v
    return rows


class Matrix:
    """Immutable rational matrix.

    Semantically dense (every entry is defined and exact); entries are stored
    by row as sparse dicts because the differentials handled here are mostly
    zeros.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, nrows: int, ncols: int, rows: Mapping | None = None):
        if nrows < 0 or ncols < 0:
            raise LinalgError("negative dimension")
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        for i, row in (rows or {}).items():
            if not 0 <= i < nrows:
                raise LinalgError(f"row index {i} out of range")
            r = {}
            for j, v in row.items():
                if not 0 <= j < ncols:
                    raise LinalgError(f"column index {j} out of range")
                v = as_fraction(v)
                if v:
                    r[j] = v
            if r:
                clean[i] = r
        self._rows = clean
        self._hash = None

    @classmethod
    def from_rows(cls, data: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise LinalgError("ragged rows")
        return cls(nrows, ncols, {i: dict(enumerate(row)) for i, row in enumerate(data)})

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence) -> "Matrix":
        dict_cols = [c if isinstance(c, Mapping) else dict(enumerate(c)) for c in cols]
        return cls(nrows, len(cols), transpose_sparse(dict_cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self._rows.get(i, {}).get(j, Fraction(0))

    def row(self, i: int) -> dict:
        return dict(self._rows.get(i, {}))

    def sparse_rows(self) -> dict:
        return {i: dict(r) for i, r in self._rows.items()}

    def columns(self) -> list:
        cols = [dict() for _ in range(self.ncols)]
        for i, r in self._rows.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in self._rows.items() if j in r}

    def to_lists(self) -> list:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows, transpose_sparse(
            [self._rows.get(i, {}) for i in range(self.nrows)]))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, tuple(sorted(
                (i, tuple(sorted(r.items()))) for i, r in self._rows.items()))))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.to_lists())
        return f"Matrix({self.nrows}x{self.ncols}: {body})"

    def __neg__(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols,
                      {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()})

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            tgt = rows.setdefault(i, {})
            for j, v in r.items():
                tgt[j] = tgt.get(j, 0) + sign * v
        return Matrix(self.nrows, self.ncols, rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def __mul__(self, scalar) -> "Matrix":
        s = as_fraction(scalar)
        return Matrix(self.nrows, self.ncols,
                      {i: {j: s * v for j, v in r.items()} for i, r in self._rows.items()})

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
            rows = {}
            for i, r in self._rows.items():
                acc: dict = {}
                for k, a in r.items():
                    for j, b in other._rows.get(k, {}).items():
                        acc[j] = acc.get(j, 0) + a * b
                rows[i] = acc
            return Matrix(self.nrows, other.ncols, rows)
        vec = [as_fraction(x) for x in other]
        if len(vec) != self.ncols:
            raise LinalgError("vector length mismatch")
        out = [Fraction(0)] * self.nrows
        for i, r in self._rows.items():
            out[i] = sum((v * vec[j] for j, v in r.items()), Fraction(0))
        return tuple(out)

    def apply_sparse(self, vec: Mapping) -> dict:
        out: dict = {}
        for i, r in self._rows.items():
            s = sum((v * vec[j] for j, v in r.items() if j in vec), Fraction(0))
            if s:
                out[i] = s
        return out

    def rank(self) -> int:
        return Echelon(self._rows.values()).rank


def _dense(vec: Mapping, n: int) -> Vector:
    return tuple(as_fraction(vec.get(i, 0)) for i in range(n))


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> list:
    """Basis of {x : m x = 0} as dense tuples."""
    return [_dense(v, m.ncols) for v in sparse_kernel(m._rows.values(), range(m.ncols))]


def image_basis(m: Matrix) -> list:
    """Reduced echelon basis of the column space."""
    red = rref_rows(m.columns())
    return [_dense(r, m.nrows) for r in red.values()]


def solve(m: Matrix, b: Sequence):
    """Some x with m x = b, or None when the system is inconsistent."""
    if len(b) != m.nrows:
        raise LinalgError("right-hand side length mismatch")
    x = solve_sparse(m.sparse_rows(), m.ncols, {i: as_fraction(v) for i, v in enumerate(b) if v})
    return None if x is None else _dense(x, m.ncols)


def solve_sparse(rows: Mapping, ncols: int, rhs: Mapping):
    """Solve a sparse system given by rows (row index -> dict) and rhs (row -> value).

    Free variables are set to zero.  Returns a sparse solution or None.
    """
    aug = []
    keys = set(rows) | set(rhs)
    for i in sorted(keys):
        r = dict(rows.get(i, {}))
        if i in rhs and rhs[i]:
            r[ncols] = rhs[i]
        aug.append(r)
    red = rref_rows(aug)
    if ncols in red:
        return None
    x = {}
    for pc, r in red.items():
        v = r.get(ncols, 0)
        if v:
            x[pc] = as_fraction(v)
    return x


def quotient_and_section(ambient_dim: int, sub: Sequence):
    """Projection Q^n -> Q^n / span(sub) and a linear section of it.

    The quotient is coordinatized by the columns that are not pivots of the
    reduced echelon form of `sub`.
    """
    red = rref_rows(v if isinstance(v, Mapping) else dict(enumerate(v)) for v in sub)
    free = [j for j in range(ambient_dim) if j not in red]
    pos = {f: k for k, f in enumerate(free)}
    proj_cols = []
    for j in range(ambient_dim):
        if j in pos:
            proj_cols.append({pos[j]: Fraction(1)})
        else:
            proj_cols.append({pos[k]: -v for k, v in red[j].items() if k != j})
    projection = Matrix.from_columns(len(free), proj_cols)
    lift = Matrix.from_columns(ambient_dim, [{f: Fraction(1)} for f in free])
    return projection, lift


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise LinalgError("only square matrices are invertible")
    cols = []
    rows = m.sparse_rows()
    for j in range(n):
        x = solve_sparse(rows, n, {j: Fraction(1)})
        if x is None:
            raise LinalgError("matrix is singular")
        cols.append(x)
    out = Matrix.from_columns(n, cols)
    if m @ out != Matrix.identity(n):
        raise LinalgError("matrix is singular")
    return out


def eigenspace_split(inv: Matrix):
    """Bases of the +1 and -1 eigenspaces of an involution."""
    n = inv.nrows
    if inv.ncols != n or inv @ inv != Matrix.identity(n):
        raise LinalgError("matrix is not an involution")
    ident = Matrix.identity(n)
    return kernel_basis(inv - ident), kernel_basis(inv + ident)


class Subspace:
    """A subspace given by a basis with distinguished identity positions.

    basis[i] has coefficient 1 at positions[i] and 0 at positions[j], j != i,
    so coordinates of a member are read off at the positions.
    """

    __slots__ = ("basis", "positions", "_echelon")

    def __init__(self, basis: Sequence[Mapping], positions: Sequence):
        if len(basis) != len(positions):
            raise LinalgError("basis/positions length mismatch")
        self.basis = [dict(b) for b in basis]
        self.positions = list(positions)
        self._echelon = None

    @classmethod
    def span(cls, vectors: Iterable[Mapping]) -> "Subspace":
        red = rref_rows(vectors)
        return cls(list(red.values()), list(red.keys()))

    @classmethod
    def kernel(cls, rows: Iterable[Mapping], columns: Sequence) -> "Subspace":
        vecs, free = sparse_kernel_with_free(rows, columns)
        return cls(vecs, free)

    @classmethod
    def coordinate(cls, keys: Sequence) -> "Subspace":
        return cls([{k: Fraction(1)} for k in keys], list(keys))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def echelon(self) -> Echelon:
        if self._echelon is None:
            self._echelon = Echelon(self.basis)
        return self._echelon

    def contains(self, vec: Mapping) -> bool:
        return self.echelon().contains(vec)

    def coords(self, vec: Mapping, check: bool = True) -> list:
        c = [as_fraction(vec.get(p, 0)) for p in self.positions]
        if check:
            resid = dict(vec)
            for ci, b in zip(c, self.basis):
                if ci:
                    for k, v in b.items():
                        nv = resid.get(k, 0) - ci * v
                        if nv:
                            resid[k] = nv
                        else:
                            resid.pop(k, None)
            if any(resid.values()):
                raise LinalgError("vector is not in the subspace")
        return c

    def combine(self, coords: Sequence) -> dict:
        out: dict = {}
        for ci, b in zip(coords, self.basis):
            if ci:
                for k, v in b.items():
                    out[k] = out.get(k, 0) + ci * v
        return {k: v for k, v in out.items() if v}
