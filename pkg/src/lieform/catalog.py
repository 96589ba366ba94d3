"""Classical real Lie algebras with rational bases, Cartan involutions and ranks.

Complex matrices are realified: A + iB is represented by the real block matrix
[[A, -B], [B, A]], so every algebra here has rational structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .lie import LieAlgebra, Subalgebra
from .linalg import Matrix, kernel_basis, solve

Mat = list  # square list-of-lists of Fraction


class CatalogError(ValueError):
    pass


def _zeros(n: int) -> Mat:
    return [[Fraction(0)] * n for _ in range(n)]


def _unit(n: int, i: int, j: int) -> Mat:
    m = _zeros(n)
    m[i][j] = Fraction(1)
    return m


def _mul(a: Mat, b: Mat) -> Mat:
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def _sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _transpose(a: Mat) -> Mat:
    return [list(r) for r in zip(*a)]


def _neg(a: Mat) -> Mat:
    return [[-x for x in r] for r in a]


def _flat(a: Mat) -> list:
    return [x for r in a for x in r]


def _trace(a: Mat) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def from_matrices(name: str, mats: Sequence[Mat], names: Sequence[str],
                  theta: Callable[[Mat], Mat] | None = None, rank: int | None = None,
                  trace_form: bool = False) -> LieAlgebra:
    """Structure constants of the matrix Lie algebra spanned by `mats`."""
    cols = [_flat(m) for m in mats]
    basis_matrix = Matrix.from_columns(len(cols[0]), cols)
    if basis_matrix.rank() != len(mats):
        raise CatalogError(f"{name}: basis matrices are dependent")

    def coords(m: Mat) -> dict:
        x = solve(basis_matrix, _flat(m))
        if x is None:
            raise CatalogError(f"{name}: not closed under the operation")
        return {k: v for k, v in enumerate(x) if v}

    br = {}
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            c = _sub(_mul(mats[i], mats[j]), _mul(mats[j], mats[i]))
            v = coords(c)
            if v:
                br[(i, j)] = v
    th = None
    if theta is not None:
        th = Matrix.from_columns(len(mats), [coords(theta(m)) for m in mats])
    form = None
    if trace_form:
        form = Matrix.from_rows([[_trace(_mul(a, b)) for b in mats] for a in mats])
    alg = LieAlgebra(name, names, br, theta=th, rank=rank, invariant_form=form)
    alg.validate()
    return alg


def _minus_transpose(m: Mat) -> Mat:
    return _neg(_transpose(m))


def sl(n: int) -> LieAlgebra:
    """sl(n, R) in the basis H_1..H_{n-1}, E_ij (i != j); for n = 2: h, e, f."""
    if n < 2:
        raise CatalogError("sl(n) needs n >= 2")
    mats, names = [], []
    for i in range(n - 1):
        mats.append(_sub(_unit(n, i, i), _unit(n, i + 1, i + 1)))
        names.append(f"H{i + 1}")
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(_unit(n, i, j))
                names.append(f"E{i + 1}{j + 1}")
    if n == 2:
        names = ["h", "e", "f"]
    return from_matrices(f"sl{n}", mats, names, theta=_minus_transpose, rank=n - 1)


def _kernel_matrices(size: int, constraints: Callable[[Mat], list]) -> list:
    """Basis of real size x size matrices satisfying linear constraints."""
    dim = size * size
    rows = []
    units = [_unit(size, i, j) for i in range(size) for j in range(size)]
    images = [constraints(u) for u in units]
    ncon = len(images[0])
    for r in range(ncon):
        rows.append([images[c][r] for c in range(dim)])
    basis = kernel_basis(Matrix.from_rows(rows, ncols=dim))
    return [[list(v[i * size:(i + 1) * size]) for i in range(size)] for v in basis]


def _signature(p: int, q: int) -> Mat:
    n = p + q
    j = _zeros(n)
    for i in range(n):
        j[i][i] = Fraction(1 if i < p else -1)
    return j


def so(p: int, q: int = 0) -> LieAlgebra:
    n = p + q
    if n < 2:
        raise CatalogError("so(p,q) needs p + q >= 2")
    J = _signature(p, q)

    def cons(x):
        m = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(_mul(_transpose(x), J), _mul(J, x))]
        return _flat(m)

    mats = _kernel_matrices(n, cons)
    name = f"so{p}" if q == 0 else f"so{p},{q}"
    return from_matrices(name, mats, [f"X{k}" for k in range(len(mats))],
                         theta=_minus_transpose, rank=n // 2)


def sp(n2: int) -> LieAlgebra:
    if n2 < 2 or n2 % 2:
        raise CatalogError("sp(2n) needs an even size >= 2")
    n = n2 // 2
    om = _zeros(n2)
    for i in range(n):
        om[i][n + i] = Fraction(1)
        om[n + i][i] = Fraction(-1)

    def cons(x):
        m = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(_mul(_transpose(x), om), _mul(om, x))]
        return _flat(m)

    mats = _kernel_matrices(n2, cons)
    return from_matrices(f"sp{n2}", mats, [f"X{k}" for k in range(len(mats))],
                         theta=_minus_transpose, rank=n)


def _realify(a: Mat, b: Mat) -> Mat:
    n = len(a)
    out = _zeros(2 * n)
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
            out[i][n + j] = -b[i][j]
            out[n + i][j] = b[i][j]
            out[n + i][n + j] = a[i][j]
    return out


def _unitary(p: int, q: int, traceless: bool) -> tuple:
    """Real bases (A, B) of {A + iB : (A+iB)* J + J (A+iB) = 0 [, tr = 0]}."""
    n = p + q
    J = _signature(p, q)
    dim = 2 * n * n
    rows = []

    def split(vec):
        a = [list(vec[i * n:(i + 1) * n]) for i in range(n)]
        b = [list(vec[n * n + i * n: n * n + (i + 1) * n]) for i in range(n)]
        return a, b

    basis_vecs = []
    for c in range(dim):
        v = [Fraction(0)] * dim
        v[c] = Fraction(1)
        a, b = split(v)
        ca = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(_mul(_transpose(a), J), _mul(J, a))]
        cb = [[-x + y for x, y in zip(r1, r2)] for r1, r2 in zip(_mul(_transpose(b), J), _mul(J, b))]
        col = _flat(ca) + _flat(cb)
        if traceless:
            col += [_trace(a), _trace(b)]
        basis_vecs.append(col)
    nrows = len(basis_vecs[0])
    for r in range(nrows):
        rows.append([basis_vecs[c][r] for c in range(dim)])
    ker = kernel_basis(Matrix.from_rows(rows, ncols=dim))
    return [split(v) for v in ker]


def _unitary_algebra(p: int, q: int, traceless: bool) -> LieAlgebra:
    n = p + q
    if n < 1 or (traceless and n < 2):
        raise CatalogError("unsupported size for a unitary algebra")
    pairs = _unitary(p, q, traceless)
    mats = [_realify(a, b) for a, b in pairs]

    def theta(m: Mat) -> Mat:
        # -X* on the complex matrix A + iB is -A^T + i B^T
        a = [r[:n] for r in m[:n]]
        b = [r[:n] for r in m[n:]]
        return _realify(_neg(_transpose(a)), _transpose(b))

    base = "su" if traceless else "u"
    name = f"{base}{p}" if q == 0 else f"{base}{p},{q}"
    rank = n - 1 if traceless else n
    return from_matrices(name, mats, [f"Y{k}" for k in range(len(mats))], theta=theta,
                         rank=rank, trace_form=not traceless)


def su(p: int, q: int = 0) -> LieAlgebra:
    return _unitary_algebra(p, q, True)


def u(p: int, q: int = 0) -> LieAlgebra:
    return _unitary_algebra(p, q, False)


def abelian(n: int, theta_sign: int = 1, name: str | None = None) -> LieAlgebra:
    if n < 0 or theta_sign not in (1, -1):
        raise CatalogError("abelian(n) needs n >= 0 and θ = ±1")
    th = Matrix.identity(n) * theta_sign
    return LieAlgebra(name or f"abelian{n}", [f"a{k}" for k in range(n)], {}, theta=th, rank=n,
                      invariant_form=Matrix.identity(n))


def split_torus() -> LieAlgebra:
    """so(1,1) modelled as abelian(1) with θ = -1."""
    return abelian(1, -1, name="so1,1")


def direct_sum(*algs: LieAlgebra, name: str | None = None) -> LieAlgebra:
    names, br, offset = [], {}, 0
    has_theta = all(a.theta is not None for a in algs)
    declared = any(a.invariant_form is not None for a in algs)
    for t, a in enumerate(algs):
        names.extend(f"{b}_{t + 1}" for b in a.basis)
        for i, j, k, c in a.structure_constants():
            br.setdefault((offset + i, offset + j), {})[offset + k] = c
        offset += a.dim
    n = offset
    theta = None
    if has_theta:
        rows, off = {}, 0
        for a in algs:
            for i, r in a.theta.sparse_rows().items():
                rows[off + i] = {off + j: v for j, v in r.items()}
            off += a.dim
        theta = Matrix(n, n, rows)
    form = None
    if declared:
        rows, off = {}, 0
        for a in algs:
            for i, r in a.form().sparse_rows().items():
                rows[off + i] = {off + j: v for j, v in r.items()}
            off += a.dim
        form = Matrix(n, n, rows)
    rank = sum(a.rank for a in algs) if all(a.rank is not None for a in algs) else None
    alg = LieAlgebra(name or "+".join(a.name for a in algs), names, br, theta=theta, rank=rank,
                     invariant_form=form)
    alg.validate()
    return alg


def classical(family: str, *params) -> LieAlgebra:
    """Dispatch by family name: sl, su, so, sp, u, abelian, split_torus."""
    table = {"sl": sl, "su": su, "so": so, "sp": sp, "u": u, "abelian": abelian,
             "split_torus": split_torus}
    if family not in table:
        raise CatalogError(f"unknown family {family!r}")
    try:
        return table[family](*params)
    except TypeError as exc:
        raise CatalogError(str(exc)) from None


# ---------- built-in pairs ----------

@dataclass
class PairSpec:
    name: str
    family: str
    g: LieAlgebra
    h_basis: list  # coordinate vectors (dicts) in g

    def subalgebra(self) -> Subalgebra:
        return Subalgebra(self.g, self.h_basis, name="h")


def _vec(alg: LieAlgebra, **coefs) -> dict:
    return {alg.basis.index(k): Fraction(v) for k, v in coefs.items() if v}


def _su2_u1(g: LieAlgebra) -> dict:
    """Coordinates of diag(i, -i) in the su(2) basis."""
    target = _realify([[Fraction(0)] * 2] * 2, [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]])
    pairs = _unitary(2, 0, True)
    mats = [_realify(a, b) for a, b in pairs]
    x = solve(Matrix.from_columns(16, [_flat(m) for m in mats]), _flat(target))
    return {k: v for k, v in enumerate(x) if v}


def builtin_pairs() -> list:
    s2 = sl(2)
    s3 = sl(3)
    s22 = direct_sum(sl(2), sl(2), name="sl2+sl2")
    su2 = su(2)
    diag = [_vec(s22, h_1=1, h_2=1), _vec(s22, e_1=1, e_2=1), _vec(s22, f_1=1, f_2=1)]
    return [
        PairSpec("sl2/so2", "sl2", s2, [_vec(s2, e=1, f=-1)]),
        PairSpec("sl2/so1,1", "sl2", s2, [_vec(s2, h=1)]),
        PairSpec("sl2/0", "sl2", s2, []),
        PairSpec("su2/u1", "su2", su2, [_su2_u1(su2)]),
        PairSpec("sl2+sl2/diag", "sl2xsl2", s22, diag),
        PairSpec("sl3/torus", "sl3", s3, [_vec(s3, H1=1)]),
        PairSpec("sl3/sl2", "sl3", s3, [_vec(s3, H1=1), _vec(s3, E12=1), _vec(s3, E21=1)]),
    ]


def builtin_algebras() -> list:
    return [sl(2), split_torus(), direct_sum(sl(2), sl(2), name="sl2+sl2"), sl(3), su(2)]
