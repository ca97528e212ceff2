"""Exact dense/sparse linear algebra over F_p and Q.

Everything funnels into one routine, :func:`reduce_system`, which splits a
sparse matrix into the connected blocks of its row/column incidence graph
and row-reduces each block densely.  Over F_p that is a single modular
RREF.  Over Q each block is scaled to integers and reduced modulo large
word-size primes; the candidate RREF is lifted by CRT and rational
reconstruction and accepted only after the kernel vectors (and any
solutions) are verified exactly against the integer matrix.  The
verification makes the answer exact: reduction mod p never raises the
rank, and a verified kernel of the mod-p nullity bounds the rank from
above.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from ._kernels import rref_mod_p
from .config import guard
from .field import FieldSpec, _canon_q, is_prime


class LinAlgError(ValueError):
    pass


class SingularMatrixError(LinAlgError):
    pass


@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense matrix over a FieldSpec (row-major ndarray of canonical entries)."""

    field: FieldSpec
    data: np.ndarray

    def __post_init__(self):
        if self.data.ndim != 2:
            raise LinAlgError("Matrix data must be 2-dimensional")
        guard(self.data.size, "dense matrix")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "Matrix":
        arr = field.array(rows)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        return cls(field, arr)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        guard(rows * cols, "dense matrix")
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, field.eye(n))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            _same_field(self.field, other.field)
            if self.cols != other.rows:
                raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
            return Matrix(self.field, self.field.tensordot(self.data, other.data, 1))
        vec = np.asarray(other)
        if vec.shape[0] != self.cols:
            raise LinAlgError("vector length does not match column count")
        return self.field.tensordot(self.data, vec, 1)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.field.equal(self.data, other.data)

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy())

    def to_sparse(self) -> "SparseMatrix":
        r, c = np.nonzero(self.data != 0)
        return SparseMatrix.from_coo(self.field, self.shape, r, c, self.data[r, c])

    def entries(self) -> list[str]:
        return [self.field.format(x) for x in self.data.reshape(-1)]


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """Coalesced COO matrix: unique (row, col) pairs sorted row-major, no zeros."""

    field: FieldSpec
    shape: tuple
    row: np.ndarray
    col: np.ndarray
    val: np.ndarray

    @classmethod
    def from_coo(cls, field, shape, rows, cols, vals) -> "SparseMatrix":
        rows = np.asarray(rows, dtype=np.int64).reshape(-1)
        cols = np.asarray(cols, dtype=np.int64).reshape(-1)
        vals = np.asarray(vals, dtype=field.dtype).reshape(-1)
        nrows, ncols = int(shape[0]), int(shape[1])
        if rows.size == 0:
            return cls(field, (nrows, ncols), rows, cols, vals)
        key = rows * ncols + cols
        uniq, inv = np.unique(key, return_inverse=True)
        if field.is_prime:
            acc = np.zeros(uniq.size, dtype=np.int64)
            np.add.at(acc, inv, vals % field.p)
            acc %= field.p
        else:
            acc = field.zeros(uniq.size)
            np.add.at(acc, inv, vals)
            acc = _canon_q(acc)
        keep = acc != 0
        uniq = uniq[keep]
        return cls(field, (nrows, ncols), uniq // ncols, uniq % ncols, acc[keep])

    @property
    def nnz(self) -> int:
        return int(self.row.size)

    def to_dense(self) -> Matrix:
        guard(self.shape[0] * self.shape[1], "dense matrix")
        out = self.field.zeros(self.shape)
        out[self.row, self.col] = self.val
        return Matrix(self.field, out)

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            return _sparse_product(self, other)
        arr = np.asarray(other)
        vec = arr.ndim == 1
        if vec:
            arr = arr.reshape(-1, 1)
        if arr.shape[0] != self.shape[1]:
            raise LinAlgError("operand rows do not match column count")
        fast = self._dense_fast(arr)
        if fast is not None:
            return fast.reshape(-1) if vec else fast
        other_sp = _dense_to_sparse(self.field, arr)
        out = _sparse_product(self, other_sp)
        dense = self.field.zeros((self.shape[0], arr.shape[1]))
        dense[out.row, out.col] = out.val
        return dense.reshape(-1) if vec else dense

    @cached_property
    def _int_csr(self):
        # (csr, max |entry|, max row length) when all entries are machine integers
        if self.field.is_prime:
            vals = self.val
        else:
            if any(type(x) is not int for x in self.val):
                return None
            vals = np.asarray(self.val, dtype=object)
            if vals.size and max(abs(int(x)) for x in vals) >= 1 << 62:
                return None
            vals = vals.astype(np.int64)
        csr = sparse.csr_matrix((vals, (self.row, self.col)), shape=self.shape)
        bound = int(np.abs(vals).max(initial=0))
        width = int(np.diff(csr.indptr).max(initial=0))
        return csr, bound, width

    def _dense_fast(self, arr: np.ndarray):
        info = self._int_csr
        if info is None:
            return None
        csr, bound, width = info
        if self.field.is_prime:
            ints = arr.astype(np.int64)
            top = self.field.p - 1
        else:
            if arr.size and any(type(x) is not int for x in arr.flat):
                return None
            top = max((abs(int(x)) for x in arr.flat), default=0)
            if top >= 1 << 62:
                return None
            ints = arr.astype(np.int64)
        if bound * top * max(width, 1) >= 1 << 62:
            return None
        out = csr @ ints
        if self.field.is_prime:
            return np.mod(out, self.field.p)
        return out.astype(object)

    def __repr__(self):
        return f"SparseMatrix({self.field}, {self.shape[0]}x{self.shape[1]}, nnz={self.nnz})"


def _same_field(a: FieldSpec, b: FieldSpec):
    if a != b:
        raise LinAlgError(f"field mismatch: {a} vs {b}")


def _dense_to_sparse(field, arr):
    r, c = np.nonzero(arr != 0)
    return SparseMatrix(field, arr.shape, r.astype(np.int64), c.astype(np.int64),
                        np.asarray(arr[r, c], dtype=field.dtype))


# -- sparse products ------------------------------------------------------

def _common_denominator(vals) -> int:
    den = 1
    for x in vals:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    return den


def _int_product(ar, ac, av, ashape, br, bc, bv, bshape):
    """Exact product of two integer COO matrices (values: Python ints or int64)."""
    max_a = max((abs(int(x)) for x in av), default=0)
    max_b = max((abs(int(x)) for x in bv), default=0)
    inner = max(int(np.bincount(ac, minlength=1).max(initial=0)), 1)
    if max_a * max_b * inner < (1 << 62):
        A = sparse.csr_matrix((np.asarray(av, dtype=np.int64), (ar, ac)), shape=ashape)
        B = sparse.csr_matrix((np.asarray(bv, dtype=np.int64), (br, bc)), shape=bshape)
        C = (A @ B).tocoo()
        return C.row.astype(np.int64), C.col.astype(np.int64), C.data.astype(object)
    # arbitrary precision fallback
    by_row: dict[int, list] = {}
    for r, c, v in zip(br.tolist(), bc.tolist(), bv):
        by_row.setdefault(r, []).append((c, int(v)))
    acc: dict[tuple, int] = {}
    for r, c, v in zip(ar.tolist(), ac.tolist(), av):
        for cc, w in by_row.get(c, ()):
            acc[(r, cc)] = acc.get((r, cc), 0) + int(v) * w
    keys = sorted(k for k, v in acc.items() if v)
    rows = np.array([k[0] for k in keys], dtype=np.int64)
    cols = np.array([k[1] for k in keys], dtype=np.int64)
    vals = np.array([acc[k] for k in keys], dtype=object)
    return rows, cols, vals


def _sparse_product(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    _same_field(a.field, b.field)
    if a.shape[1] != b.shape[0]:
        raise LinAlgError(f"shape mismatch {a.shape} @ {b.shape}")
    field = a.field
    shape = (a.shape[0], b.shape[1])
    if field.is_prime:
        p = field.p
        inner = max(int(np.bincount(a.col, minlength=1).max(initial=0)), 1)
        if (p - 1) ** 2 * inner < (1 << 62):
            A = sparse.csr_matrix((a.val, (a.row, a.col)), shape=a.shape)
            B = sparse.csr_matrix((b.val, (b.row, b.col)), shape=b.shape)
            C = (A @ B).tocoo()
            return SparseMatrix.from_coo(field, shape, C.row, C.col, C.data % p)
        r, c, v = _int_product(a.row, a.col, list(a.val), a.shape,
                               b.row, b.col, list(b.val), b.shape)
        return SparseMatrix.from_coo(field, shape, r, c,
                                     np.array([x % p for x in v], dtype=np.int64))
    da = _common_denominator(a.val)
    db = _common_denominator(b.val)
    av = [int(x * da) for x in a.val]
    bv = [int(x * db) for x in b.val]
    r, c, v = _int_product(a.row, a.col, av, a.shape, b.row, b.col, bv, b.shape)
    den = da * db
    vals = np.array([Fraction(int(x), den) for x in v], dtype=object)
    return SparseMatrix.from_coo(field, shape, r, c, vals)


# -- public operations ----------------------------------------------------

def _as_sparse(m) -> SparseMatrix:
    if isinstance(m, SparseMatrix):
        return m
    if isinstance(m, Matrix):
        return m.to_sparse()
    raise TypeError(f"expected Matrix or SparseMatrix, got {type(m).__name__}")


def rank(m) -> int:
    return reduce_system(_as_sparse(m)).rank


def kernel_basis(m) -> np.ndarray:
    """Canonical (RREF) basis of the right null space, one vector per row.

    Vector ``k`` has a 1 in the ``k``-th free column and zeros in the other
    free columns; rows are ordered by free column.
    """
    return reduce_system(_as_sparse(m)).kernel


def solve(m, b):
    """Some x with m @ x == b, or None when the system is inconsistent."""
    sp = _as_sparse(m)
    b = sp.field.array(b)
    if b.shape != (sp.shape[0],):
        raise LinAlgError(f"right-hand side has length {b.shape}, expected {sp.shape[0]}")
    return reduce_system(sp, b.reshape(-1, 1)).solutions[0]


def solve_many(m, rhs: np.ndarray) -> list:
    """Column-wise solve for a (rows x k) right-hand-side array."""
    sp = _as_sparse(m)
    rhs = np.asarray(rhs)
    if rhs.ndim != 2 or rhs.shape[0] != sp.shape[0]:
        raise LinAlgError("right-hand sides must be a (rows x k) array")
    return reduce_system(sp, rhs).solutions


def invert(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise LinAlgError("cannot invert a non-square matrix")
    n = m.rows
    res = reduce_system(m.to_sparse(), m.field.eye(n))
    if res.rank < n:
        raise SingularMatrixError("matrix is singular")
    out = m.field.zeros((n, n))
    for j, x in enumerate(res.solutions):
        out[:, j] = x
    return Matrix(m.field, out)


# -- the reduction engine -------------------------------------------------

@dataclass
class Reduction:
    rank: int
    pivots: np.ndarray
    kernel: np.ndarray
    solutions: list


def blocks(sp: SparseMatrix):
    """Connected blocks of the row/column incidence graph.

    Returns a list of (row_indices, col_indices) with both index arrays
    sorted; zero rows and zero columns are omitted.
    """
    nr, nc = sp.shape
    if sp.nnz == 0:
        return []
    adj = sparse.coo_matrix(
        (np.ones(sp.nnz, dtype=np.int8), (sp.row, nr + sp.col)), shape=(nr + nc, nr + nc)
    )
    _, labels = connected_components(adj, directed=False)
    used_rows = np.zeros(nr, dtype=bool)
    used_rows[sp.row] = True
    used_cols = np.zeros(nc, dtype=bool)
    used_cols[sp.col] = True
    row_lab = labels[:nr]
    col_lab = labels[nr:]
    rows_sorted = np.flatnonzero(used_rows)
    cols_sorted = np.flatnonzero(used_cols)
    rl = row_lab[rows_sorted]
    cl = col_lab[cols_sorted]
    r_order = np.argsort(rl, kind="stable")
    c_order = np.argsort(cl, kind="stable")
    r_groups = np.split(rows_sorted[r_order], np.flatnonzero(np.diff(rl[r_order])) + 1)
    c_groups = np.split(cols_sorted[c_order], np.flatnonzero(np.diff(cl[c_order])) + 1)
    out = []
    for rg, cg in zip(r_groups, c_groups):
        # label order matches because every component has a row and a column
        out.append((rg, cg))
    out.sort(key=lambda rc: rc[1][0])
    return out


def reduce_system(sp: SparseMatrix, rhs: np.ndarray | None = None) -> Reduction:
    field = sp.field
    nr, nc = sp.shape
    k = 0 if rhs is None else rhs.shape[1]
    if rhs is not None:
        rhs = field.array(rhs)
    pivots: list[np.ndarray] = []
    kernel_cols: dict[int, tuple] = {}
    sols = [field.zeros(nc) for _ in range(k)]
    solvable = [True] * k

    if rhs is not None and k:
        covered = np.zeros(nr, dtype=bool)
        covered[sp.row] = True
        stray = rhs[~covered]
        for s in range(k):
            if np.any(stray[:, s] != 0):
                solvable[s] = False

    order = np.lexsort((sp.col, sp.row))
    row_s, col_s, val_s = sp.row[order], sp.col[order], sp.val[order]
    row_start = np.searchsorted(row_s, np.arange(nr + 1))

    for rg, cg in blocks(sp):
        # gather block entries
        idx = np.concatenate([np.arange(row_start[r], row_start[r + 1]) for r in rg])
        loc_r = np.searchsorted(rg, row_s[idx])
        loc_c = np.searchsorted(cg, col_s[idx])
        vals = val_s[idx]
        brhs = rhs[rg] if k else None
        guard(len(rg) * (len(cg) + k), "dense block")
        if field.is_prime:
            piv, red_free, red_sol, ok = _block_mod_p(field.p, len(rg), len(cg), loc_r, loc_c, vals, brhs)
        else:
            piv, red_free, red_sol, ok = _block_rational(len(rg), len(cg), loc_r, loc_c, vals, brhs)
        gpiv = cg[piv]
        pivots.append(gpiv)
        free = np.setdiff1d(np.arange(len(cg)), piv)
        for t, j in enumerate(free):
            kernel_cols[int(cg[j])] = (gpiv, red_free[:, t])
        for s in range(k):
            if not ok[s]:
                solvable[s] = False
            elif solvable[s]:
                sols[s][gpiv] = red_sol[:, s]

    allp = np.sort(np.concatenate(pivots)) if pivots else np.zeros(0, dtype=np.int64)
    is_piv = np.zeros(nc, dtype=bool)
    is_piv[allp] = True
    free_cols = np.flatnonzero(~is_piv)
    guard(len(free_cols) * nc, "kernel basis")
    kernel = field.zeros((len(free_cols), nc))
    for t, j in enumerate(free_cols):
        kernel[t, j] = 1
        entry = kernel_cols.get(int(j))
        if entry is not None:
            gpiv, coeffs = entry
            kernel[t, gpiv] = coeffs
    solutions = [sols[s] if solvable[s] else None for s in range(k)]
    return Reduction(len(allp), allp, kernel, solutions)


def _block_mod_p(p, nr, nc, loc_r, loc_c, vals, brhs):
    k = 0 if brhs is None else brhs.shape[1]
    a = np.zeros((nr, nc + k), dtype=np.int64)
    a[loc_r, loc_c] = vals
    if k:
        a[:, nc:] = brhs
    piv = rref_mod_p(a, p, nc)
    r = len(piv)
    free = np.setdiff1d(np.arange(nc), piv)
    red_free = (-a[:r, free]) % p
    ok = [not np.any(a[r:, nc + s]) for s in range(k)]
    red_sol = a[:r, nc:]
    return piv, red_free, red_sol, ok


# -- rational blocks ------------------------------------------------------

_PRIMES: list[int] = []


def _prime(i: int) -> int:
    while len(_PRIMES) <= i:
        q = (_PRIMES[-1] if _PRIMES else (1 << 31)) - 1
        while not is_prime(q):
            q -= 1
        _PRIMES.append(q)
    return _PRIMES[i]


MAX_PRIMES = 24


def _ratrecon(a: int, m: int):
    bound = isqrt(m // 2)
    r0, r1, s0, s1 = m, a % m, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    return r1 if s1 == 1 else Fraction(r1, s1)


def _reconstruct(res: np.ndarray, m: int):
    """Rational reconstruction of an object array of residues mod m."""
    out = np.empty(res.shape, dtype=object)
    flat_in = res.reshape(-1)
    flat = out.reshape(-1)
    small = 1 << 20
    for i, a in enumerate(flat_in):
        a = int(a)
        if a <= small:
            flat[i] = a
        elif m - a <= small:
            flat[i] = a - m
        else:
            x = _ratrecon(a, m)
            if x is None:
                return None
            flat[i] = x
    return out


def _to_int_rows(nr, loc_r, vals, brhs):
    """Scale each row (and its right-hand sides) by the lcm of its denominators."""
    dens = [1] * nr
    for r, v in zip(loc_r.tolist(), vals):
        if isinstance(v, Fraction):
            dens[r] = lcm(dens[r], v.denominator)
    if brhs is not None:
        for r in range(nr):
            for v in brhs[r]:
                if isinstance(v, Fraction):
                    dens[r] = lcm(dens[r], v.denominator)
    ivals = [int(v * dens[r]) for r, v in zip(loc_r.tolist(), vals)]
    irhs = None
    if brhs is not None:
        irhs = np.empty(brhs.shape, dtype=object)
        for r in range(nr):
            for s in range(brhs.shape[1]):
                irhs[r, s] = int(brhs[r, s] * dens[r])
    return ivals, irhs


def _int_matvec_zero(nr, nc, loc_r, loc_c, ivals, vecs: np.ndarray) -> bool:
    """True iff M @ vecs == 0 for integer sparse M and an integer (nc x t) array."""
    if vecs.shape[1] == 0:
        return True
    vr, vc = np.nonzero(vecs != 0)
    r, c, v = _int_product(loc_r, loc_c, ivals, (nr, nc),
                           vr.astype(np.int64), vc.astype(np.int64), list(vecs[vr, vc]),
                           vecs.shape)
    return not any(x != 0 for x in v)


def _integral_columns(mat: np.ndarray) -> np.ndarray:
    """Scale each column of a rational object array to integers."""
    out = np.empty(mat.shape, dtype=object)
    for j in range(mat.shape[1]):
        den = _common_denominator(mat[:, j])
        out[:, j] = [int(x * den) for x in mat[:, j]]
    return out


def _block_rational(nr, nc, loc_r, loc_c, vals, brhs):
    k = 0 if brhs is None else brhs.shape[1]
    ivals, irhs = _to_int_rows(nr, loc_r, vals, brhs)
    obj_vals = np.array(ivals, dtype=object)
    best = None  # (pivots, [(p, reduced)])
    for i in range(MAX_PRIMES):
        p = _prime(i)
        a = np.zeros((nr, nc + k), dtype=np.int64)
        a[loc_r, loc_c] = np.mod(obj_vals, p).astype(np.int64)
        if k:
            a[:, nc:] = np.mod(irhs, p).astype(np.int64)
        piv = rref_mod_p(a, p, nc)
        if best is not None:
            bp = best[0]
            if len(piv) < len(bp) or (len(piv) == len(bp) and tuple(piv) > tuple(bp)):
                continue
            if len(piv) > len(bp) or tuple(piv) != tuple(bp):
                best = None
        if best is None:
            best = (piv, [])
        best[1].append((p, a))
        out = _lift_block(nr, nc, k, loc_r, loc_c, ivals, irhs, best[0], best[1])
        if out is not None:
            return out
    return _block_fraction(nr, nc, loc_r, loc_c, vals, brhs)


def _lift_block(nr, nc, k, loc_r, loc_c, ivals, irhs, piv, images):
    r = len(piv)
    free = np.setdiff1d(np.arange(nc), piv)
    cols = np.concatenate([free, nc + np.arange(k)]).astype(np.int64)
    # CRT over all images sharing the pivot pattern
    modulus = 1
    acc = None
    for p, a in images:
        part = a[:r, cols].astype(object)
        if acc is None:
            acc, modulus = part, p
            continue
        inv = pow(modulus, -1, p)
        acc = acc + modulus * (((part - acc) * inv) % p)
        modulus *= p
    # rows below the rank: residual right-hand-side entries certify inconsistency
    p0, a0 = images[0]
    ok = [not np.any(a0[r:, nc + s]) for s in range(k)]
    lifted = _reconstruct(acc, modulus)
    if lifted is None:
        return None
    red_free = -lifted[:, : len(free)] if len(free) else np.zeros((r, 0), dtype=object)
    red_free = _canon_q(red_free)
    kern = np.zeros((nc, len(free)), dtype=object)
    for t, j in enumerate(free):
        kern[j, t] = 1
        kern[piv, t] = red_free[:, t]
    if not _int_matvec_zero(nr, nc, loc_r, loc_c, ivals, _integral_columns(kern)):
        return None
    red_sol = lifted[:, len(free):]
    for s in range(k):
        if not ok[s]:
            continue
        x = np.zeros(nc, dtype=object)
        x[piv] = red_sol[:, s]
        # M x == b  <=>  [M | -b] (x; 1) == 0 after integer scaling
        aug_c = np.concatenate([loc_c, np.full(nr, nc, dtype=np.int64)])
        aug_r = np.concatenate([loc_r, np.arange(nr, dtype=np.int64)])
        aug_v = list(ivals) + [-int(v) for v in irhs[:, s]]
        vec = np.concatenate([x, np.array([1], dtype=object)]).reshape(-1, 1)
        if not _int_matvec_zero(nr, nc + 1, aug_r, aug_c, aug_v, _integral_columns(vec)):
            return None
    return piv, red_free, red_sol, ok


def _block_fraction(nr, nc, loc_r, loc_c, vals, brhs):
    """Plain Gauss-Jordan over Fractions; last-resort path for hostile inputs."""
    k = 0 if brhs is None else brhs.shape[1]
    a = [[Fraction(0)] * (nc + k) for _ in range(nr)]
    for r, c, v in zip(loc_r.tolist(), loc_c.tolist(), vals):
        a[r][c] = Fraction(v)
    for r in range(nr):
        for s in range(k):
            a[r][nc + s] = Fraction(brhs[r, s])
    piv = []
    row = 0
    for c in range(nc):
        sel = next((i for i in range(row, nr) if a[i][c] != 0), None)
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        inv = 1 / a[row][c]
        a[row] = [x * inv for x in a[row]]
        for i in range(nr):
            if i != row and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        piv.append(c)
        row += 1
        if row == nr:
            break
    piv = np.array(piv, dtype=np.int64)
    r = len(piv)
    free = np.setdiff1d(np.arange(nc), piv)
    red_free = _canon_q(np.array([[-a[t][j] for j in free] for t in range(r)], dtype=object).reshape(r, len(free)))
    red_sol = _canon_q(np.array([[a[t][nc + s] for s in range(k)] for t in range(r)], dtype=object).reshape(r, k))
    ok = [all(a[t][nc + s] == 0 for t in range(r, nr)) for s in range(k)]
    return piv, red_free, red_sol, ok
