"""Hochschild cochains C^n(A, k) and C^n(A, A) and their cohomology.

A degree-n cochain with trivial coefficients is a tensor of shape
``(d,) * n`` (leftmost argument most significant when flattened); with
adjoint coefficients the shape is ``(d,) * n + (d,)``, the output index
last.  The differentials are available twice: as tensor formulas
(:func:`diff_k`, :func:`diff_A`) and as sparse matrices assembled from
index arithmetic (:func:`differential_sparse`).  The two are independent
and the test suite checks them against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .config import ResourceLimitError, guard
from .hopf import HopfData
from .linalg import Matrix, Reduction, SparseMatrix, reduce_system


class Coefficients(str, Enum):
    TRIVIAL = "trivial"
    ADJOINT = "adjoint"

    @classmethod
    def parse(cls, value) -> "Coefficients":
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        if key in ("trivial", "k", "trivial_k"):
            return cls.TRIVIAL
        if key in ("adjoint", "a", "adjoint_a"):
            return cls.ADJOINT
        raise ValueError(f"unknown coefficients {value!r}")


TRIVIAL = Coefficients.TRIVIAL
ADJOINT = Coefficients.ADJOINT


def cochain_shape(d: int, n: int, coeff: Coefficients) -> tuple:
    return (d,) * n + ((d,) if coeff is ADJOINT else ())


@dataclass(frozen=True, eq=False)
class Cochain:
    algebra: HopfData
    degree: int
    coeff: Coefficients
    tensor: np.ndarray

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("cochain degree must be non-negative")
        if not isinstance(self.tensor, np.ndarray) or self.tensor.dtype != self.algebra.field.dtype:
            object.__setattr__(self, "tensor", np.asarray(self.tensor, dtype=self.algebra.field.dtype))
        shape = cochain_shape(self.algebra.dim, self.degree, self.coeff)
        if self.tensor.shape != shape:
            raise ValueError(f"cochain tensor has shape {self.tensor.shape}, expected {shape}")

    @classmethod
    def zero(cls, H: HopfData, n: int, coeff) -> "Cochain":
        coeff = Coefficients.parse(coeff)
        return cls(H, n, coeff, H.field.zeros(cochain_shape(H.dim, n, coeff)))

    @classmethod
    def from_flat(cls, H: HopfData, n: int, coeff, values) -> "Cochain":
        coeff = Coefficients.parse(coeff)
        arr = H.field.array(values).reshape(cochain_shape(H.dim, n, coeff))
        return cls(H, n, coeff, arr)

    @property
    def flat(self) -> np.ndarray:
        return self.tensor.reshape(-1)

    @property
    def field(self):
        return self.algebra.field

    def _compatible(self, other: "Cochain"):
        if (other.algebra is not self.algebra or other.degree != self.degree
                or other.coeff is not self.coeff):
            raise ValueError("cochains live in different spaces")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.algebra, self.degree, self.coeff, self.field.add(self.tensor, other.tensor))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        return Cochain(self.algebra, self.degree, self.coeff, self.field.sub(self.tensor, other.tensor))

    def __neg__(self) -> "Cochain":
        return Cochain(self.algebra, self.degree, self.coeff, self.field.neg(self.tensor))

    def scaled(self, c) -> "Cochain":
        return Cochain(self.algebra, self.degree, self.coeff, self.field.scale(c, self.tensor))

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (other.algebra is self.algebra and other.degree == self.degree
                and other.coeff is self.coeff and self.field.equal(self.tensor, other.tensor))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.tensor)

    def __repr__(self):
        return f"Cochain({self.algebra.name}, degree={self.degree}, {self.coeff.value})"


def first(batch: np.ndarray) -> np.ndarray:
    """batch[0] as an array, also when the entries are 0-d object scalars."""
    return batch[:1].reshape(batch.shape[1:])


# -- tensor-level differentials (batched: leading axis indexes cochains) ----

def diff_k_batch(H: HopfData, arr: np.ndarray, n: int) -> np.ndarray:
    F = H.field
    d = H.dim
    guard(arr.shape[0] * d ** (n + 1), "trivial differential")
    eps = H.counit
    # eps(a1) f(a2 .. a_{n+1})
    out = F.mul(eps.reshape((1, d) + (1,) * n), arr[:, None, ...])
    for i in range(1, n + 1):
        # f(.., a_i a_{i+1}, ..): slot i of f is axis i
        t = F.tensordot(arr, H.mult, ([i], [2]))
        t = np.moveaxis(t, (-2, -1), (i, i + 1))
        out = F.add(out, t) if i % 2 == 0 else F.sub(out, t)
    last = F.mul(arr[..., None], eps)
    out = F.add(out, last) if (n + 1) % 2 == 0 else F.sub(out, last)
    return out


def diff_A_batch(H: HopfData, arr: np.ndarray, p: int) -> np.ndarray:
    F = H.field
    d = H.dim
    guard(arr.shape[0] * d ** (p + 2), "adjoint differential")
    m = H.mult
    # a0 F(a1 .. ap)
    out = np.moveaxis(F.tensordot(arr, m, ([p + 1], [1])), -2, 1)
    for i in range(p):
        # F(a0 .., a_i a_{i+1}, .. ap) with sign (-1)^(i+1); slot i is axis 1 + i
        t = F.tensordot(arr, m, ([1 + i], [2]))
        t = np.moveaxis(t, (-2, -1), (1 + i, 2 + i))
        out = F.add(out, t) if (i + 1) % 2 == 0 else F.sub(out, t)
    # F(a0 .. a_{p-1}) a_p
    last = F.tensordot(arr, m, ([p + 1], [0]))
    out = F.add(out, last) if (p + 1) % 2 == 0 else F.sub(out, last)
    return out


def diff_k(f: Cochain) -> Cochain:
    if f.coeff is not TRIVIAL:
        raise ValueError("diff_k needs a cochain with trivial coefficients")
    out = first(diff_k_batch(f.algebra, f.tensor[None], f.degree))
    return Cochain(f.algebra, f.degree + 1, TRIVIAL, out)


def diff_A(F_: Cochain) -> Cochain:
    if F_.coeff is not ADJOINT:
        raise ValueError("diff_A needs a cochain with adjoint coefficients")
    out = first(diff_A_batch(F_.algebra, F_.tensor[None], F_.degree))
    return Cochain(F_.algebra, F_.degree + 1, ADJOINT, out)


def differential(c: Cochain) -> Cochain:
    return diff_k(c) if c.coeff is TRIVIAL else diff_A(c)


# -- sparse differential matrices ------------------------------------------

def _mult_nonzeros(H: HopfData):
    x, y, s = np.nonzero(H.mult != 0)
    return x.astype(np.int64), y.astype(np.int64), s.astype(np.int64), H.mult[x, y, s]


def _trivial_triplets(H: HopfData, n: int):
    d = H.dim
    F = H.field
    J = np.arange(d ** n, dtype=np.int64)
    rows, cols, vals = [], [], []
    ea = np.flatnonzero(H.counit != 0)
    ev = H.counit[ea]
    # eps(a1) f(a2 ..)
    rows.append((ea[:, None] * d ** n + J[None, :]).reshape(-1))
    cols.append(np.broadcast_to(J, (len(ea), len(J))).reshape(-1))
    vals.append(np.repeat(ev, len(J)))
    x, y, s, v = _mult_nonzeros(H)
    for i in range(1, n + 1):
        P = np.arange(d ** (i - 1), dtype=np.int64)[:, None, None]
        Qs = np.arange(d ** (n - i), dtype=np.int64)[None, None, :]
        hi = d ** (n - i)
        col = P * d * hi + s[None, :, None] * hi + Qs
        row = P * d * d * hi + x[None, :, None] * d * hi + y[None, :, None] * hi + Qs
        rows.append(row.reshape(-1))
        cols.append(col.reshape(-1))
        val = np.broadcast_to(v[None, :, None], row.shape).reshape(-1)
        vals.append(F.neg(val) if i % 2 else val)
    # (-1)^(n+1) f(a1 .. an) eps(a_{n+1})
    rows.append((J[:, None] * d + ea[None, :]).reshape(-1))
    cols.append(np.repeat(J, len(ea)))
    last = np.tile(ev, len(J))
    vals.append(F.neg(last) if (n + 1) % 2 else last)
    return rows, cols, vals


def _adjoint_triplets(H: HopfData, p: int):
    d = H.dim
    F = H.field
    J = np.arange(d ** p, dtype=np.int64)[:, None]
    x, y, s, v = _mult_nonzeros(H)
    rows, cols, vals = [], [], []
    # a0 F(J): m[a0, o, t]
    rows.append(((x[None, :] * d ** p + J) * d + s[None, :]).reshape(-1))
    cols.append((J * d + y[None, :]).reshape(-1))
    vals.append(np.broadcast_to(v[None, :], (J.shape[0], len(v))).reshape(-1))
    for i in range(p):
        P = np.arange(d ** i, dtype=np.int64)[:, None, None, None]
        Qs = np.arange(d ** (p - 1 - i), dtype=np.int64)[None, None, :, None]
        o = np.arange(d, dtype=np.int64)[None, None, None, :]
        hi = d ** (p - 1 - i)
        xs, ys, ss = (a[None, :, None, None] for a in (x, y, s))
        col = (P * d * hi + ss * hi + Qs) * d + o
        row = (P * d * d * hi + xs * d * hi + ys * hi + Qs) * d + o
        rows.append(row.reshape(-1))
        cols.append(col.reshape(-1))
        val = np.broadcast_to(v[None, :, None, None], row.shape).reshape(-1)
        vals.append(val if (i + 1) % 2 == 0 else F.neg(val))
    # (-1)^(p+1) F(a0 .. a_{p-1}) a_p: m[o, a_p, t]
    rows.append(((J * d + y[None, :]) * d + s[None, :]).reshape(-1))
    cols.append((J * d + x[None, :]).reshape(-1))
    last = np.broadcast_to(v[None, :], (J.shape[0], len(v))).reshape(-1)
    vals.append(last if (p + 1) % 2 == 0 else F.neg(last))
    return rows, cols, vals


@lru_cache(maxsize=64)
def differential_sparse(H: HopfData, n: int, coeff) -> SparseMatrix:
    """Matrix of the differential C^n -> C^(n+1) in the tensor bases."""
    coeff = Coefficients.parse(coeff)
    d = H.dim
    extra = 1 if coeff is ADJOINT else 0
    n_rows, n_cols = d ** (n + 1 + extra), d ** (n + extra)
    nnz = H.mult.size * (n + 2) * d ** n
    guard(nnz, "sparse differential")
    if coeff is TRIVIAL:
        rows, cols, vals = _trivial_triplets(H, n)
    else:
        rows, cols, vals = _adjoint_triplets(H, n)
    return SparseMatrix.from_coo(
        H.field, (n_rows, n_cols), np.concatenate(rows), np.concatenate(cols),
        np.concatenate([np.asarray(v, dtype=H.field.dtype) for v in vals]),
    )


def differential_matrix(H: HopfData, n: int, coeff) -> Matrix:
    coeff = Coefficients.parse(coeff)
    d = H.dim
    extra = 1 if coeff is ADJOINT else 0
    guard(d ** (n + 1 + extra) * d ** (n + extra), "differential matrix")
    return differential_sparse(H, n, coeff).to_dense()


# -- cohomology ------------------------------------------------------------

def degree_cap(dim: int) -> int:
    if dim <= 9:
        return 4
    if dim <= 16:
        return 2
    return -1


@lru_cache(maxsize=128)
def _reduction(H: HopfData, n: int, coeff: Coefficients) -> Reduction:
    return reduce_system(differential_sparse(H, n, coeff))


@dataclass
class DegreeData:
    degree: int
    dim_cochains: int
    dim_cocycles: int
    dim_coboundaries: int
    cocycles: np.ndarray = field(repr=False)

    @property
    def dim_cohomology(self) -> int:
        return self.dim_cocycles - self.dim_coboundaries


@dataclass
class CohomologyReport:
    algebra: str
    field: str
    coeff: Coefficients
    degrees: list

    @property
    def dims(self) -> list[int]:
        return [dd.dim_cohomology for dd in self.degrees]

    def cocycle_basis(self, n: int) -> np.ndarray:
        return self.degrees[n].cocycles

    def to_text(self) -> str:
        head = ["n", "dim C^n", "dim Z^n", "dim B^n", "dim H^n"]
        rows = [[str(dd.degree), str(dd.dim_cochains), str(dd.dim_cocycles),
                 str(dd.dim_coboundaries), str(dd.dim_cohomology)] for dd in self.degrees]
        widths = [max(len(r[k]) for r in rows + [head]) for k in range(len(head))]
        fmt = "  ".join("{:>%d}" % w for w in widths)
        lines = [f"H^*({self.algebra}, {'k' if self.coeff is TRIVIAL else 'A'}) over {self.field}",
                 fmt.format(*head)]
        lines += [fmt.format(*r) for r in rows]
        return "\n".join(lines) + "\n"

    def to_dict(self, field_spec=None, include_bases: bool = False) -> dict:
        out = {
            "algebra": self.algebra,
            "field": self.field,
            "coefficients": self.coeff.value,
            "degrees": [],
        }
        for dd in self.degrees:
            entry = {
                "degree": dd.degree,
                "dim_cochains": dd.dim_cochains,
                "dim_cocycles": dd.dim_cocycles,
                "dim_coboundaries": dd.dim_coboundaries,
                "dim_cohomology": dd.dim_cohomology,
            }
            if include_bases and field_spec is not None:
                entry["cocycle_basis"] = [[field_spec.format(x) for x in vec] for vec in dd.cocycles]
            out["degrees"].append(entry)
        return out


def cohomology(H: HopfData, coeff, max_degree: int, override: bool = False) -> CohomologyReport:
    coeff = Coefficients.parse(coeff)
    cap = degree_cap(H.dim)
    if max_degree > cap and not override:
        if cap < 0:
            raise ResourceLimitError(
                f"dimension {H.dim} exceeds the cohomology size limit (16); pass override to force")
        raise ResourceLimitError(
            f"max_degree {max_degree} exceeds the default cap {cap} for dimension {H.dim}")
    d = H.dim
    extra = 1 if coeff is ADJOINT else 0
    degrees = []
    prev_rank = 0
    for n in range(max_degree + 1):
        red = _reduction(H, n, coeff)
        dim_c = d ** (n + extra)
        degrees.append(DegreeData(n, dim_c, dim_c - red.rank, prev_rank, red.kernel))
        prev_rank = red.rank
    return CohomologyReport(H.name, str(H.field), coeff, degrees)


def cocycle_basis(H: HopfData, n: int, coeff=TRIVIAL) -> np.ndarray:
    return _reduction(H, n, Coefficients.parse(coeff)).kernel


def coboundary_preimages(H: HopfData, coeff, n: int, flats) -> list:
    """For degree-n cochains (flattened), x with d(x) = c or None, in order."""
    coeff = Coefficients.parse(coeff)
    if n < 1:
        raise ValueError("coboundaries live in degree >= 1")
    if not len(flats):
        return []
    rhs = np.stack([H.field.array(f) for f in flats], axis=1)
    return reduce_system(differential_sparse(H, n - 1, coeff), rhs).solutions


def is_coboundary(H: HopfData, c: Cochain) -> Cochain | None:
    if c.algebra is not H:
        raise ValueError("cochain belongs to a different algebra")
    sol = coboundary_preimages(H, c.coeff, c.degree, [c.flat])[0]
    if sol is None:
        return None
    return Cochain.from_flat(H, c.degree - 1, c.coeff, sol)
