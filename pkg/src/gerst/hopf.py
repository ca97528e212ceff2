"""Finite-dimensional Hopf algebras given by structure constants.

Conventions (basis e_0 .. e_{d-1}):

* ``mult[i, j, k]``   coefficient of e_k in e_i * e_j
* ``comult[i, j, k]`` coefficient of e_j (x) e_k in Delta(e_i)
* ``antipode[:, i]``  coordinates of S(e_i)
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations

import numpy as np

from .field import FieldSpec
from .report import CheckReport


class HopfAxiomError(ValueError):
    def __init__(self, report: CheckReport):
        failed = [it for it in report.items if not it["passed"]]
        desc = ", ".join(f"{it['name']} at {it.get('witness')}" for it in failed)
        super().__init__(f"{report.algebra}: Hopf axioms fail: {desc}")
        self.report = report


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class HopfData:
    field: FieldSpec
    dim: int
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    name: str = "H"
    provenance: str | None = None

    def __post_init__(self):
        d = self.dim
        if d < 1:
            raise ValueError("dimension must be positive")
        shapes = {
            "mult": (d, d, d), "unit": (d,), "comult": (d, d, d),
            "counit": (d,), "antipode": (d, d),
        }
        for key, shape in shapes.items():
            if getattr(self, key).shape != shape:
                raise ValueError(f"{key} has shape {getattr(self, key).shape}, expected {shape}")

    def renamed(self, name: str, provenance: str | None = None) -> "HopfData":
        return replace(self, name=name, provenance=provenance)

    def same_structure(self, other: "HopfData") -> bool:
        f = self.field.equal
        return (self.field == other.field and self.dim == other.dim
                and f(self.mult, other.mult) and f(self.unit, other.unit)
                and f(self.comult, other.comult) and f(self.counit, other.counit)
                and f(self.antipode, other.antipode))

    def __repr__(self):
        return f"HopfData({self.name!r}, dim={self.dim}, field={self.field})"


def _check_vec(H: HopfData, v, length=None) -> np.ndarray:
    arr = H.field.array(v)
    n = H.dim if length is None else length
    if arr.shape != (n,):
        raise ValueError(f"expected a vector of length {n}, got shape {arr.shape}")
    return arr


def multiply(H: HopfData, v, w) -> np.ndarray:
    v, w = _check_vec(H, v), _check_vec(H, w)
    td = H.field.tensordot
    return td(w, td(v, H.mult, 1), ([0], [0]))


def comultiply(H: HopfData, v) -> np.ndarray:
    """Delta(v) flattened: component (j, k) sits at j * dim + k."""
    v = _check_vec(H, v)
    return H.field.tensordot(v, H.comult, 1).reshape(-1)


def comult_power(H: HopfData, n: int) -> np.ndarray:
    """Tensor T[i, j1, .., jn] of the n-fold coproduct of e_i.

    Each step applies Delta to the first tensor slot, (Delta (x) id ...).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    td = H.field.tensordot
    d = H.dim
    t = H.field.eye(d)
    for _ in range(n - 1):
        # t[i, s, rest] -> sum_s t[i, s, rest] * comult[s, a, b] -> [i, a, b, rest]
        t = td(t, H.comult, ([1], [0]))
        t = np.moveaxis(t, (-2, -1), (1, 2))
    return t


def iterated_comult(H: HopfData, v, n: int) -> np.ndarray:
    v = _check_vec(H, v)
    from .config import guard
    guard(H.dim ** n, "iterated coproduct")
    return H.field.tensordot(v, comult_power(H, n), 1).reshape(-1)


def counit(H: HopfData, v):
    v = _check_vec(H, v)
    return H.field.scalar(H.field.tensordot(v, H.counit, 1)[()])


def antipode(H: HopfData, v) -> np.ndarray:
    v = _check_vec(H, v)
    return H.field.tensordot(H.antipode, v, 1)


# -- axiom checker ---------------------------------------------------------

def _first_mismatch(lhs, rhs):
    bad = np.argwhere(np.asarray(lhs != rhs))
    if bad.shape[0] == 0:
        return None
    return tuple(int(x) for x in bad[0])


def check_hopf_axioms(H: HopfData) -> CheckReport:
    F = H.field
    td = F.tensordot
    d = H.dim
    m, u, c, e, S = H.mult, H.unit, H.comult, H.counit, H.antipode
    eye = F.eye(d)
    rep = CheckReport("hopf_axioms", H.name, {"dim": d, "field": str(F)})

    def record(name, lhs, rhs):
        w = _first_mismatch(lhs, rhs)
        if w is None:
            rep.add(name, True)
        else:
            rep.add(name, False, witness=list(w))

    # (e_i e_j) e_k vs e_i (e_j e_k), indexed [i, j, k, t]
    left = td(m, m, ([2], [0]))
    right = np.transpose(td(m, m, ([2], [1])), (2, 0, 1, 3))
    record("associativity", left, right)

    record("unit_left", td(u, m, 1), eye)
    record("unit_right", td(u, m, ([0], [1])), eye)

    # (Delta (x) id) Delta vs (id (x) Delta) Delta, indexed [i, a, b, c]
    co_l = np.transpose(td(c, c, ([1], [0])), (0, 2, 3, 1))
    co_r = td(c, c, ([2], [0]))
    record("coassociativity", co_l, co_r)

    record("counit_left", td(c, e, ([1], [0])), eye)
    record("counit_right", td(c, e, ([2], [0])), eye)

    # Delta(e_i e_j) = Delta(e_i) Delta(e_j), indexed [i, j, a, b]
    lhs = td(m, c, ([2], [0]))
    w = None
    for i in range(d):
        y = td(c[i], m, ([0], [0]))                     # [b1, a2, a]
        x = td(y, c, ([1], [1]))                        # [b1, a, j, b2]
        z = td(x, m, ([0, 3], [0, 1]))                  # [a, j, b]
        rhs_i = np.transpose(z, (1, 0, 2))
        wi = _first_mismatch(lhs[i], rhs_i)
        if wi is not None:
            w = (i,) + wi
            break
    rep.add("bialgebra_comult", w is None, **({} if w is None else {"witness": list(w)}))
    record("bialgebra_unit", td(u, c, 1), F.outer(u, u))
    record("bialgebra_counit", td(m, e, ([2], [0])), F.outer(e, e))
    record("counit_of_unit", np.array([F.scalar(td(u, e, 1)[()])], dtype=object),
           np.array([1], dtype=object))

    # sum S(a1) a2 and sum a1 S(a2) against eps(a) 1, indexed [i, t]
    eps_one = F.outer(e, u)
    sc = td(c, S, ([1], [1]))                           # [i, k, l]
    record("antipode_left", td(sc, m, ([2, 1], [0, 1])), eps_one)
    cs = td(c, S, ([2], [1]))                           # [i, j, l]
    record("antipode_right", td(cs, m, ([1, 2], [0, 1])), eps_one)
    return rep


def ensure_hopf(H: HopfData) -> HopfData:
    rep = check_hopf_axioms(H)
    if not rep.passed:
        raise HopfAxiomError(rep)
    return H


# -- constructors ----------------------------------------------------------

def _validate_group(table) -> tuple[int, list[int]]:
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise GroupTableError("Cayley table must be a non-empty square")
    for i in range(n):
        for j in range(n):
            if not 0 <= table[i][j] < n:
                raise GroupTableError(f"entry ({i},{j}) out of range")
    ident = next((e for e in range(n)
                  if all(table[e][g] == g and table[g][e] == g for g in range(n))), None)
    if ident is None:
        raise GroupTableError("no identity element")
    inv = []
    for g in range(n):
        h = next((h for h in range(n) if table[g][h] == ident and table[h][g] == ident), None)
        if h is None:
            raise GroupTableError(f"element {g} has no inverse")
        inv.append(h)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise GroupTableError(f"not associative at ({a},{b},{c})")
    return ident, inv


def group_algebra(table, field: FieldSpec, name: str = "kG") -> HopfData:
    ident, inv = _validate_group(table)
    d = len(table)
    mult = field.zeros((d, d, d))
    comult = field.zeros((d, d, d))
    S = field.zeros((d, d))
    for g in range(d):
        comult[g, g, g] = 1
        S[inv[g], g] = 1
        for h in range(d):
            mult[g, h, table[g][h]] = 1
    unit = field.zeros(d)
    unit[ident] = 1
    counit = field.array([1] * d)
    return ensure_hopf(HopfData(field, d, mult, unit, comult, counit, S, name))


def cyclic_table(n: int):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_table(n: int):
    perms = list(permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    return [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]


def is_primitive_root(q, n: int, field: FieldSpec) -> bool:
    q = field.scalar(q)
    powers = [field.scalar(q ** m) for m in range(1, n + 1)]
    return powers[-1] == 1 and all(x != 1 for x in powers[:-1])


def taft_algebra(n: int, q, field: FieldSpec, name: str | None = None) -> HopfData:
    """Taft algebra: basis g^i x^j at index i*n + j, x g = q g x, x^n = 0."""
    if n < 2:
        raise ValueError("Taft algebras need n >= 2")
    if not is_primitive_root(q, n, field):
        raise ValueError(f"{q} is not a primitive {n}-th root of unity in {field}")
    q = field.scalar(q)
    d = n * n
    mult = field.zeros((d, d, d))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j + l < n:
                        # x^j g^k = q^{jk} g^k x^j
                        mult[i * n + j, k * n + l, ((i + k) % n) * n + j + l] = field.elem(q ** (j * k))
    unit = field.zeros(d)
    unit[0] = 1
    td = field.tensordot

    def prod(v, w):
        return td(w, td(v, mult, 1), ([0], [0]))

    def prod2(X, Y):
        # product in A (x) A of d x d coefficient arrays
        t = td(X, mult, ([0], [0]))          # [b1, a2, a]
        t = td(t, Y, ([1], [0]))             # [b1, a, b2]
        t = td(t, mult, ([0, 2], [0, 1]))    # [a, b]
        return t

    g = field.zeros(d); g[n] = 1
    x = field.zeros(d); x[1] = 1
    one2 = field.outer(unit, unit)
    dg = field.outer(g, g)
    dx = field.add(field.outer(x, unit), field.outer(g, x))
    comult = field.zeros((d, d, d))
    gpow = [unit]
    for _ in range(n - 1):
        gpow.append(prod(gpow[-1], g))
    dgpow = [one2]
    for _ in range(n - 1):
        dgpow.append(prod2(dgpow[-1], dg))
    dxpow = [one2]
    for _ in range(n - 1):
        dxpow.append(prod2(dxpow[-1], dx))
    ginv = gpow[n - 1]
    Sx = field.neg(prod(ginv, x))
    S = field.zeros((d, d))
    sxpow = [unit]
    for _ in range(n - 1):
        sxpow.append(prod(sxpow[-1], Sx))
    for i in range(n):
        for j in range(n):
            comult[i * n + j] = prod2(dgpow[i], dxpow[j])
            # S(g^i x^j) = S(x)^j S(g)^i, S(g) = g^{-1}
            S[:, i * n + j] = prod(sxpow[j], gpow[(-i) % n])
    counit = field.zeros(d)
    for i in range(n):
        counit[i * n] = 1
    if name is None:
        name = "sweedler" if n == 2 else f"taft:{n}:{field.format(q)}"
    return ensure_hopf(HopfData(field, d, mult, unit, comult, counit, S, name))


def dual_hopf(H: HopfData, name: str | None = None) -> HopfData:
    """Dual Hopf algebra on the dual basis delta_i."""
    mult = np.transpose(H.comult, (1, 2, 0)).copy()
    comult = np.transpose(H.mult, (2, 0, 1)).copy()
    D = HopfData(H.field, H.dim, mult, H.counit.copy(), comult, H.unit.copy(),
                 H.antipode.T.copy(), name or f"dual:{H.name}")
    return ensure_hopf(D)
