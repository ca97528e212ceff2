"""Drinfeld double D(H) = H*^cop (x) H of a finite-dimensional Hopf algebra.

Basis index ``i * dim(H) + a`` stands for delta_i (x) e_a.  Multiplication

    (f (x) a)(g (x) b) = sum f (a1 -> g <- S^-1(a3)) (x) a2 b,
    (x -> g <- y)(h) = g(y h x),

comultiplication Delta(f (x) a) = sum (f2 (x) a1) (x) (f1 (x) a2), counit
f(1) eps(a).  The antipode is solved for as the convolution inverse of the
identity, and the finished structure must pass the full axiom check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hopf import HopfData, comult_power, ensure_hopf
from .linalg import LinAlgError, Matrix, invert, solve


@dataclass(frozen=True, eq=False)
class DoubleData:
    underlying: HopfData
    factor_dims: tuple
    provenance: str


def antipode_inverse(H: HopfData) -> Matrix:
    return invert(Matrix(H.field, H.antipode))


def _double_mult(H: HopfData, sinv: np.ndarray) -> np.ndarray:
    F = H.field
    td = F.tensordot
    d = H.dim
    m, c = H.mult, H.comult
    c3 = comult_power(H, 3)                                   # [a, x, y, z]
    # W[z, h, x, k] = coefficient of e_k in S^-1(e_z) e_h e_x
    w = td(sinv, m, ([0], [0]))                               # [z, h, s], sinv is [l, z]
    w = td(w, m, ([2], [0]))                                  # [z, h, x, k]
    # P[a, y, h, k] = sum_{x,z} c3[a,x,y,z] W[z,h,x,k]: value at e_h of a1 -> delta_k <- S^-1(a3)
    P = td(c3, w, ([1, 3], [2, 0]))                           # [a, y, h, k]
    # delta_i * phi: coefficient of delta_r is sum_h comult[r, i, h] phi_h
    Q = td(P, c, ([2], [2]))                                  # [a, y, k, r, i]
    # a2 b: sum_y m[y, b, t]
    R = td(Q, m, ([1], [0]))                                  # [a, k, r, i, b, t]
    # -> [i, a, k, b, r, t]
    R = np.transpose(R, (3, 0, 1, 4, 2, 5))
    return np.ascontiguousarray(R).reshape(d * d, d * d, d * d)


def _solve_antipode(F, n, mult, unit, comult, counit) -> np.ndarray:
    # unknown S[l, j]; equation (x, t): sum_{j,k,l} c[x,j,k] S[l,j] m[l,k,t] = eps(x) u(t)
    td = F.tensordot
    coeff = td(comult, mult, ([2], [1]))                      # [x, j, l, t]
    coeff = np.transpose(coeff, (0, 3, 2, 1)).reshape(n * n, n * n)   # rows (x,t), cols (l,j)
    rhs = F.outer(counit, unit).reshape(-1)
    sol = solve(Matrix(F, coeff), rhs)
    if sol is None:
        raise LinAlgError("antipode system of the double is inconsistent")
    return sol.reshape(n, n)


def drinfeld_double(H: HopfData) -> DoubleData:
    ensure_hopf(H)
    F = H.field
    d = H.dim
    n = d * d
    sinv = antipode_inverse(H).data
    # sinv[l, z]: coefficient of e_l in S^-1(e_z)
    mult = _double_mult(H, sinv)
    unit = F.outer(H.counit, H.unit).reshape(-1)
    counit = F.outer(H.unit, H.counit).reshape(-1)
    # Delta(delta_i (x) e_a) = sum m[j,k,i] c[a,x,y] (k,x) (x) (j,y)
    cd = F.outer(H.mult, H.comult)                            # [j, k, i, a, x, y]
    cd = np.transpose(cd, (2, 3, 1, 4, 0, 5))                 # [i, a, k, x, j, y]
    comult = np.ascontiguousarray(cd).reshape(n, n, n)
    S = _solve_antipode(F, n, mult, unit, comult, counit)
    D = HopfData(F, n, mult, unit, comult, counit, S, f"double:{H.name}", provenance=H.name)
    ensure_hopf(D)
    return DoubleData(D, (d, d), H.name)
