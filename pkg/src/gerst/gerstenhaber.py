"""Cochain-level structure maps: cup products, hat, counit pushforward, braces, bracket.

Every map is a tensor contraction over basis indices.  The ``*_batch``
variants act on a stack of cochains (leading axis) and are what the
theorem checks use; the :class:`Cochain` wrappers validate their inputs.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .cochains import ADJOINT, TRIVIAL, Cochain, first
from .config import guard
from .hopf import HopfData


class StructureError(ValueError):
    """Mismatched algebras, coefficients or an out-of-range brace index."""


def _same_algebra(*cochains: Cochain) -> HopfData:
    H = cochains[0].algebra
    for c in cochains[1:]:
        if c.algebra is not H:
            raise StructureError("cochains belong to different algebras")
    return H


def _expect(c: Cochain, coeff, role: str):
    if c.coeff is not coeff:
        raise StructureError(f"{role} must have {coeff.value} coefficients, got {c.coeff.value}")


def circ_sign(p: int, q: int, i: int) -> int:
    """Sign of F o_i G inside F o G for deg F = p, deg G = q.

    This is Gerstenhaber's (-1)^((q-1)(i-1)); with the exponent q(i-1) the
    bracket already fails the Jacobi identity on (2,1,1) cochains.
    """
    return -1 if ((q - 1) * (i - 1)) % 2 else 1


def bracket_sign(p: int, q: int) -> int:
    return -1 if ((p - 1) * (q - 1)) % 2 else 1


# -- batched kernels -------------------------------------------------------

def cup_k_batch(H: HopfData, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Pairwise cup over matching leading axes: out[b] = f[b] cup g[b]."""
    p, q = f.ndim - 1, g.ndim - 1
    guard(f.shape[0] * H.dim ** (p + q), "cup product")
    fa = f.reshape(f.shape + (1,) * q)
    ga = g.reshape(g.shape[:1] + (1,) * p + g.shape[1:])
    return H.field.mul(fa, ga)


def cup_A_batch(H: HopfData, F_: np.ndarray, G: np.ndarray) -> np.ndarray:
    p, q = F_.ndim - 2, G.ndim - 2
    d = H.dim
    guard(F_.shape[0] * d ** (p + q + 1), "cup product")
    fld = H.field
    out = []
    for b in range(F_.shape[0]):
        t = fld.tensordot(F_[b], H.mult, ([p], [0]))                 # [a.., t, u]
        t = fld.tensordot(t, G[b], ([p], [q]))                      # [a.., u, b..]
        out.append(np.moveaxis(t, p, -1))
    return np.stack(out) if out else fld.zeros((0,) + (d,) * (p + q + 1))


@lru_cache(maxsize=32)
def _hat_kernel(H: HopfData) -> np.ndarray:
    # K[y, t', a, t] = sum_x c[a, x, y] m[t', x, t]
    K = H.field.tensordot(H.comult, H.mult, ([1], [1]))             # [a, y, t', t]
    return np.ascontiguousarray(np.transpose(K, (1, 2, 0, 3)))


def hat_batch(H: HopfData, f: np.ndarray) -> np.ndarray:
    p = f.ndim - 1
    d = H.dim
    fld = H.field
    guard(f.shape[0] * d ** (p + 2), "hat")
    # S[B, a1..a_{j-1}, y_j..y_p, t']: t' accumulates a1_1 ... a{j-1}_1
    S = fld.mul(f[..., None], H.unit)
    K = _hat_kernel(H)
    for j in range(1, p + 1):
        S = fld.tensordot(S, K, ([j, p + 1], [0, 1]))               # [B, a<j, y>j, a, t]
        S = np.moveaxis(S, -2, j)
    return S


def epsilon_push_batch(H: HopfData, F_: np.ndarray) -> np.ndarray:
    return H.field.tensordot(F_, H.counit, ([F_.ndim - 1], [0]))


def _insert(H: HopfData, outer: np.ndarray, G: np.ndarray, i: int, p: int, q: int) -> np.ndarray:
    # outer has p input axes (plus maybe an output axis); G has q inputs + output
    t = H.field.tensordot(G, outer, ([q], [i - 1]))                 # [b.., a<i, a>i, (out)]
    return np.moveaxis(t, list(range(q)), list(range(i - 1, i - 1 + q)))


# -- public operations on Cochain ------------------------------------------

def cup_k(f: Cochain, g: Cochain) -> Cochain:
    H = _same_algebra(f, g)
    _expect(f, TRIVIAL, "f")
    _expect(g, TRIVIAL, "g")
    out = first(cup_k_batch(H, f.tensor[None], g.tensor[None]))
    return Cochain(H, f.degree + g.degree, TRIVIAL, out)


def cup_A(F_: Cochain, G: Cochain) -> Cochain:
    H = _same_algebra(F_, G)
    _expect(F_, ADJOINT, "F")
    _expect(G, ADJOINT, "G")
    out = first(cup_A_batch(H, F_.tensor[None], G.tensor[None]))
    return Cochain(H, F_.degree + G.degree, ADJOINT, out)


def hat(f: Cochain) -> Cochain:
    _expect(f, TRIVIAL, "f")
    out = first(hat_batch(f.algebra, f.tensor[None]))
    return Cochain(f.algebra, f.degree, ADJOINT, out)


def epsilon_push(F_: Cochain) -> Cochain:
    _expect(F_, ADJOINT, "F")
    out = first(epsilon_push_batch(F_.algebra, F_.tensor[None]))
    return Cochain(F_.algebra, F_.degree, TRIVIAL, out)


def _check_index(p: int, i: int):
    if p < 1 or not 1 <= i <= p:
        raise StructureError(f"brace index {i} outside 1..{p}")


def brace_i(F_: Cochain, G: Cochain, i: int) -> Cochain:
    """F o_i G: the output of G fed into input slot i of F."""
    H = _same_algebra(F_, G)
    _expect(F_, ADJOINT, "F")
    _expect(G, ADJOINT, "G")
    p, q = F_.degree, G.degree
    _check_index(p, i)
    guard(H.dim ** (p + q), "brace")
    out = _insert(H, F_.tensor, G.tensor, i, p, q)
    return Cochain(H, p + q - 1, ADJOINT, out)


def brace_i_k(f: Cochain, G: Cochain, i: int) -> Cochain:
    """f o_i G for a k-valued f and an A-valued G."""
    H = _same_algebra(f, G)
    _expect(f, TRIVIAL, "f")
    _expect(G, ADJOINT, "G")
    p, q = f.degree, G.degree
    _check_index(p, i)
    guard(H.dim ** (p + q - 1), "brace")
    out = _insert(H, f.tensor, G.tensor, i, p, q)
    return Cochain(H, p + q - 1, TRIVIAL, np.asarray(out, dtype=H.field.dtype))


def _signed_sum(outer: Cochain, G: Cochain, coeff, brace) -> Cochain:
    H = _same_algebra(outer, G)
    p, q = outer.degree, G.degree
    if p + q - 1 < 0:
        raise StructureError("composition of two degree-0 cochains has degree -1")
    total = Cochain.zero(H, p + q - 1, coeff)
    for i in range(1, p + 1):
        term = brace(outer, G, i)
        total = total + term if circ_sign(p, q, i) > 0 else total - term
    return total


def circ(F_: Cochain, G: Cochain) -> Cochain:
    """F o G = sum_i (-1)^((q-1)(i-1)) F o_i G; zero when deg F = 0."""
    _expect(F_, ADJOINT, "F")
    _expect(G, ADJOINT, "G")
    return _signed_sum(F_, G, ADJOINT, brace_i)


def circ_k(f: Cochain, G: Cochain) -> Cochain:
    _expect(f, TRIVIAL, "f")
    _expect(G, ADJOINT, "G")
    return _signed_sum(f, G, TRIVIAL, brace_i_k)


def bracket(F_: Cochain, G: Cochain) -> Cochain:
    """[F, G] = F o G - (-1)^((p-1)(q-1)) G o F."""
    left = circ(F_, G)
    right = circ(G, F_)
    return left - right if bracket_sign(F_.degree, G.degree) > 0 else left + right


def identity_cochain(H: HopfData) -> Cochain:
    """id_A as an adjoint 1-cochain."""
    return Cochain(H, 1, ADJOINT, H.field.eye(H.dim))


def unit_cochain(H: HopfData) -> Cochain:
    """1_A as an adjoint 0-cochain."""
    return Cochain(H, 0, ADJOINT, H.unit.copy())


def counit_cochain(H: HopfData) -> Cochain:
    """epsilon as a trivial 1-cochain."""
    return Cochain(H, 1, TRIVIAL, H.counit.copy())


def scalar_cochain(H: HopfData, c) -> Cochain:
    return Cochain(H, 0, TRIVIAL, np.asarray(H.field.elem(c), dtype=H.field.dtype).reshape(()))
