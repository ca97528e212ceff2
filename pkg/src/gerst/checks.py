"""Verification runs for the hat map, braces, cup commutativity and the bracket.

Every check draws its inputs from echelon cocycle bases of the differential.
A basis with at most ``FULL_BASIS_LIMIT`` vectors is used in full; a larger
one is replaced by ``trials`` seeded random combinations of its vectors.
Pairs and triples are enumerated lexicographically so that the first
failure found is the lexicographically first failing tuple.

``inject`` names a map (``hat``, ``brace``, ``cup``, ``bracket``) whose
first output inside the run gets one scalar perturbed; it exists to show
that each check can fail.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from itertools import product
from math import gcd, lcm

import numpy as np

from .cochains import (
    ADJOINT, TRIVIAL, Cochain, Coefficients, cocycle_basis, coboundary_preimages,
    cochain_shape, degree_cap, diff_A_batch, differential_sparse,
)
from .config import ResourceLimitError
from .gerstenhaber import (
    bracket, bracket_sign, brace_i, brace_i_k, circ_k, cup_A_batch, cup_k_batch,
    epsilon_push_batch, hat_batch,
)
from .hopf import HopfData
from .report import CheckReport

FULL_BASIS_LIMIT = 64
CHUNK = 16
WITNESS_INLINE = 256
INJECT_TARGETS = ("hat", "brace", "cup", "bracket")


class _Injector:
    def __init__(self, target: str | None, field):
        if target is not None and target not in INJECT_TARGETS:
            raise ValueError(f"unknown injection target {target!r}")
        self.target = target
        self.field = field
        self.fired = False

    def __call__(self, name: str, arr: np.ndarray) -> np.ndarray:
        if name != self.target or self.fired or arr.size == 0:
            return arr
        self.fired = True
        out = arr.copy()
        flat = out.reshape(-1)
        flat[0] = self.field.elem(flat[0] + 1)
        return out


# -- inputs ----------------------------------------------------------------

def _integral_rows(field, basis: np.ndarray) -> np.ndarray:
    """Over Q, rescale each basis vector to coprime integers."""
    if field.is_prime or basis.size == 0:
        return basis
    out = np.empty(basis.shape, dtype=object)
    for r, row in enumerate(basis):
        den = lcm(*(Fraction(x).denominator for x in row))
        ints = [int(Fraction(x) * den) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        g = g or 1
        out[r] = [v // g for v in ints]
    return out


def _budget(H: HopfData, n: int, override: bool):
    cap = degree_cap(H.dim)
    if n > cap and not override:
        raise ResourceLimitError(
            f"degree {n} exceeds the cap {max(cap, 0)} for dimension {H.dim}; pass override to force")


class _Inputs:
    """Cocycles of each degree as flat rows, full basis or seeded combinations."""

    def __init__(self, H: HopfData, trials: int, seed: int, coeff=TRIVIAL):
        self.H = H
        self.trials = trials
        self.coeff = Coefficients.parse(coeff)
        self.rng = np.random.default_rng(seed)
        self._cache: dict = {}

    def basis(self, n: int) -> np.ndarray:
        return _integral_rows(self.H.field, cocycle_basis(self.H, n, self.coeff))

    def get(self, n: int) -> tuple[np.ndarray, str, int]:
        if n not in self._cache:
            B = self.basis(n)
            if B.shape[0] <= FULL_BASIS_LIMIT:
                self._cache[n] = (B, "full", B.shape[0])
            else:
                self._cache[n] = (self._combos(B, self.trials), "sampled", B.shape[0])
        return self._cache[n]

    def _combos(self, B: np.ndarray, count: int) -> np.ndarray:
        F = self.H.field
        if B.shape[0] == 0:
            return F.zeros((count, B.shape[1]))
        coeffs = F.random((count, B.shape[0]), self.rng, bound=3)
        return F.tensordot(coeffs, B, ([1], [0]))

    def sample(self, n: int, count: int) -> np.ndarray:
        """``count`` random combinations regardless of basis size."""
        return self._combos(self.basis(n), count)

    def generic(self, n: int) -> np.ndarray:
        """``trials`` random cochains (not necessarily cocycles) of degree n."""
        shape = cochain_shape(self.H.dim, n, self.coeff)
        return self.H.field.random((self.trials,) + shape, self.rng, bound=3)

    def tensors(self, n: int, rows: np.ndarray) -> np.ndarray:
        shape = cochain_shape(self.H.dim, n, self.coeff)
        return rows.reshape((rows.shape[0],) + shape)


def _sparse(field, arr: np.ndarray) -> list:
    arr = np.asarray(arr)
    idx = np.argwhere(np.asarray(arr != 0))
    return [[[int(k) for k in ix], field.format(arr[tuple(ix)])] for ix in idx]


def _cochain_doc(field, n: int, coeff, arr: np.ndarray) -> dict:
    return {"degree": n, "coefficients": Coefficients.parse(coeff).value, "entries": _sparse(field, arr)}


def _suspects(lhs: np.ndarray, rhs: np.ndarray) -> list[int]:
    """Batch positions where lhs and rhs differ, in order."""
    diff = np.asarray(lhs != rhs).reshape(lhs.shape[0], -1)
    return [int(k) for k in np.flatnonzero(diff.any(axis=1))]


def _mismatch(field, lhs: np.ndarray, rhs: np.ndarray) -> dict | None:
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    bad = np.argwhere(np.asarray(lhs != rhs))
    if bad.shape[0] == 0:
        return None
    ix = tuple(int(k) for k in bad[0])
    return {"basis_tuple": list(ix), "lhs": field.format(lhs[ix]), "rhs": field.format(rhs[ix])}


class _Run:
    def __init__(self, report: CheckReport, field):
        self.report = report
        self.field = field

    def item(self, name: str, failure: dict | None, **extra):
        self.report.add(name, failure is None, **extra)
        if failure is not None and self.report.counterexample is None:
            self.report.counterexample = {"item": name, **failure}


def _chunks(count: int):
    for start in range(0, count, CHUNK):
        yield start, min(start + CHUNK, count)


def _hat(H, arr, inj):
    return inj("hat", hat_batch(H, arr))


# -- hat is a multiplicative section of the counit pushforward ------------

def check_thm2(H: HopfData, max_degree: int = 2, trials: int = 20, seed: int = 0,
               inject: str | None = None, override: bool = False) -> CheckReport:
    _budget(H, max_degree, override)
    F = H.field
    inj = _Injector(inject, F)
    inputs = _Inputs(H, trials, seed)
    rep = CheckReport("thm2", H.name, {"max_degree": max_degree, "trials": trials, "seed": seed})
    run = _Run(rep, F)

    # unary properties always run over the full cocycle basis
    for n in range(max_degree + 1):
        rows = inputs.basis(n)
        mode, nb = "full", rows.shape[0]
        fs = inputs.tensors(n, rows)
        D = differential_sparse(H, n, ADJOINT)
        pres = sect = None
        for a, b in _chunks(fs.shape[0]):
            hf = _hat(H, fs[a:b], inj)
            if pres is None:
                dh = (D @ hf.reshape(b - a, -1).T).T.reshape((b - a,) + cochain_shape(H.dim, n + 1, ADJOINT))
                zero = F.zeros(dh.shape)
                for k in _suspects(dh, zero):
                    m = _mismatch(F, dh[k], zero[k])
                    if m is not None:
                        pres = {"f": _cochain_doc(F, n, TRIVIAL, fs[a + k]), "index": [a + k], **m}
                        break
            if sect is None:
                back = np.asarray(epsilon_push_batch(H, hf)).reshape(fs[a:b].shape)
                for k in _suspects(back, fs[a:b]):
                    m = _mismatch(F, back[k], fs[a + k])
                    if m is not None:
                        sect = {"f": _cochain_doc(F, n, TRIVIAL, fs[a + k]), "index": [a + k], **m}
                        break
            if pres is not None and sect is not None:
                break
        run.item(f"cocycle_preservation[n={n}]", pres, inputs=mode, basis=nb, tested=fs.shape[0])
        run.item(f"section[n={n}]", sect, inputs=mode, basis=nb, tested=fs.shape[0])

    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            fr, fmode, _ = inputs.get(p)
            gr, gmode, _ = inputs.get(q)
            fs, gs = inputs.tensors(p, fr), inputs.tensors(q, gr)
            hf, hg = hat_batch(H, fs), hat_batch(H, gs)
            failure = None
            pairs = list(product(range(fs.shape[0]), range(gs.shape[0])))
            for a, b in _chunks(len(pairs)):
                ii = np.array([x for x, _ in pairs[a:b]], dtype=np.int64)
                jj = np.array([y for _, y in pairs[a:b]], dtype=np.int64)
                lhs = _hat(H, cup_k_batch(H, fs[ii], gs[jj]), inj)
                rhs = inj("cup", cup_A_batch(H, hf[ii], hg[jj]))
                for k in _suspects(lhs, rhs):
                    m = _mismatch(F, lhs[k], rhs[k])
                    if m is not None:
                        failure = {"f": _cochain_doc(F, p, TRIVIAL, fs[ii[k]]),
                                   "g": _cochain_doc(F, q, TRIVIAL, gs[jj[k]]),
                                   "index": [int(ii[k]), int(jj[k])], **m}
                        break
                if failure is not None:
                    break
            run.item(f"multiplicativity[p={p},q={q}]", failure,
                     inputs=f"{fmode}x{gmode}", tested=len(pairs))
    return rep


# -- the hat image is stable under braces ----------------------------------

def check_thm3(H: HopfData, p: int, q: int, trials: int = 20, seed: int = 0,
               inject: str | None = None, override: bool = False) -> CheckReport:
    """hat(f) o_i hat(g) = hat(f o_i hat(g)) on cocycle pairs (all basis pairs
    when small) and, as ``[generic]`` items, on ``trials`` random cochain pairs."""
    if p < 1:
        raise ValueError("check_thm3 needs p >= 1")
    _budget(H, max(p, q, p + q - 1), override)
    F = H.field
    inj = _Injector(inject, F)
    inputs = _Inputs(H, trials, seed)
    rep = CheckReport("thm3", H.name, {"p": p, "q": q, "trials": trials, "seed": seed})
    run = _Run(rep, F)
    fr, fmode, _ = inputs.get(p)
    gr, gmode, _ = inputs.get(q)
    fs, gs = inputs.tensors(p, fr), inputs.tensors(q, gr)
    pairs = list(product(range(fs.shape[0]), range(gs.shape[0])))
    fz, gz = inputs.generic(p), inputs.generic(q)
    zpairs = [(k, k) for k in range(trials)]
    for suffix, xs, ys, todo, mode in (("", fs, gs, pairs, f"{fmode}x{gmode}"),
                                       ("[generic]", fz, gz, zpairs, "random cochains")):
        hf, hg = _hat(H, xs, inj), _hat(H, ys, inj)
        for i in range(1, p + 1):
            failure = None
            for x, y in todo:
                Gy = Cochain(H, q, ADJOINT, hg[y])
                lhs = inj("brace", brace_i(Cochain(H, p, ADJOINT, hf[x]), Gy, i).tensor)
                inner = brace_i_k(Cochain(H, p, TRIVIAL, xs[x]), Gy, i)
                rhs = _hat(H, inner.tensor[None], inj)[0]
                m = _mismatch(F, lhs, rhs)
                if m is not None:
                    failure = {"f": _cochain_doc(F, p, TRIVIAL, xs[x]),
                               "g": _cochain_doc(F, q, TRIVIAL, ys[y]), "i": i, "index": [x, y], **m}
                    break
            run.item(f"brace_stability[i={i}]{suffix}", failure, inputs=mode, tested=len(todo))
    return rep


# -- graded commutativity of the cup product in cohomology -----------------

def _witness_doc(field, pair: int, x: np.ndarray) -> dict:
    entries = _sparse(field, x)
    doc = {"pair": pair, "nnz": len(entries)}
    if len(entries) <= WITNESS_INLINE:
        doc["preimage"] = entries
    else:
        doc["sha256"] = hashlib.sha256(repr(entries).encode()).hexdigest()
    return doc


def _coboundary_item(H, run, rep, name, coeff, n, diffs, docs):
    """Solve d(x) = diff for every row of diffs; certify each preimage."""
    F = H.field
    flats = [dd.reshape(-1) for dd in diffs]
    sols = coboundary_preimages(H, coeff, n, flats)
    D = differential_sparse(H, n - 1, coeff)
    failure = None
    for k, (c, x) in enumerate(zip(flats, sols)):
        if x is None:
            failure = {"index": [k], **docs(k), "reason": "not a coboundary"}
            break
        image = D @ x
        if not F.equal(image, c):
            m = _mismatch(F, image, c)
            failure = {"index": [k], **docs(k), "reason": "witness does not certify", **m}
            break
        rep.witnesses.append({"item": name, **_witness_doc(F, k, x)})
    run.item(name, failure, tested=len(flats))


def check_commutativity(H: HopfData, p: int, q: int, trials: int = 20, seed: int = 0,
                        inject: str | None = None, override: bool = False,
                        adjoint: bool | None = None) -> CheckReport:
    n = p + q
    _budget(H, n, override)
    F = H.field
    inj = _Injector(inject, F)
    inputs = _Inputs(H, trials, seed)
    rep = CheckReport("comm", H.name, {"p": p, "q": q, "trials": trials, "seed": seed})
    run = _Run(rep, F)
    sign = -1 if (p * q) % 2 else 1
    fs = inputs.tensors(p, inputs.sample(p, trials))
    gs = inputs.tensors(q, inputs.sample(q, trials))

    def docs(k):
        return {"f": _cochain_doc(F, p, TRIVIAL, fs[k]), "g": _cochain_doc(F, q, TRIVIAL, gs[k])}

    if n == 0:
        run.item("cup_commutes[k]", None, tested=trials)
        return rep
    fg = inj("cup", cup_k_batch(H, fs, gs))
    gf = cup_k_batch(H, gs, fs)
    diffs = F.sub(fg, gf) if sign > 0 else F.add(fg, gf)
    _coboundary_item(H, run, rep, "cup_commutes[k]", TRIVIAL, n, diffs, docs)

    if adjoint is None:
        adjoint = H.dim ** (n + 1) <= 9 ** 5
    if adjoint:
        hf, hg = hat_batch(H, fs), hat_batch(H, gs)
        FG = inj("cup", cup_A_batch(H, hf, hg))
        GF = cup_A_batch(H, hg, hf)
        diffs = F.sub(FG, GF) if sign > 0 else F.add(FG, GF)
        _coboundary_item(H, run, rep, "cup_commutes[A]", ADJOINT, n, diffs, docs)
    return rep


# -- bracket: closure of the hat image, antisymmetry, Jacobi ----------------

DEFAULT_CONFIGS = ((1, 1, 1), (1, 1, 2))


def _sgn(k: int) -> int:
    return -1 if k % 2 else 1


def _jacobi(F1: Cochain, F2: Cochain, F3: Cochain) -> Cochain:
    p, q, r = F1.degree, F2.degree, F3.degree
    t1 = bracket(bracket(F1, F2), F3).scaled(_sgn((p - 1) * (r - 1)))
    t2 = bracket(bracket(F2, F3), F1).scaled(_sgn((q - 1) * (p - 1)))
    t3 = bracket(bracket(F3, F1), F2).scaled(_sgn((r - 1) * (q - 1)))
    return t1 + t2 + t3


def _closure(H, run, inj, p, q, fs, gs, pairs, mode, suffix):
    """bracket(hat f, hat g) = hat(f o hat g -+ g o hat f); for cocycle inputs
    also that the bracket is again a cocycle."""
    F = H.field
    hf, hg = hat_batch(H, fs), hat_batch(H, gs)
    s = bracket_sign(p, q)
    cocycles = not suffix
    closure = cocyc = None
    for x, y in pairs:
        Fx, Gy = Cochain(H, p, ADJOINT, hf[x]), Cochain(H, q, ADJOINT, hg[y])
        lhs = inj("bracket", bracket(Fx, Gy).tensor)
        def doc():
            return {"f": _cochain_doc(F, p, TRIVIAL, fs[x]), "g": _cochain_doc(F, q, TRIVIAL, gs[y]),
                    "index": [x, y]}
        if closure is None:
            inner = circ_k(Cochain(H, p, TRIVIAL, fs[x]), Gy)
            other = circ_k(Cochain(H, q, TRIVIAL, gs[y]), Fx)
            inner = inner - other if s > 0 else inner + other
            m = _mismatch(F, lhs, hat_batch(H, inner.tensor[None])[0])
            if m is not None:
                closure = {**doc(), **m}
        if cocycles and cocyc is None:
            dl = diff_A_batch(H, lhs[None], p + q - 1)[0]
            m = _mismatch(F, dl, F.zeros(dl.shape))
            if m is not None:
                cocyc = {**doc(), **m}
        if closure is not None and (cocyc is not None or not cocycles):
            break
    run.item(f"closure[p={p},q={q}]{suffix}", closure, inputs=mode, tested=len(pairs))
    if cocycles:
        run.item(f"hat_bracket_cocycle[p={p},q={q}]", cocyc, tested=len(pairs))


def check_bracket_structure(H: HopfData, max_total: int = 3, trials: int = 10, seed: int = 0,
                            inject: str | None = None, override: bool = False,
                            configs=DEFAULT_CONFIGS) -> CheckReport:
    """Closure of the hat image for p + q <= max_total, then antisymmetry,
    Jacobi and cocycle closure on sampled triples of adjoint cocycles."""
    top = max([max_total] + [sum(c) - 2 for c in configs] + [max(c) for c in configs])
    _budget(H, top, override)
    F = H.field
    inj = _Injector(inject, F)
    inputs = _Inputs(H, trials, seed)
    adj = _Inputs(H, trials, seed + 1, coeff=ADJOINT)
    rep = CheckReport("bracket", H.name, {
        "max_total": max_total, "trials": trials, "seed": seed,
        "configs": [list(c) for c in configs],
    })
    run = _Run(rep, F)

    for total in range(1, max_total + 1):
        for p in range(total + 1):
            q = total - p
            fr, fmode, _ = inputs.get(p)
            gr, gmode, _ = inputs.get(q)
            fs, gs = inputs.tensors(p, fr), inputs.tensors(q, gr)
            pairs = list(product(range(fs.shape[0]), range(gs.shape[0])))
            _closure(H, run, inj, p, q, fs, gs, pairs, f"{fmode}x{gmode}", "")
            fz, gz = inputs.generic(p), inputs.generic(q)
            _closure(H, run, inj, p, q, fz, gz, [(k, k) for k in range(trials)],
                     "random cochains", "[generic]")

    for config in configs:
        p, q, r = config
        A = adj.tensors(p, adj.sample(p, trials))
        B = adj.tensors(q, adj.sample(q, trials))
        C = adj.tensors(r, adj.sample(r, trials))
        anti = jac = cocyc = None
        for k in range(trials):
            F1, F2, F3 = (Cochain(H, n, ADJOINT, T[k]) for n, T in ((p, A), (q, B), (r, C)))
            docs = {"F": _cochain_doc(F, p, ADJOINT, A[k]), "G": _cochain_doc(F, q, ADJOINT, B[k]),
                    "H": _cochain_doc(F, r, ADJOINT, C[k]), "index": [k]}
            b12 = bracket(F1, F2)
            if anti is None:
                b21 = bracket(F2, F1)
                total = b12 + b21 if bracket_sign(p, q) > 0 else b12 - b21
                m = _mismatch(F, total.tensor, F.zeros(total.tensor.shape))
                if m is not None:
                    anti = {**docs, **m}
            if jac is None:
                J = _jacobi(F1, F2, F3)
                m = _mismatch(F, J.tensor, F.zeros(J.tensor.shape))
                if m is not None:
                    jac = {**docs, **m}
            if cocyc is None:
                dl = diff_A_batch(H, b12.tensor[None], p + q - 1)[0]
                m = _mismatch(F, dl, F.zeros(dl.shape))
                if m is not None:
                    cocyc = {**docs, **m}
        tag = ",".join(map(str, config))
        bases = [adj.basis(n).shape[0] for n in config]
        run.item(f"antisymmetry[{tag}]", anti, bases=bases, tested=trials)
        run.item(f"jacobi[{tag}]", jac, bases=bases, tested=trials)
        run.item(f"bracket_cocycle[{tag}]", cocyc, bases=bases, tested=trials)
    return rep
