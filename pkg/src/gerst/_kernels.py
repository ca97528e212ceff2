"""Row reduction mod p: numba kernel with a pure-numpy fallback.

Both paths produce the reduced row echelon form in place and return the
pivot columns; pivots are chosen as the first nonzero entry in column
order, so the two backends agree bit for bit.
"""

import numpy as np

from .config import use_numba

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _rref_numpy(a, p, pivot_cols):
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(pivot_cols):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        rows = np.flatnonzero(a[:, c])
        rows = rows[rows != r]
        if rows.size:
            f = a[rows, c]
            a[rows, c:] = (a[rows, c:] + np.outer(p - f, a[r, c:])) % p
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


if numba is not None:

    @numba.njit(cache=True)
    def _modinv(x, p):
        t, new_t = 0, 1
        r, new_r = p, x
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @numba.njit(cache=True)
    def _rref_numba(a, p, pivot_cols):
        m, n = a.shape
        pivots = np.empty(min(m, pivot_cols), np.int64)
        nzcols = np.empty(n, np.int64)
        r = 0
        for c in range(pivot_cols):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, n):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _modinv(a[r, c], p)
            cnt = 0
            for j in range(c, n):
                if a[r, j] != 0:
                    a[r, j] = (a[r, j] * inv) % p
                    nzcols[cnt] = j
                    cnt += 1
            for i in range(m):
                if i == r:
                    continue
                f = a[i, c]
                if f == 0:
                    continue
                g = p - f
                for t in range(cnt):
                    j = nzcols[t]
                    a[i, j] = (a[i, j] + g * a[r, j]) % p
            pivots[r] = c
            r += 1
        return pivots[:r]


def rref_mod_p(a: np.ndarray, p: int, pivot_cols: int | None = None) -> np.ndarray:
    """Reduce ``a`` (int64, entries in [0, p)) to RREF in place; return pivots.

    Pivots are only searched in the first ``pivot_cols`` columns; row
    operations still act on the full width (augmented systems).
    """
    if pivot_cols is None:
        pivot_cols = a.shape[1]
    if a.shape[0] == 0 or pivot_cols == 0:
        return np.zeros(0, dtype=np.int64)
    if numba is not None and use_numba():
        return _rref_numba(a, np.int64(p), np.int64(pivot_cols))
    return _rref_numpy(a, p, pivot_cols)
