"""Exact scalar fields: prime fields F_p and the rationals.

Arrays over F_p are ``int64`` residues in ``[0, p)``.  Arrays over Q are
``object`` arrays holding Python ``int`` or ``fractions.Fraction`` values;
integral entries are kept as plain ints so that integral data (every
built-in algebra) can take the int64 fast path in contractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

_INT64_SAFE = 1 << 62
# float64 represents every integer below 2**53 exactly, so a BLAS product
# whose partial sums stay below that bound is an exact integer product
_FLOAT_SAFE = 1 << 53


class FieldError(ValueError):
    """Scalar or field mismatch."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for k in range(3, isqrt(n) + 1, 2):
        if n % k == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not is_prime(int(self.p)):
                raise FieldError(f"{self.p!r} is not a prime")
            if self.p >= 1 << 31:
                raise FieldError("prime fields require p < 2**31")
            object.__setattr__(self, "p", int(self.p))
        elif self.kind == "rational":
            if self.p is not None:
                raise FieldError("rational field takes no modulus")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def characteristic(self) -> int:
        return self.p if self.is_prime else 0

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    def __str__(self):
        return f"F_{self.p}" if self.is_prime else "Q"

    def to_json(self) -> dict:
        if self.is_prime:
            return {"kind": "prime", "p": self.p}
        return {"kind": "rational"}

    @classmethod
    def from_json(cls, doc) -> "FieldSpec":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise FieldError("field must be an object with a 'kind' key")
        if doc["kind"] == "prime":
            return cls.prime(int(doc["p"]))
        if doc["kind"] == "rational":
            return cls.rational()
        raise FieldError(f"unknown field kind {doc['kind']!r}")

    # -- scalars -----------------------------------------------------------

    def scalar(self, x) -> int | Fraction:
        """Canonical representative: residue for F_p, reduced Fraction for Q."""
        if self.is_prime:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        return Fraction(x)

    def _q(self, x):
        # internal Q representation: int when integral
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else x

    def elem(self, x):
        """Array-entry representation of a scalar (ints for integral rationals)."""
        return self.scalar(x) if self.is_prime else self._q(x)

    def parse(self, text: str):
        text = str(text).strip()
        try:
            if self.is_prime:
                if "/" in text:
                    raise ValueError(text)
                return int(text) % self.p
            return self.scalar(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse scalar {text!r} over {self}") from exc

    def format(self, x) -> str:
        x = self.scalar(x)
        if self.is_prime:
            return str(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def inv(self, x):
        x = self.scalar(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime:
            return pow(x, -1, self.p)
        return 1 / x

    # -- arrays ------------------------------------------------------------

    def array(self, values) -> np.ndarray:
        """Coerce values (nested lists, arrays, scalars) to a canonical array."""
        if self.is_prime:
            if isinstance(values, np.ndarray) and values.dtype != object:
                return np.mod(values.astype(np.int64, copy=False), self.p)
            arr = np.array(values, dtype=object)
            out = np.empty(arr.shape, dtype=np.int64)
            flat = out.reshape(-1)
            for k, x in enumerate(arr.reshape(-1)):
                flat[k] = self.scalar(x)
            return out
        arr = np.array(values, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        flat = out.reshape(-1)
        for k, x in enumerate(arr.reshape(-1)):
            flat[k] = self._q(x)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1
        return out

    def reduce(self, arr) -> np.ndarray:
        if self.is_prime:
            return np.mod(arr, self.p)
        return arr

    def neg(self, arr):
        return self.reduce(-arr)

    def sub(self, a, b):
        return self.reduce(a - b)

    def add(self, a, b):
        return self.reduce(a + b)

    def mul(self, a, b):
        """Elementwise (broadcasting) product."""
        if self.is_prime:
            return np.mod(np.multiply(a, b), self.p)
        return np.multiply(a, b)

    def scale(self, c, arr):
        c = self.scalar(c) if self.is_prime else self._q(c)
        if self.is_prime:
            return np.mod(arr * c, self.p)
        return arr * c

    def outer(self, a, b):
        return self.reduce(np.multiply.outer(a, b))

    def is_zero(self, arr) -> bool:
        return not np.any(arr != 0)

    def equal(self, a, b) -> bool:
        return np.shape(a) == np.shape(b) and not np.any(np.asarray(a) != np.asarray(b))

    def random(self, shape, rng: np.random.Generator, bound: int = 5) -> np.ndarray:
        """Seeded random array; over Q entries are integers in [-bound, bound]."""
        if self.is_prime:
            return rng.integers(0, self.p, size=shape, dtype=np.int64)
        ints = rng.integers(-bound, bound + 1, size=shape)
        return ints.astype(object)

    def tensordot(self, a, b, axes) -> np.ndarray:
        """Exact ``np.tensordot`` with overflow-safe int64 paths."""
        a = np.asarray(a)
        b = np.asarray(b)
        if isinstance(axes, int):
            k = int(np.prod(a.shape[a.ndim - axes:], dtype=np.int64)) if axes else 1
        else:
            ax = axes[0] if isinstance(axes[0], (list, tuple)) else [axes[0]]
            k = int(np.prod([a.shape[i] for i in ax], dtype=np.int64)) if ax else 1
        k = max(k, 1)
        if self.is_prime:
            p = self.p
            if (p - 1) * (p - 1) * k < _FLOAT_SAFE:
                return _float_tensordot(a, b, axes, p)
            if (p - 1) * (p - 1) * k < _INT64_SAFE:
                return np.mod(np.tensordot(a, b, axes), p)
            # split b into 16-bit halves to keep partial sums in range
            if (p - 1) * (1 << 16) * k < _INT64_SAFE:
                lo = b & 0xFFFF
                hi = b >> 16
                r_lo = np.mod(np.tensordot(a, lo, axes), p)
                r_hi = np.mod(np.tensordot(a, hi, axes), p)
                return np.mod(r_hi * (1 << 16) % p + r_lo, p)
            res = np.tensordot(a.astype(object), b.astype(object), axes)
            return np.mod(res, p).astype(np.int64)
        ia = _int64_view(a)
        ib = _int64_view(b) if ia is not None else None
        if ia is not None and ib is not None:
            ma = int(np.abs(ia).max(initial=0))
            mb = int(np.abs(ib).max(initial=0))
            if ma * mb * k < _FLOAT_SAFE:
                return _float_tensordot(ia, ib, axes, None).astype(object)
            if ma * mb * k < _INT64_SAFE:
                return np.tensordot(ia, ib, axes).astype(object)
        res = np.tensordot(a, b, axes)
        return _canon_q(res)


def _float_tensordot(a, b, axes, p):
    res = np.tensordot(a.astype(np.float64), b.astype(np.float64), axes)
    out = res.astype(np.int64)
    return np.mod(out, p) if p is not None else out


def _int64_view(arr: np.ndarray):
    """int64 copy of an object array if every entry is a small int, else None."""
    if arr.dtype != object:
        return arr.astype(np.int64)
    if arr.size == 0:
        return np.zeros(arr.shape, dtype=np.int64)
    for x in arr.flat:
        if type(x) is not int or not -(1 << 62) < x < (1 << 62):
            return None
    return arr.astype(np.int64)


def _canon_q(arr):
    if not isinstance(arr, np.ndarray):
        return arr
    out = arr.reshape(-1)
    for k, x in enumerate(out):
        if isinstance(x, Fraction) and x.denominator == 1:
            out[k] = x.numerator
    return arr


QQ = FieldSpec.rational()
