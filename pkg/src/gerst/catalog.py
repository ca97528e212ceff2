"""Named built-in algebras: ``Z2 Z3 Z4 S3 sweedler taft:n:q dual:<alg> double:<alg>``."""

from __future__ import annotations

from functools import lru_cache

from .doubles import drinfeld_double
from .field import FieldSpec, is_prime
from .hopf import HopfData, cyclic_table, dual_hopf, group_algebra, is_primitive_root, symmetric_table, taft_algebra

DEFAULT_FIELDS = {
    "Z2": FieldSpec.prime(2),
    "Z3": FieldSpec.prime(3),
    "Z4": FieldSpec.prime(2),
    "S3": FieldSpec.rational(),
    "sweedler": FieldSpec.rational(),
}

# the acceptance family, in a fixed order
STANDARD = [
    "Z2", "Z3", "Z4", "S3", "sweedler", "taft:3:2",
    "dual:Z2", "dual:Z3", "dual:Z4", "dual:S3", "dual:sweedler", "dual:taft:3:2",
    "double:Z2", "double:sweedler",
]


class UnknownAlgebraError(KeyError):
    def __str__(self):
        return f"unknown algebra {self.args[0]!r}"


def parse_field(text: str | None) -> FieldSpec | None:
    """``Q`` or a prime number, as accepted by ``--field``."""
    if text is None:
        return None
    if text.strip().lower() in ("q", "rational"):
        return FieldSpec.rational()
    return FieldSpec.prime(int(text))


def _taft_default_field(n: int, q: int) -> FieldSpec:
    if n == 2 and q == -1:
        return FieldSpec.rational()
    p = n + 1
    while True:
        if is_prime(p) and is_primitive_root(q, n, FieldSpec.prime(p)):
            return FieldSpec.prime(p)
        p += 1


def builtin(name: str, field: FieldSpec | None = None) -> HopfData:
    return _builtin(name, field)


@lru_cache(maxsize=64)
def _builtin(name: str, field: FieldSpec | None) -> HopfData:
    if name.startswith("dual:"):
        inner = _builtin(name[5:], field)
        return dual_hopf(inner, name=name)
    if name.startswith("double:"):
        inner = _builtin(name[7:], field)
        return drinfeld_double(inner).underlying.renamed(name, provenance=inner.name)
    if name.startswith("taft:"):
        try:
            _, n, q = name.split(":")
            n, q = int(n), int(q)
        except ValueError:
            raise UnknownAlgebraError(name) from None
        fld = field or _taft_default_field(n, q)
        return taft_algebra(n, q, fld, name=name)
    fld = field or DEFAULT_FIELDS.get(name)
    if name == "Z2":
        return group_algebra(cyclic_table(2), fld, name)
    if name == "Z3":
        return group_algebra(cyclic_table(3), fld, name)
    if name == "Z4":
        return group_algebra(cyclic_table(4), fld, name)
    if name == "S3":
        return group_algebra(symmetric_table(3), fld, name)
    if name == "sweedler":
        return taft_algebra(2, -1, fld, name="sweedler")
    raise UnknownAlgebraError(name)


def describe() -> list[str]:
    return [
        "Z2        group algebra of Z/2 (default field F_2)",
        "Z3        group algebra of Z/3 (default field F_3)",
        "Z4        group algebra of Z/4 (default field F_2)",
        "S3        group algebra of S_3 (default field Q)",
        "sweedler  Sweedler's 4-dimensional algebra, taft:2:-1 (default field Q)",
        "taft:n:q  Taft algebra of dimension n^2 (default: least prime with q a primitive n-th root)",
        "dual:ALG  dual Hopf algebra of ALG",
        "double:ALG  Drinfeld double of ALG",
    ]
