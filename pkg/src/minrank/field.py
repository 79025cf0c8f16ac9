"""Arithmetic in prime fields F_q."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 8192


class FieldMismatchError(ValueError):
    """Raised when elements of different fields are combined."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def egcd_inverse(a: int, q: int) -> int:
    """Modular inverse by the extended Euclidean algorithm."""
    if a % q == 0:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    r0, r1 = q, a % q
    s0, s1 = 0, 1
    while r1:
        quot = r0 // r1
        r0, r1 = r1, r0 - quot * r1
        s0, s1 = s1, s0 - quot * s1
    return s0 % q


@lru_cache(maxsize=None)
def inverse_table(q: int) -> np.ndarray:
    """``inverse_table(q)[a]`` is the inverse of ``a`` mod ``q``; entry 0 is left at 0."""
    table = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        table[a] = egcd_inverse(a, q)
    table.setflags(write=False)
    return table


@dataclass(frozen=True)
class FieldSpec:
    """The prime field with ``q`` elements, represented by integers in ``[0, q)``."""

    q: int = 2

    def __post_init__(self):
        if not isinstance(self.q, (int, np.integer)) or isinstance(self.q, bool):
            raise TypeError(f"field order must be an integer, got {self.q!r}")
        if not 2 <= self.q <= MAX_ORDER:
            raise ValueError(f"field order must lie in [2, {MAX_ORDER}], got {self.q}")
        if not is_prime(int(self.q)):
            raise ValueError(f"field order must be prime, got {self.q}")
        object.__setattr__(self, "q", int(self.q))

    def __call__(self, value: int) -> "FieldElem":
        return FieldElem(int(value) % self.q, self)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(0, self)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(1, self)

    def elements(self):
        return [FieldElem(v, self) for v in range(self.q)]

    def nonzero(self):
        return [FieldElem(v, self) for v in range(1, self.q)]

    @property
    def inverse_table(self) -> np.ndarray:
        return inverse_table(self.q)

    def inv_int(self, a: int) -> int:
        return egcd_inverse(a, self.q)

    def __repr__(self):
        return f"F{self.q}"


@dataclass(frozen=True)
class FieldElem:
    value: int
    field: FieldSpec

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not a canonical element of {self.field}")

    def _other(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElem((self.value + other.value) % self.field.q, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElem((self.value - other.value) % self.field.q, self.field)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElem((self.value * other.value) % self.field.q, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem((-self.value) % self.field.q, self.field)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * inv(other)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.q})"


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def sub(a: FieldElem, b: FieldElem) -> FieldElem:
    return a - b


def neg(a: FieldElem) -> FieldElem:
    return -a


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def inv(a: FieldElem) -> FieldElem:
    """Multiplicative inverse; raises ``ZeroDivisionError`` for zero."""
    return FieldElem(egcd_inverse(a.value, a.field.q), a.field)


def inv_fermat(a: FieldElem) -> FieldElem:
    """Inverse as ``a**(q-2)``; kept as an independent check on :func:`inv`."""
    if a.value == 0:
        raise ZeroDivisionError("zero has no multiplicative inverse")
    return FieldElem(pow(a.value, a.field.q - 2, a.field.q), a.field)


F2 = FieldSpec(2)
