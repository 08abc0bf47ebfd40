"""Arithmetic in Z_p for primes below 2**61.

Residues are kept canonical in ``[0, p)``. Higher layers work on plain
``int`` residues tagged by a :class:`PrimeModulus`; :class:`FieldElement`
is the typed scalar for callers that want operator syntax and modulus
checking.
"""

from __future__ import annotations

import typing as typ
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, RangeError

MAX_MODULUS_BITS = 61

# 2**61 - 1 is a Mersenne prime; every 7-byte chunk value is below it.
DEFAULT_PRIME = (1 << 61) - 1

# Deterministic Miller-Rabin: these witnesses are exact for every n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class RandomSource(typ.Protocol):
    """``random.Random`` and ``random.SystemRandom`` both qualify."""

    def getrandbits(self, k: int) -> int: ...

    def randbytes(self, n: int) -> bytes: ...


def is_prime(m: int) -> bool:
    """Exact primality test for 0 <= m < 2**64."""
    if m < 2:
        return False
    for q in _MR_WITNESSES:
        if m % q == 0:
            return m == q
    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise ParameterError(f"modulus must be an int, got {self.p!r}")
        if not 2 < self.p < (1 << MAX_MODULUS_BITS):
            raise ParameterError(f"modulus must satisfy 2 < p < 2**61, got {self.p}")
        if not is_prime(self.p):
            raise ParameterError(f"modulus {self.p} is not prime")

    def __int__(self) -> int:
        return self.p

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    def residue(self, value: int | FieldElement, what: str = "value") -> int:
        """Validate ``value`` as a canonical residue and return it as an int."""
        if isinstance(value, FieldElement):
            if value.modulus != self:
                raise ParameterError(
                    f"{what} belongs to Z_{value.modulus.p}, expected Z_{self.p}"
                )
            return value.value
        if not isinstance(value, int) or isinstance(value, bool):
            raise ParameterError(f"{what} must be an int, got {type(value).__name__}")
        if not 0 <= value < self.p:
            raise RangeError(f"{what} {value} is outside [0, {self.p})")
        return value


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: PrimeModulus

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus.p:
            raise RangeError(f"{self.value} is outside [0, {self.modulus.p})")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def _coerce(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, FieldElement):
            return other
        return self.modulus(other)

    def __add__(self, other: FieldElement | int) -> FieldElement:
        return fe_add(self, self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other: FieldElement | int) -> FieldElement:
        return fe_sub(self, self._coerce(other))

    def __rsub__(self, other: int) -> FieldElement:
        return fe_sub(self._coerce(other), self)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        return fe_mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: FieldElement | int) -> FieldElement:
        return fe_mul(self, fe_inv(self._coerce(other)))

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value % self.modulus.p, self.modulus)

    def __pow__(self, e: int) -> FieldElement:
        return fe_pow(self, e)

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.modulus.p})"


def _same_modulus(a: FieldElement, b: FieldElement) -> PrimeModulus:
    if a.modulus != b.modulus:
        raise ParameterError(f"modulus mismatch: {a.modulus.p} vs {b.modulus.p}")
    return a.modulus


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    m = _same_modulus(a, b)
    return FieldElement((a.value + b.value) % m.p, m)


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    m = _same_modulus(a, b)
    return FieldElement((a.value - b.value) % m.p, m)


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    m = _same_modulus(a, b)
    return FieldElement(a.value * b.value % m.p, m)


def inv_mod(a: int, p: int) -> int:
    if a % p == 0:
        raise ZeroDivisionError("zero has no inverse modulo p")
    return pow(a, -1, p)


def fe_inv(a: FieldElement) -> FieldElement:
    return FieldElement(inv_mod(a.value, a.modulus.p), a.modulus)


def fe_pow(a: FieldElement, e: int) -> FieldElement:
    p = a.modulus.p
    if e < 0:
        return FieldElement(pow(inv_mod(a.value, p), -e, p), a.modulus)
    return FieldElement(pow(a.value, e, p), a.modulus)


def sample_uniform(modulus: PrimeModulus, rng: RandomSource) -> FieldElement:
    return FieldElement(sample_residue(modulus.p, rng), modulus)


def sample_residue(p: int, rng: RandomSource) -> int:
    """Uniform draw from [0, p) by rejection; no modulo bias."""
    bits = p.bit_length()
    while True:
        r = rng.getrandbits(bits)
        if r < p:
            return r


def sample_residues(p: int, rng: RandomSource, count: int) -> list[int]:
    """``count`` independent uniform draws from [0, p), rejection-sampled in bulk."""
    mask = np.uint64((1 << p.bit_length()) - 1)
    out = np.empty(0, dtype=np.uint64)
    while out.size < count:
        need = count - out.size
        raw = np.frombuffer(rng.randbytes(8 * need), dtype="<u8") & mask
        out = np.concatenate([out, raw[raw < np.uint64(p)]])
    return out.tolist()
