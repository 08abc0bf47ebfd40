"""Polynomials over Z_p in coefficient form, with exact Lagrange interpolation."""

from __future__ import annotations

import typing as typ
from dataclasses import dataclass

from .errors import DuplicateAbscissaError, ParameterError
from .field import FieldElement, PrimeModulus, inv_mod

Residue = typ.Union[int, FieldElement]


class Point(typ.NamedTuple):
    x: int
    y: int


def _trim(coeffs: typ.Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end > 1 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class Polynomial:
    """``coefficients[j]`` is the coefficient of x**j."""

    coefficients: tuple[int, ...]
    modulus: PrimeModulus

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ParameterError("a polynomial needs at least one coefficient")
        for c in self.coefficients:
            self.modulus.residue(c, "coefficient")
        if len(self.coefficients) > 1 and self.coefficients[-1] == 0:
            raise ParameterError("trailing coefficient must be nonzero")

    @classmethod
    def from_coefficients(
        cls, coeffs: typ.Iterable[Residue], modulus: PrimeModulus
    ) -> Polynomial:
        """Build from any coefficient list, trimming trailing zeros."""
        values = [modulus.residue(c, "coefficient") for c in coeffs]
        if not values:
            values = [0]
        return cls(_trim(values), modulus)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: Residue) -> int:
        return poly_eval(self, x)

    def __len__(self) -> int:
        return len(self.coefficients)


def poly_eval(poly: Polynomial, x: Residue) -> int:
    p = poly.modulus.p
    xv = poly.modulus.residue(x, "abscissa")
    acc = 0
    for c in reversed(poly.coefficients):
        acc = (acc * xv + c) % p
    return acc


def _check_abscissae(xs: typ.Sequence[int]) -> None:
    seen = set()
    for x in xs:
        if x in seen:
            raise DuplicateAbscissaError(f"duplicate abscissa x={x}")
        seen.add(x)


def _as_points(
    points: typ.Iterable[Point | tuple[Residue, Residue]], modulus: PrimeModulus
) -> list[Point]:
    out = [
        Point(modulus.residue(x, "abscissa"), modulus.residue(y, "ordinate"))
        for x, y in points
    ]
    if not out:
        raise ParameterError("interpolation needs at least one point")
    _check_abscissae([pt.x for pt in out])
    return out


def interpolate(
    points: typ.Iterable[Point | tuple[Residue, Residue]], modulus: PrimeModulus
) -> Polynomial:
    """Unique polynomial of degree < len(points) through ``points``.

    Expands the Lagrange basis into coefficient form: build
    prod(x - x_i) once, then peel each root off by synthetic division.
    """
    pts = _as_points(points, modulus)
    p = modulus.p
    m = len(pts)

    # master[j] is the coefficient of x**j in prod(x - x_i)
    master = [1]
    for pt in pts:
        nxt = [0] * (len(master) + 1)
        for j, c in enumerate(master):
            nxt[j + 1] = (nxt[j + 1] + c) % p
            nxt[j] = (nxt[j] - c * pt.x) % p
        master = nxt

    result = [0] * m
    for i, pi in enumerate(pts):
        if pi.y == 0:
            continue
        denom = 1
        for j, pj in enumerate(pts):
            if j != i:
                denom = denom * (pi.x - pj.x) % p
        scale = pi.y * inv_mod(denom, p) % p

        # master / (x - x_i), highest degree first
        carry = 0
        for j in range(m, 0, -1):
            carry = (master[j] + carry * pi.x) % p
            result[j - 1] = (result[j - 1] + carry * scale) % p

    return Polynomial(_trim(result), modulus)


def lagrange_weights(xs: typ.Sequence[int], at: int, p: int) -> list[int]:
    """Weights w with f(at) = sum(w_i * f(xs[i])) for every f of degree < len(xs)."""
    _check_abscissae(xs)
    weights = []
    for i, xi in enumerate(xs):
        num, den = 1, 1
        for j, xj in enumerate(xs):
            if j != i:
                num = num * (at - xj) % p
                den = den * (xi - xj) % p
        weights.append(num * inv_mod(den, p) % p)
    return weights
