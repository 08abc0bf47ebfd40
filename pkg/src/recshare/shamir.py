"""(k, n) Shamir sharing with randomness at x=1..k-1 and shares at x=k..k+n-1."""

from __future__ import annotations

import typing as typ
from dataclasses import dataclass

from .errors import (
    DuplicateAbscissaError,
    InconsistentSharesError,
    InsufficientSharesError,
    ParameterError,
)
from .field import PrimeModulus, RandomSource, sample_residue
from .poly import Point, Polynomial, Residue, interpolate, poly_eval


class Share(typ.NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class ShamirParams:
    modulus: PrimeModulus
    k: int
    n: int

    def __post_init__(self) -> None:
        if isinstance(self.modulus, int):
            object.__setattr__(self, "modulus", PrimeModulus(self.modulus))
        if not 2 <= self.k <= self.n:
            raise ParameterError(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if self.modulus.p <= self.k + self.n - 1:
            raise ParameterError(
                f"p={self.modulus.p} must exceed k+n-1={self.k + self.n - 1}"
                " so every abscissa is distinct"
            )

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def share_abscissae(self) -> range:
        return range(self.k, self.k + self.n)


def shamir_split(
    secret: Residue,
    params: ShamirParams,
    rng: RandomSource | None = None,
    *,
    randomness: typ.Sequence[Residue] | None = None,
) -> list[Share]:
    """Split ``secret`` into n shares; ``randomness`` pins y_1..y_{k-1} for replay."""
    s = params.modulus.residue(secret, "secret")
    if randomness is None:
        if rng is None:
            raise ParameterError("either rng or randomness is required")
        ys = [sample_residue(params.p, rng) for _ in range(params.k - 1)]
    else:
        if len(randomness) != params.k - 1:
            raise ParameterError(f"expected {params.k - 1} random values")
        ys = [params.modulus.residue(y, "random value") for y in randomness]

    points = [Point(0, s)] + [Point(i, y) for i, y in enumerate(ys, start=1)]
    poly = interpolate(points, params.modulus)
    return [Share(x, poly_eval(poly, x)) for x in params.share_abscissae]


def interpolate_shares(
    shares: typ.Iterable[Share | tuple[int, int]], params: ShamirParams
) -> Polynomial:
    """Interpolate the first k shares by abscissa; every surplus share must agree."""
    items = [Share(*s) for s in shares]
    xs = [s.x for s in items]
    if len(set(xs)) != len(xs):
        dup = next(x for x in xs if xs.count(x) > 1)
        raise DuplicateAbscissaError(f"duplicate share abscissa x={dup}")
    if len(items) < params.k:
        raise InsufficientSharesError(f"need {params.k} shares, got {len(items)}")
    for s in items:
        if s.x not in params.share_abscissae:
            raise ParameterError(
                f"share abscissa {s.x} outside {params.k}..{params.k + params.n - 1}"
            )
    items.sort(key=lambda s: s.x)
    poly = interpolate(items[: params.k], params.modulus)
    for s in items[params.k :]:
        if poly_eval(poly, s.x) != params.modulus.residue(s.y, "share value"):
            raise InconsistentSharesError(
                f"share x={s.x} does not lie on the polynomial through the others"
            )
    return poly


def shamir_reconstruct(
    shares: typ.Iterable[Share | tuple[int, int]], params: ShamirParams
) -> int:
    return poly_eval(interpolate_shares(shares, params), 0)
