"""Recursive multi-secret sharing: k-2 hidden secrets ride inside the shares of S.

Dealing grows a chain of polynomials. Level i interpolates (0, s_i) with the
i points left by the previous level, giving p_i of degree i; sampling p_i at
x = i+1..2i+1 and relabelling those values to x = 1..i+1 seeds level i+1.
The last chain level feeds a plain Shamir polynomial whose constant term is
S. The only randomness is the very first point (1, y11).

Reconstruction runs the chain backwards: sample the current polynomial at
x = 1..i+1, move the values back to x = i+1..2i+1, interpolate p_i.
"""

from __future__ import annotations

import typing as typ
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentSharesError, ParameterError, RangeError
from .field import RandomSource, sample_residue, sample_residues
from .poly import Point, Polynomial, Residue, interpolate, lagrange_weights, poly_eval
from .shamir import ShamirParams, Share, interpolate_shares


@dataclass(frozen=True)
class DealingParams(ShamirParams):
    def __post_init__(self) -> None:
        super().__post_init__()
        # implied by p > k+n-1 whenever n >= k, kept explicit for the chain
        if self.modulus.p <= 2 * self.k - 3:
            raise ParameterError(f"p={self.modulus.p} must exceed 2k-3={2 * self.k - 3}")

    @property
    def hidden_count(self) -> int:
        return self.k - 2


def _hidden_residues(hidden: typ.Sequence[Residue], params: DealingParams) -> list[int]:
    if len(hidden) != params.hidden_count:
        raise ParameterError(
            f"k={params.k} hides exactly {params.hidden_count} secrets, got {len(hidden)}"
        )
    return [params.modulus.residue(s, "hidden secret") for s in hidden]


def iter_chain(
    hidden: typ.Sequence[Residue], y11: Residue, params: DealingParams
) -> typ.Iterator[tuple[Polynomial, list[Point]]]:
    """Yield (p_i, points seeding level i+1) for i = 1..k-2."""
    secrets = _hidden_residues(hidden, params)
    points = [Point(1, params.modulus.residue(y11, "y11"))]
    for i, s in enumerate(secrets, start=1):
        poly = interpolate([Point(0, s)] + points, params.modulus)
        assert poly_eval(poly, 0) == s
        points = [Point(j, poly_eval(poly, j + i)) for j in range(1, i + 2)]
        yield poly, points


def chain_forward(
    hidden: typ.Sequence[Residue], y11: Residue, params: DealingParams
) -> list[Point]:
    """The k-1 points at x = 1..k-1 that the final Shamir polynomial passes through."""
    points = [Point(1, params.modulus.residue(y11, "y11"))]
    for _, points in iter_chain(hidden, y11, params):
        pass
    return points


def final_polynomial(
    secret: Residue, chain_points: typ.Sequence[Point], params: DealingParams
) -> Polynomial:
    s = params.modulus.residue(secret, "secret")
    return interpolate([Point(0, s)] + list(chain_points), params.modulus)


def deal(
    secret: Residue,
    hidden: typ.Sequence[Residue],
    params: DealingParams,
    rng: RandomSource | None = None,
    *,
    y11: Residue | None = None,
) -> list[Share]:
    """Deal ``secret`` into n shares hiding ``hidden``.

    ``y11`` replaces the single random draw, for reproducing known vectors.
    """
    params.modulus.residue(secret, "secret")
    if y11 is None:
        if rng is None:
            raise ParameterError("either rng or y11 is required")
        y11 = sample_residue(params.p, rng)
    poly = final_polynomial(secret, chain_forward(hidden, y11, params), params)
    return [Share(x, poly_eval(poly, x)) for x in params.share_abscissae]


def unwind_chain(top: Polynomial, params: DealingParams) -> list[Polynomial]:
    """Recover p_{k-2}, ..., p_1 (in that order) from p_{k-1}."""
    out = []
    current = top
    for i in range(params.k - 2, 0, -1):
        values = [poly_eval(current, j) for j in range(1, i + 2)]
        current = interpolate(
            [Point(i + j, v) for j, v in enumerate(values, start=1)], params.modulus
        )
        out.append(current)
    return out


def reconstruct(
    shares: typ.Iterable[Share | tuple[int, int]], params: DealingParams
) -> tuple[int, tuple[int, ...]]:
    """Return (S, (s_1, ..., s_{k-2})) from k or more shares."""
    top = interpolate_shares(shares, params)
    chain = unwind_chain(top, params)
    hidden = tuple(poly_eval(poly, 0) for poly in reversed(chain))
    return poly_eval(top, 0), hidden


# Bulk path for many chunks. Dealing and reconstruction are linear over Z_p,
# so the scalar routines above, applied to unit vectors, yield exact matrices.


def deal_matrix(params: DealingParams) -> list[list[int]]:
    """Row x gives share(x) as a combination of (y11, s_1..s_{k-2}, S)."""
    k = params.k
    cols = []
    for j in range(k):
        unit = [0] * k
        unit[j] = 1
        shares = deal(unit[-1], unit[1:-1], params, y11=unit[0])
        cols.append([s.y for s in shares])
    return [list(row) for row in zip(*cols)]


def reconstruct_matrix(xs: typ.Sequence[int], params: DealingParams) -> list[list[int]]:
    """Rows map the k share values at ``xs`` to (S, s_1, ..., s_{k-2})."""
    k = params.k
    cols = []
    for j in range(k):
        unit = [0] * k
        unit[j] = 1
        s, hidden = reconstruct(list(zip(xs, unit)), params)
        cols.append([s, *hidden])
    return [list(row) for row in zip(*cols)]


def _matmul(matrix: list[list[int]], columns: np.ndarray, p: int) -> np.ndarray:
    return np.dot(np.array(matrix, dtype=object), columns.astype(object, copy=False)) % p


def _residue_array(values: typ.Any, p: int, what: str) -> np.ndarray:
    try:
        arr = np.array(values, dtype=np.uint64)
    except OverflowError:
        raise RangeError(f"negative or oversized {what}") from None
    except (ValueError, TypeError) as exc:
        raise ParameterError(f"malformed {what}: {exc}") from None
    if arr.size and int(arr.max()) >= p:
        raise RangeError(f"{what} {int(arr.max())} is outside [0, {p})")
    return arr


def deal_chunks(
    secrets: typ.Sequence[int],
    hidden: typ.Sequence[typ.Sequence[int]],
    params: DealingParams,
    rng: RandomSource | None = None,
    *,
    y11s: typ.Sequence[int] | None = None,
) -> list[Share]:
    """Deal one element per chunk; returns n shares whose ``y`` is a list per chunk.

    Chunk c gives the same shares as ``deal(secrets[c], hidden[c], params,
    y11=y11s[c])``. Without ``y11s`` the draws come from ``rng`` in bulk.
    """
    count = len(secrets)
    if len(hidden) != count:
        raise ParameterError("need one hidden payload per chunk")
    if y11s is None:
        if rng is None:
            raise ParameterError("either rng or y11s is required")
        y11s = sample_residues(params.p, rng, count)
    elif len(y11s) != count:
        raise ParameterError("need one y11 per chunk")
    if count == 0:
        return [Share(x, []) for x in params.share_abscissae]

    p = params.p
    hid = _residue_array(hidden, p, "hidden secret")
    if hid.shape != (count, params.hidden_count):
        raise ParameterError(
            f"k={params.k} hides exactly {params.hidden_count} secrets per chunk"
        )
    inputs = np.vstack(
        [
            _residue_array(y11s, p, "y11")[None, :],
            hid.T,
            _residue_array(secrets, p, "secret")[None, :],
        ]
    )
    out = _matmul(deal_matrix(params), inputs, p)
    return [Share(x, out[r].tolist()) for r, x in enumerate(params.share_abscissae)]


def reconstruct_chunks(
    shares: typ.Sequence[tuple[int, typ.Sequence[int]]], params: DealingParams
) -> tuple[list[int], list[tuple[int, ...]]]:
    """Chunked counterpart of :func:`reconstruct`.

    Returns (primary per chunk, hidden tuple per chunk). Surplus shares are
    checked chunk by chunk against the first k by abscissa.
    """
    # the scalar path vets abscissae, share count and duplicates
    interpolate_shares([(x, 0) for x, _ in shares], params)
    ordered = sorted(shares, key=lambda s: s[0])
    count = len(ordered[0][1])
    if any(len(ys) != count for _, ys in ordered):
        raise ParameterError("shares disagree on the number of chunks")
    if count == 0:
        return [], []

    values = _residue_array([ys for _, ys in ordered], params.p, "share value")
    base_xs = [x for x, _ in ordered[: params.k]]
    base = values[: params.k].astype(object)

    for r, (x, _) in enumerate(ordered[params.k :], start=params.k):
        w = lagrange_weights(base_xs, x, params.p)
        expected = _matmul([w], base, params.p)[0]
        bad = np.nonzero(expected != values[r].astype(object))[0]
        if bad.size:
            raise InconsistentSharesError(
                f"share x={x} is off the polynomial in chunk {int(bad[0])}"
            )

    out = _matmul(reconstruct_matrix(base_xs, params), base, params.p)
    primary = out[0].tolist()
    hidden = [tuple(col) for col in out[1:].T.tolist()] if params.k > 2 else [()] * count
    return primary, hidden
