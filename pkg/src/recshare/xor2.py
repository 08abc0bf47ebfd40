"""Recursive 2-of-2 XOR sharing of secrets that double in size.

Bit strings are ``str`` of ``'0'``/``'1'``, most significant bit first.
Secret m (1-based) is 2**(m-1) bits long; both shares end up the length of
the largest secret. Level m appends fresh bits to the right of share 1 and
to the left of share 2; those bits are forced by requiring
share1 XOR share2 == s_m half by half.
"""

from __future__ import annotations

import typing as typ

from .errors import ParameterError
from .field import RandomSource


def _xor(a: str, b: str) -> str:
    return "".join("1" if x != y else "0" for x, y in zip(a, b))


def _check_bits(bits: str, what: str) -> None:
    if not bits or set(bits) - {"0", "1"}:
        raise ParameterError(f"{what} must be a non-empty string of 0/1, got {bits!r}")


def check_sizes(secrets: typ.Sequence[str]) -> None:
    if not secrets:
        raise ParameterError("need at least one secret")
    for m, s in enumerate(secrets, start=1):
        _check_bits(s, f"secret {m}")
        if len(s) != 1 << (m - 1):
            raise ParameterError(
                f"secret {m} must be {1 << (m - 1)} bits long, got {len(s)}"
            )


def iter_split(secrets: typ.Sequence[str], base_bit: int) -> typ.Iterator[tuple[str, str]]:
    """Yield the share pair after each level."""
    check_sizes(secrets)
    if base_bit not in (0, 1):
        raise ParameterError("base bit must be 0 or 1")
    share1 = str(base_bit)
    share2 = _xor(share1, secrets[0])
    yield share1, share2
    for s in secrets[1:]:
        half = len(s) // 2
        pad2 = _xor(share1, s[:half])
        pad1 = _xor(share2, s[half:])
        share1, share2 = share1 + pad1, pad2 + share2
        yield share1, share2


def xor2_split(
    secrets: typ.Sequence[str],
    rng: RandomSource | None = None,
    *,
    base_bit: int | None = None,
) -> tuple[str, str]:
    if base_bit is None:
        if rng is None:
            raise ParameterError("either rng or base_bit is required")
        base_bit = rng.getrandbits(1)
    pair = ("", "")
    for pair in iter_split(secrets, base_bit):
        pass
    return pair


def xor2_reconstruct(share1: str, share2: str, levels: int) -> list[str]:
    if levels < 1:
        raise ParameterError("levels must be >= 1")
    _check_bits(share1, "share 1")
    _check_bits(share2, "share 2")
    size = 1 << (levels - 1)
    if len(share1) != size or len(share2) != size:
        raise ParameterError(
            f"{levels} levels need {size}-bit shares, got {len(share1)} and {len(share2)}"
        )
    out = []
    while True:
        out.append(_xor(share1, share2))
        if len(share1) == 1:
            break
        half = len(share1) // 2
        share1, share2 = share1[:half], share2[half:]
    return out[::-1]


def capacity(levels: int) -> tuple[int, int]:
    """(bits per share, total secret bits) for ``levels`` nested secrets."""
    return 1 << (levels - 1), (1 << levels) - 1
