"""Byte streams <-> field elements, the hidden channel, and share files.

Share file layout (UTF-8, LF line endings, canonical decimals)::

    RSS1
    scheme=recursive
    p=<dec>
    k=<dec>
    n=<dec>
    x=<dec>
    chunks=<dec>
    msglen=<dec>
    auxlen=<dec>
    digest=<none|sha256>
    ---
    <one decimal y value per chunk>

The xor2 variant carries ``levels=`` and ``index=`` in the header and a
single lowercase hex line encoding the share bits MSB first.
"""

from __future__ import annotations

import hashlib
import random
import re
import typing as typ
from dataclasses import dataclass, field

from .errors import (
    BadMagicError,
    CapacityError,
    CorruptionError,
    CountMismatchError,
    DigestMismatchError,
    NonCanonicalError,
    ParameterError,
    ShareFormatError,
    SharingError,
    UnknownVersionError,
    UnsupportedModulusError,
)
from .field import DEFAULT_PRIME, PrimeModulus, RandomSource, sample_residues
from .recursive import DealingParams, deal_chunks, reconstruct_chunks

CHUNK_BYTES = 7
MAGIC = "RSS1"
DIGESTS = {"none": 0, "sha256": 32}

_DECIMAL = re.compile(r"0|[1-9][0-9]*")
_HEX = re.compile(r"[0-9a-f]+")


@dataclass(frozen=True)
class ChunkedMessage:
    elements: tuple[int, ...]
    original_length: int


def _chunk_count(nbytes: int) -> int:
    return -(-nbytes // CHUNK_BYTES)


def _check_chunk_modulus(p: int) -> None:
    if p <= 1 << (8 * CHUNK_BYTES):
        raise UnsupportedModulusError(
            f"p={p} cannot hold {CHUNK_BYTES}-byte chunks; need p > 2**56"
        )


def _bytes_to_elements(data: bytes) -> list[int]:
    padded = data + bytes(-len(data) % CHUNK_BYTES)
    return [
        int.from_bytes(padded[i : i + CHUNK_BYTES], "big")
        for i in range(0, len(padded), CHUNK_BYTES)
    ]


def _elements_to_bytes(elements: typ.Iterable[int]) -> bytes:
    out = bytearray()
    for e in elements:
        if not 0 <= e < 1 << (8 * CHUNK_BYTES):
            raise CorruptionError(f"element {e} does not encode {CHUNK_BYTES} bytes")
        out += e.to_bytes(CHUNK_BYTES, "big")
    return bytes(out)


def encode_message(data: bytes, modulus: PrimeModulus) -> ChunkedMessage:
    _check_chunk_modulus(modulus.p)
    return ChunkedMessage(tuple(_bytes_to_elements(data)), len(data))


def decode_message(chunked: ChunkedMessage) -> bytes:
    n = chunked.original_length
    if not 0 <= n <= CHUNK_BYTES * len(chunked.elements):
        raise CorruptionError(
            f"length {n} inconsistent with {len(chunked.elements)} chunks"
        )
    raw = _elements_to_bytes(chunked.elements)
    if any(raw[n:]):
        raise CorruptionError("nonzero bytes in chunk padding")
    return raw[:n]


def channel_capacity(chunk_count: int, k: int) -> int:
    """Usable hidden-channel bytes once the length header is reserved."""
    return max(chunk_count * (k - 2) * CHUNK_BYTES - CHUNK_BYTES, 0)


def pack_hidden_channel(
    aux: bytes,
    chunk_count: int,
    k: int,
    p: int,
    rng: RandomSource | None = None,
) -> list[tuple[int, ...]]:
    """Spread length-prefixed ``aux`` round-robin over ``chunk_count`` payloads.

    Element e lands in chunk ``e % chunk_count``. Unused slots are zero, or
    uniform residues when ``rng`` is given.
    """
    _check_chunk_modulus(p)
    slots = chunk_count * (k - 2)
    available = slots * CHUNK_BYTES
    if len(aux) + CHUNK_BYTES > available:
        raise CapacityError(len(aux) + CHUNK_BYTES, available)

    elements = [len(aux)] + _bytes_to_elements(aux)
    filler = slots - len(elements)
    elements += [0] * filler if rng is None else sample_residues(p, rng, filler)
    return [tuple(elements[c::chunk_count]) for c in range(chunk_count)]


def unpack_hidden_channel(payloads: typ.Sequence[typ.Sequence[int]]) -> bytes:
    chunk_count = len(payloads)
    width = len(payloads[0]) if payloads else 0
    if any(len(pl) != width for pl in payloads):
        raise CorruptionError("hidden payloads have unequal widths")
    slots = chunk_count * width
    if slots == 0:
        raise CorruptionError("no hidden channel present")

    def element(e: int) -> int:
        return payloads[e % chunk_count][e // chunk_count]

    length = element(0)
    if length > (slots - 1) * CHUNK_BYTES:
        raise CorruptionError(
            f"hidden length header {length} exceeds channel size "
            f"{(slots - 1) * CHUNK_BYTES}"
        )
    used = _chunk_count(length)
    raw = _elements_to_bytes(element(e) for e in range(1, used + 1))
    if any(raw[length:]):
        raise CorruptionError("nonzero bytes in hidden-channel padding")
    return raw[:length]


# --- share files -------------------------------------------------------------


@dataclass(frozen=True)
class ShareFile:
    p: int
    k: int
    n: int
    x: int
    msglen: int
    auxlen: int = 0
    digest: str = "none"
    ys: tuple[int, ...] = field(default_factory=tuple)
    scheme: typ.ClassVar[str] = "recursive"

    @property
    def chunks(self) -> int:
        return len(self.ys)

    @property
    def params(self) -> DealingParams:
        return DealingParams(PrimeModulus(self.p), self.k, self.n)

    def header(self) -> dict[str, object]:
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "x": self.x,
            "chunks": self.chunks,
            "msglen": self.msglen,
            "auxlen": self.auxlen,
            "digest": self.digest,
        }

    def validate(self) -> None:
        try:
            params = self.params
        except SharingError as exc:
            raise ShareFormatError(f"invalid parameters: {exc}") from exc
        if self.x not in params.share_abscissae:
            raise ShareFormatError(f"x={self.x} outside {self.k}..{self.k + self.n - 1}")
        if self.digest not in DIGESTS:
            raise ShareFormatError(f"unknown digest algorithm {self.digest!r}")
        if self.msglen > CHUNK_BYTES * self.chunks:
            raise CountMismatchError(
                f"msglen={self.msglen} needs more than {self.chunks} chunks"
            )
        if self.auxlen or self.digest != "none":
            need = self.auxlen + DIGESTS[self.digest]
            if need > channel_capacity(self.chunks, self.k):
                raise ShareFormatError(f"auxlen={self.auxlen} exceeds channel capacity")
        for y in self.ys:
            if not 0 <= y < self.p:
                raise ShareFormatError(f"share value {y} outside [0, {self.p})")


@dataclass(frozen=True)
class Xor2ShareFile:
    levels: int
    index: int
    bits: str
    scheme: typ.ClassVar[str] = "xor2"

    def header(self) -> dict[str, object]:
        return {"levels": self.levels, "index": self.index}

    def validate(self) -> None:
        if self.levels < 1:
            raise ShareFormatError("levels must be >= 1")
        if self.index not in (1, 2):
            raise ShareFormatError(f"index must be 1 or 2, got {self.index}")
        if len(self.bits) != 1 << (self.levels - 1) or set(self.bits) - {"0", "1"}:
            raise ShareFormatError(f"share must be {1 << (self.levels - 1)} bits")


AnyShareFile = typ.Union[ShareFile, Xor2ShareFile]


def _bits_to_hex(bits: str) -> str:
    return format(int(bits, 2), "x").zfill(-(-len(bits) // 4))


def serialize_share(share: AnyShareFile) -> bytes:
    share.validate()
    lines = [MAGIC, f"scheme={share.scheme}"]
    lines += [f"{key}={value}" for key, value in share.header().items()]
    lines.append("---")
    if isinstance(share, ShareFile):
        lines += [str(y) for y in share.ys]
    else:
        lines.append(_bits_to_hex(share.bits))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _decimal(text: str, what: str) -> int:
    if not _DECIMAL.fullmatch(text):
        raise NonCanonicalError(f"{what}: {text!r} is not a canonical decimal")
    return int(text)


def _header_fields(
    lines: list[str], keys: typ.Sequence[str], start: int
) -> dict[str, str]:
    if len(lines) < start + len(keys) + 1:
        raise CountMismatchError("header is truncated")
    out = {}
    for i, key in enumerate(keys, start=start):
        name, sep, value = lines[i].partition("=")
        if not sep or name != key:
            raise ShareFormatError(f"line {i + 1}: expected '{key}=', got {lines[i]!r}")
        out[key] = value
    if lines[start + len(keys)] != "---":
        raise ShareFormatError(f"line {start + len(keys) + 1}: expected '---'")
    return out


_RECURSIVE_KEYS = ("p", "k", "n", "x", "chunks", "msglen", "auxlen", "digest")
_XOR2_KEYS = ("levels", "index")


def parse_share(data: bytes) -> AnyShareFile:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ShareFormatError("share file is not valid UTF-8") from exc

    lines = text.split("\n")
    magic = lines[0]
    if magic != MAGIC:
        if re.fullmatch(r"RSS[0-9]+", magic):
            raise UnknownVersionError(f"unsupported share format version {magic!r}")
        raise BadMagicError(f"not a share file (first line {magic[:16]!r})")
    if lines[-1] != "":
        raise CountMismatchError("missing final newline; file looks truncated")
    lines = lines[:-1]
    if len(lines) < 2:
        raise CountMismatchError("header is truncated")

    scheme = lines[1]
    if scheme == "scheme=recursive":
        hdr = _header_fields(lines, _RECURSIVE_KEYS, 2)
        ints = {key: _decimal(hdr[key], key) for key in _RECURSIVE_KEYS[:-1]}
        body = lines[2 + len(_RECURSIVE_KEYS) + 1 :]
        if len(body) != ints["chunks"]:
            raise CountMismatchError(
                f"header declares {ints['chunks']} chunks, found {len(body)} values"
            )
        share: AnyShareFile = ShareFile(
            p=ints["p"],
            k=ints["k"],
            n=ints["n"],
            x=ints["x"],
            msglen=ints["msglen"],
            auxlen=ints["auxlen"],
            digest=hdr["digest"],
            ys=tuple(_decimal(y, f"chunk {i}") for i, y in enumerate(body)),
        )
    elif scheme == "scheme=xor2":
        hdr = _header_fields(lines, _XOR2_KEYS, 2)
        levels = _decimal(hdr["levels"], "levels")
        index = _decimal(hdr["index"], "index")
        body = lines[2 + len(_XOR2_KEYS) + 1 :]
        if len(body) != 1:
            raise CountMismatchError(f"expected one share line, found {len(body)}")
        if levels < 1 or levels > 32:
            raise ShareFormatError(f"levels={levels} out of range")
        nbits = 1 << (levels - 1)
        digits = body[0]
        if not _HEX.fullmatch(digits) or len(digits) != -(-nbits // 4):
            raise NonCanonicalError(f"share line {digits[:32]!r} is not canonical hex")
        value = int(digits, 16)
        if value >> nbits:
            raise NonCanonicalError(f"share value exceeds {nbits} bits")
        share = Xor2ShareFile(levels, index, format(value, "b").zfill(nbits))
    else:
        raise ShareFormatError(f"unknown scheme line {scheme!r}")

    share.validate()
    return share


# --- whole messages ----------------------------------------------------------


def split_message(
    message: bytes,
    k: int,
    n: int,
    p: int = DEFAULT_PRIME,
    *,
    hidden: bytes = b"",
    embed_digest: bool = False,
    rng: RandomSource | None = None,
) -> list[ShareFile]:
    """Share ``message`` as n share files, optionally carrying ``hidden`` bytes.

    With ``embed_digest`` the SHA-256 of the message is placed in front of
    the hidden payload. Hidden slots not needed for payload are filled with
    uniform residues.
    """
    params = DealingParams(PrimeModulus(p), k, n)
    if rng is None:
        rng = random.SystemRandom()
    chunked = encode_message(message, params.modulus)
    count = len(chunked.elements)

    digest = "sha256" if embed_digest else "none"
    if hidden or embed_digest:
        channel = (hashlib.sha256(message).digest() if embed_digest else b"") + hidden
        payloads = pack_hidden_channel(channel, count, k, p, rng=rng)
    else:
        filler = sample_residues(p, rng, count * (k - 2))
        payloads = [tuple(filler[c :: count]) for c in range(count)] if count else []

    shares = deal_chunks(chunked.elements, payloads, params, rng)
    return [
        ShareFile(p, k, n, s.x, len(message), len(hidden), digest, tuple(s.y))
        for s in shares
    ]


def combine_shares(
    shares: typ.Sequence[ShareFile], *, check_digest: bool = False
) -> tuple[bytes, bytes]:
    """Return (message, hidden payload) from k or more share files."""
    if not shares:
        raise ParameterError("no shares given")
    first = shares[0]
    reference = {key: v for key, v in first.header().items() if key != "x"}
    for s in shares[1:]:
        if not isinstance(s, ShareFile):
            raise ParameterError("cannot mix xor2 and recursive shares")
        other = {key: v for key, v in s.header().items() if key != "x"}
        if other != reference:
            diff = sorted(key for key in reference if reference[key] != other[key])
            raise ParameterError(f"share headers disagree on {', '.join(diff)}")
    if check_digest and first.digest == "none":
        raise ParameterError("shares carry no digest to check")

    primary, hidden_elems = reconstruct_chunks([(s.x, s.ys) for s in shares], first.params)
    message = decode_message(ChunkedMessage(tuple(primary), first.msglen))

    if not (first.auxlen or first.digest != "none"):
        return message, b""
    channel = unpack_hidden_channel(hidden_elems)
    dlen = DIGESTS[first.digest]
    embedded, aux = channel[:dlen], channel[dlen:]
    if len(aux) != first.auxlen:
        raise CorruptionError(
            f"hidden payload is {len(aux)} bytes, header says {first.auxlen}"
        )
    if check_digest and hashlib.sha256(message).digest() != embedded:
        raise DigestMismatchError("embedded SHA-256 does not match the message")
    return message, aux
