"""Command-line front end.

Exit codes: 0 success, 2 usage or validation error, 3 I/O error,
4 integrity failure (tampered shares, corrupted data, digest mismatch).
"""

from __future__ import annotations

import argparse
import random
import re
import sys
import typing as typ
from pathlib import Path

from . import codec, xor2
from .errors import IntegrityError, ParameterError, SharingError
from .field import DEFAULT_PRIME

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_INTEGRITY = 4

SEED_WARNING = (
    "WARNING: --seed makes share randomness predictable. "
    "Use it only for tests and reproduction, never for real secrets."
)

_SHARE_NAME = re.compile(r"\.[sx](\d+)\.rss$")


class _Outputs:
    """Tracks files written by one invocation so a failure leaves none behind."""

    def __init__(self) -> None:
        self.paths: list[Path] = []

    def write(self, path: Path, data: bytes) -> None:
        path.write_bytes(data)
        self.paths.append(path)

    def rollback(self) -> None:
        for path in self.paths:
            path.unlink(missing_ok=True)
        self.paths.clear()


def _rng(seed: str | None) -> random.Random:
    if seed is None:
        return random.SystemRandom()
    try:
        value = int(seed, 16)
    except ValueError:
        raise ParameterError(f"--seed must be hexadecimal, got {seed!r}") from None
    print(SEED_WARNING, file=sys.stderr)
    return random.Random(value)


def _read_share(path: Path) -> codec.AnyShareFile:
    return codec.parse_share(path.read_bytes())


def cmd_split(args: argparse.Namespace, out: _Outputs) -> int:
    rng = _rng(args.seed)
    message = Path(args.input).read_bytes()
    hidden = Path(args.hide).read_bytes() if args.hide else b""
    shares = codec.split_message(
        message,
        args.k,
        args.n,
        args.prime,
        hidden=hidden,
        embed_digest=args.embed_digest,
        rng=rng,
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    for share in shares:
        out.write(outdir / f"{stem}.s{share.x}.rss", codec.serialize_share(share))
    print(f"wrote {len(shares)} shares to {outdir} (any {args.k} reconstruct)")
    return EXIT_OK


def _check_duplicate_names(paths: typ.Sequence[Path]) -> None:
    seen: dict[str, Path] = {}
    for path in paths:
        m = _SHARE_NAME.search(path.name)
        key = m.group(1) if m else str(path.resolve())
        if key in seen:
            raise ParameterError(f"{path} duplicates {seen[key]} (same abscissa)")
        seen[key] = path


def cmd_reconstruct(args: argparse.Namespace, out: _Outputs) -> int:
    paths = [Path(p) for p in args.shares]
    _check_duplicate_names(paths)
    shares = [_read_share(p) for p in paths]
    if not all(isinstance(s, codec.ShareFile) for s in shares):
        raise ParameterError("reconstruct handles recursive shares; use 'xor2 join'")
    recursive_shares = typ.cast(typ.List[codec.ShareFile], shares)
    message, hidden = codec.combine_shares(recursive_shares, check_digest=args.check_digest)

    target = Path(args.out)
    out.write(target, message)
    if recursive_shares[0].auxlen:
        hidden_path = Path(args.hidden_out) if args.hidden_out else Path(f"{target}.hidden")
        out.write(hidden_path, hidden)
        print(f"hidden payload ({len(hidden)} bytes) -> {hidden_path}")
    if args.check_digest:
        print("digest OK")
    print(f"message ({len(message)} bytes) -> {target}")
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace, out: _Outputs) -> int:
    share = _read_share(Path(args.share))
    print(f"file: {args.share}")
    print(f"scheme: {share.scheme}")
    for key, value in share.header().items():
        print(f"{key}: {value}")
    if isinstance(share, codec.ShareFile):
        print(f"capacity: {codec.channel_capacity(share.chunks, share.k)} hidden bytes")
        if args.full:
            for i, y in enumerate(share.ys):
                print(f"y[{i}]: {y}")
    elif args.full:
        print(f"bits: {share.bits}")
    return EXIT_OK


def _read_secret_list(path: Path) -> list[str]:
    return [line.strip() for line in path.read_text().splitlines() if line.strip()]


def cmd_xor2_split(args: argparse.Namespace, out: _Outputs) -> int:
    secrets = _read_secret_list(Path(args.input))
    if args.base_bit is not None:
        print(SEED_WARNING, file=sys.stderr)
        pair = xor2.xor2_split(secrets, base_bit=args.base_bit)
    else:
        pair = xor2.xor2_split(secrets, _rng(args.seed))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    for index, bits in enumerate(pair, start=1):
        share = codec.Xor2ShareFile(len(secrets), index, bits)
        out.write(outdir / f"{stem}.x{index}.rss", codec.serialize_share(share))
    print(f"wrote 2 xor2 shares to {outdir}")
    return EXIT_OK


def cmd_xor2_join(args: argparse.Namespace, out: _Outputs) -> int:
    shares = [_read_share(Path(p)) for p in args.shares]
    if not all(isinstance(s, codec.Xor2ShareFile) for s in shares):
        raise ParameterError("xor2 join needs two xor2 share files")
    pair = sorted(typ.cast(typ.List[codec.Xor2ShareFile], shares), key=lambda s: s.index)
    if [s.index for s in pair] != [1, 2] or pair[0].levels != pair[1].levels:
        raise ParameterError("need share 1 and share 2 of the same sequence")
    secrets = xor2.xor2_reconstruct(pair[0].bits, pair[1].bits, pair[0].levels)
    out.write(Path(args.out), ("\n".join(secrets) + "\n").encode())
    print(f"{len(secrets)} secrets -> {args.out}")
    return EXIT_OK


def _prime(text: str) -> int:
    if not re.fullmatch(r"0|[1-9][0-9]*", text):
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recshare",
        description="Recursive k-of-n secret sharing with a hidden channel.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("split", help="split a file into n share files")
    sp.add_argument("--k", type=int, required=True, help="threshold")
    sp.add_argument("--n", type=int, required=True, help="number of shares")
    sp.add_argument("--prime", type=_prime, default=DEFAULT_PRIME)
    sp.add_argument("--hide", metavar="PATH", help="file to carry in the hidden channel")
    sp.add_argument("--embed-digest", action="store_true", help="embed SHA-256 of input")
    sp.add_argument("--seed", metavar="HEX", help="deterministic randomness (tests only)")
    sp.add_argument("--out", required=True, metavar="DIR")
    sp.add_argument("input")
    sp.set_defaults(func=cmd_split)

    rp = sub.add_parser("reconstruct", help="rebuild a file from k or more shares")
    rp.add_argument("--check-digest", action="store_true")
    rp.add_argument("--out", required=True, metavar="PATH")
    rp.add_argument("--hidden-out", metavar="PATH")
    rp.add_argument("shares", nargs="+")
    rp.set_defaults(func=cmd_reconstruct)

    ip = sub.add_parser("inspect", help="print a share file header")
    ip.add_argument("--full", action="store_true", help="also print share values")
    ip.add_argument("share")
    ip.set_defaults(func=cmd_inspect)

    xp = sub.add_parser("xor2", help="recursive 2-of-2 XOR scheme")
    xsub = xp.add_subparsers(dest="xor2_command", required=True)
    xs = xsub.add_parser("split", help="split a list of doubling-size bit strings")
    xs.add_argument("--seed", metavar="HEX")
    xs.add_argument("--base-bit", type=int, choices=(0, 1), help="fix the random bit (tests only)")
    xs.add_argument("--out", required=True, metavar="DIR")
    xs.add_argument("input")
    xs.set_defaults(func=cmd_xor2_split)
    xj = xsub.add_parser("join", help="recover the bit strings from both shares")
    xj.add_argument("--out", required=True, metavar="PATH")
    xj.add_argument("shares", nargs=2)
    xj.set_defaults(func=cmd_xor2_join)
    return parser


def main(argv: typ.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Outputs()
    try:
        return args.func(args, out)
    except IntegrityError as exc:
        out.rollback()
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except SharingError as exc:
        out.rollback()
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        out.rollback()
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BaseException:
        out.rollback()
        raise


if __name__ == "__main__":
    sys.exit(main())
