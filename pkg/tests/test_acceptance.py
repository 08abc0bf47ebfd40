"""Exit criteria. Each test prints one PASS/FAIL line for its criterion."""

import contextlib
import itertools
import random
import time
from collections import Counter

import pytest

from recshare.cli import main
from recshare.codec import ShareFile, combine_shares, split_message
from recshare.errors import InconsistentSharesError, IntegrityError
from recshare.field import PrimeModulus
from recshare.poly import interpolate
from recshare.recursive import DealingParams, chain_forward, deal, iter_chain, reconstruct
from recshare.shamir import ShamirParams, Share, shamir_split
from recshare.xor2 import xor2_reconstruct, xor2_split

EXAMPLE = DealingParams(PrimeModulus(131), 5, 7)
EXAMPLE_SHARES = [(5, 2), (6, 40), (7, 63), (8, 130), (9, 50), (10, 37), (11, 55)]
PRIMES = [131, 10007, (1 << 61) - 1]


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def check(number, title):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")

    return check


def test_1_example_dealing(criterion):
    with criterion(1, "worked example dealing, exact shares and polynomials, < 1 s"):
        start = time.perf_counter()
        levels = [poly.coefficients for poly, _ in iter_chain([46, 69, 72], 102, EXAMPLE)]
        chain = chain_forward([46, 69, 72], 102, EXAMPLE)
        top = interpolate([(0, 65)] + chain, EXAMPLE.modulus)
        shares = deal(65, [46, 69, 72], EXAMPLE, y11=102)
        elapsed = time.perf_counter() - start

        assert levels == [(46, 56), (69, 40, 49), (72, 16, 38, 111)]
        assert top.coefficients == (65, 72, 72, 106, 66)
        assert shares == [Share(*s) for s in EXAMPLE_SHARES]
        assert elapsed < 1.0


def test_2_example_reconstruction(criterion):
    with criterion(2, "all 21 five-share subsets recover S=65, hidden (46,69,72)"):
        subsets = list(itertools.combinations(EXAMPLE_SHARES, 5))
        assert len(subsets) == 21
        for subset in subsets:
            assert reconstruct(subset, EXAMPLE) == (65, (46, 69, 72))


def test_3_xor_scheme(criterion, rng):
    with criterion(3, "xor2 example 0010/1001 and capacity law for m=1..10"):
        assert xor2_split(["1", "01", "1011"], base_bit=0) == ("0010", "1001")
        assert xor2_reconstruct("0010", "1001", 3) == ["1", "01", "1011"]
        for m in range(1, 11):
            secrets = [format(rng.getrandbits(1 << i), "b").zfill(1 << i) for i in range(m)]
            s1, s2 = xor2_split(secrets, rng)
            assert len(s1) == len(s2) == 2 ** (m - 1)
            assert sum(len(s) for s in secrets) == 2**m - 1
            assert xor2_reconstruct(s1, s2, m) == secrets


def test_4_round_trip_property(criterion):
    with criterion(4, "1000 random instances, sampled k-subsets reconstruct, < 30 s"):
        rng = random.Random(4)
        start = time.perf_counter()
        checked = 0
        for _ in range(1000):
            k = rng.randint(2, 8)
            n = rng.randint(k, 12)
            p = rng.choice(PRIMES)
            params = DealingParams(PrimeModulus(p), k, n)
            secret = rng.randrange(p)
            hidden = tuple(rng.randrange(p) for _ in range(k - 2))
            shares = deal(secret, hidden, params, rng)
            for _ in range(3):
                assert reconstruct(rng.sample(shares, k), params) == (secret, hidden)
                checked += 1
        assert checked == 3000
        assert time.perf_counter() - start < 30


@pytest.mark.parametrize("k", [2, 3])
def test_5_perfect_secrecy(criterion, k):
    with criterion(5, f"Shamir perfect secrecy at p=11, k={k} (exact counts)"):
        p, n = 11, k + 1
        params = ShamirParams(PrimeModulus(p), k, n)
        for view_xs in itertools.combinations(params.share_abscissae, k - 1):
            per_view = {}
            for secret in range(p):
                for rand in itertools.product(range(p), repeat=k - 1):
                    shares = dict(shamir_split(secret, params, randomness=rand))
                    view = tuple(shares[x] for x in view_xs)
                    per_view.setdefault(view, Counter())[secret] += 1
            assert len(per_view) == p ** (k - 1)
            for counts in per_view.values():
                assert sorted(counts) == list(range(p))
                assert len(set(counts.values())) == 1


def test_6_first_level_uniformity(criterion):
    with criterion(6, "y11 -> y21 and y11 -> y22 are bijections on Z_11"):
        p = 11
        params = DealingParams(PrimeModulus(p), 3, 3)
        for s1 in range(p):
            y21s, y22s = Counter(), Counter()
            for y11 in range(p):
                y21, y22 = (pt.y for pt in chain_forward([s1], y11, params))
                y21s[y21] += 1
                y22s[y22] += 1
            assert y21s == Counter(range(p))
            assert y22s == Counter(range(p))


def test_7_tamper_detection(criterion):
    with criterion(7, "tampering caught with k+1 shares 100/100; digest catches k-share case"):
        rng = random.Random(7)
        caught = silent_wrong = digest_caught = 0
        for _ in range(100):
            k = rng.randint(3, 8)
            n = rng.randint(k + 1, 12)
            p = rng.choice(PRIMES)
            params = DealingParams(PrimeModulus(p), k, n)
            secret = rng.randrange(p)
            hidden = tuple(rng.randrange(p) for _ in range(k - 2))
            shares = deal(secret, hidden, params, rng)

            subset = rng.sample(shares, k + 1)
            victim = rng.randrange(k + 1)
            x, y = subset[victim]
            subset[victim] = Share(x, (y + rng.randrange(1, p)) % p)
            try:
                reconstruct(subset, params)
            except InconsistentSharesError:
                caught += 1

            exact = subset[:victim] + subset[victim + 1 :]
            exact = exact[: k - 1] + [subset[victim]]
            if reconstruct(exact, params) != (secret, hidden):
                silent_wrong += 1

            msg = rng.randbytes(rng.randint(60, 200))
            files = split_message(msg, k, n, embed_digest=True, rng=rng)
            picked = rng.sample(files, k)
            target = picked[0]
            ys = list(target.ys)
            c = rng.randrange(len(ys))
            ys[c] = (ys[c] + rng.randrange(1, target.p)) % target.p
            picked[0] = ShareFile(**{**target.__dict__, "ys": tuple(ys)})
            try:
                combine_shares(picked, check_digest=True)
            except IntegrityError:
                digest_caught += 1

        assert caught == 100
        assert silent_wrong == 100
        assert digest_caught == 100


def test_8_cli_end_to_end(criterion, tmp_path):
    with criterion(8, "CLI: 1 MiB, k=5 n=7, drop two shares, digest OK, < 5 s"):
        rng = random.Random(8)
        src = tmp_path / "payload.bin"
        src.write_bytes(rng.randbytes(1 << 20))
        out = tmp_path / "shares"
        target = tmp_path / "restored.bin"

        start = time.perf_counter()
        split_args = ["split", "--k", "5", "--n", "7", "--embed-digest", "--out", str(out)]
        assert main(split_args + [str(src)]) == 0
        files = sorted(out.glob("*.rss"))
        assert len(files) == 7
        for dropped in rng.sample(files, 2):
            dropped.unlink()
        remaining = sorted(out.glob("*.rss"))
        args = ["reconstruct", "--check-digest", "--out", str(target)]
        assert main(args + [str(f) for f in remaining]) == 0
        elapsed = time.perf_counter() - start

        assert target.read_bytes() == src.read_bytes()
        assert elapsed < 5.0
