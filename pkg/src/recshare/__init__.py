"""Recursive multi-secret sharing over prime fields."""

from .errors import *  # noqa: F401,F403
from .field import DEFAULT_PRIME, FieldElement, PrimeModulus, is_prime, sample_uniform
from .poly import Point, Polynomial, interpolate, poly_eval
from .shamir import ShamirParams, Share, shamir_reconstruct, shamir_split
from .recursive import DealingParams, chain_forward, deal, reconstruct
from .xor2 import xor2_reconstruct, xor2_split
from .codec import (
    ShareFile,
    Xor2ShareFile,
    combine_shares,
    parse_share,
    serialize_share,
    split_message,
)

__version__ = "0.1.0"
