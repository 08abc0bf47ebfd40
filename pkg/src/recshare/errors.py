"""Exception hierarchy shared by every module.

Each leaf maps to one CLI exit code: validation problems (2), integrity
problems (4). I/O failures surface as plain ``OSError`` (3).
"""


class SharingError(ValueError):
    """Base class for all errors raised by recshare."""


class ParameterError(SharingError):
    """Invalid scheme parameters or mismatched moduli."""


class RangeError(SharingError):
    """A value does not fit in the field (value >= p)."""


class UnsupportedModulusError(ParameterError):
    """The modulus is too small for the byte chunking in use."""


class DuplicateAbscissaError(SharingError):
    """Two points or shares share an x coordinate."""


class InsufficientSharesError(SharingError):
    """Fewer than k shares were supplied."""


class CapacityError(SharingError):
    """The hidden channel cannot hold the requested payload."""

    def __init__(self, required: int, available: int):
        self.required = required
        self.available = available
        super().__init__(
            f"hidden channel needs {required} bytes but only {available} are available"
        )


class ShareFormatError(SharingError):
    """A share file does not follow the on-disk format."""


class BadMagicError(ShareFormatError):
    pass


class UnknownVersionError(ShareFormatError):
    pass


class NonCanonicalError(ShareFormatError):
    pass


class CountMismatchError(ShareFormatError):
    pass


class IntegrityError(SharingError):
    """Reconstructed data is provably wrong: corruption or cheating."""


class InconsistentSharesError(IntegrityError):
    """A surplus share does not lie on the reconstructed polynomial."""


class CorruptionError(IntegrityError):
    """Decoded data violates its own framing (length headers, padding)."""


class DigestMismatchError(IntegrityError):
    """The embedded digest does not match the reconstructed message."""
