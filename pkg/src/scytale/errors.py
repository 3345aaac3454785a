"""Exception hierarchy shared by every scytale module."""


class ScytaleError(Exception):
    """Base class for all scytale errors."""


class InvalidBlockSizeError(ScytaleError, ValueError):
    pass


class ConfigurationError(ScytaleError, ValueError):
    pass


class MalformedCiphertextError(ScytaleError, ValueError):
    pass


class MalformedContainerError(MalformedCiphertextError):
    pass


class BadMagicError(MalformedContainerError):
    pass


class UnsupportedVersionError(MalformedContainerError):
    pass


class TruncatedContainerError(MalformedContainerError):
    pass


class CorruptImageError(MalformedCiphertextError):
    pass


class IncompatibleCiphertextError(ScytaleError, ValueError):
    pass


class IntegrityError(ScytaleError, RuntimeError):
    """A decrypt(encrypt(p)) cycle did not reproduce p."""
