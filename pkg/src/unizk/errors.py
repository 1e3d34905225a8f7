"""Exception types shared across the package."""


class UnizkError(Exception):
    pass


class DecodeError(UnizkError):
    """A ciphertext or canonical encoding does not decode to a valid value."""


class WitnessMismatch(UnizkError):
    pass


class StateReuse(UnizkError):
    pass


class NotAFork(UnizkError):
    pass


class AlreadyDefined(UnizkError):
    """Attempt to program a random-oracle point that already has an answer."""


class ExtractionFailed(UnizkError):
    pass


class UnknownSerial(UnizkError):
    pass


class NormalizationError(UnizkError):
    pass


class AdversaryMalformed(UnizkError):
    pass


class VersionMismatch(UnizkError):
    pass


class MalformedArtifact(UnizkError):
    pass
