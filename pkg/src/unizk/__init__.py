"""Unclonable non-interactive zero-knowledge proofs over simulated quantum money."""
from .errors import (AdversaryMalformed, AlreadyDefined, DecodeError, ExtractionFailed,
                     MalformedArtifact, NormalizationError, NotAFork, StateReuse, UnizkError,
                     UnknownSerial, VersionMismatch, WitnessMismatch)
from .group import FIXTURE, GroupParams, get_params, production_params

__version__ = "0.1.0"

__all__ = [
    "AdversaryMalformed", "AlreadyDefined", "DecodeError", "ExtractionFailed", "MalformedArtifact",
    "NormalizationError", "NotAFork", "StateReuse", "UnizkError", "UnknownSerial", "VersionMismatch",
    "WitnessMismatch", "FIXTURE", "GroupParams", "get_params", "production_params",
]
