from __future__ import annotations

from core.logging.events import (
    CertificateIssuedEvent,
    EventLogger,
    HypothesisFailureEvent,
    PropertyCheckEvent,
    PropertyFailureEvent,
    SeriesSummedEvent,
    VerificationEvent,
)

__all__ = [
    "EventLogger",
    "VerificationEvent",
    "SeriesSummedEvent",
    "CertificateIssuedEvent",
    "PropertyCheckEvent",
    "PropertyFailureEvent",
    "HypothesisFailureEvent",
]
