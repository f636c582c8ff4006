from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


@dataclass
class VerificationEvent:
    """Base class for library events."""

    timestamp: datetime
    event_type: str = "verification_event"
    severity: str = "info"  # info, warning, error

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["timestamp"] = self.timestamp.isoformat()
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass
class SeriesSummedEvent(VerificationEvent):
    """Certified weight series evaluated."""

    k: float = field(default=0.0)
    s: float = field(default=0.0)
    t: float = field(default=0.0)
    domain: str = field(default="full")
    value: float = field(default=0.0)
    error_bound: float = field(default=0.0)
    terms: int = field(default=0)
    event_type: str = "series_summed"


@dataclass
class CertificateIssuedEvent(VerificationEvent):
    """Compactness certificate produced."""

    theorem: str = field(default="")
    m_star: int = field(default=0)
    subspace_dim: int = field(default=0)
    epsilon: float = field(default=0.0)
    rigorous: bool = field(default=True)
    event_type: str = "certificate_issued"


@dataclass
class PropertyCheckEvent(VerificationEvent):
    """One property of a verify suite finished."""

    suite: str = field(default="")
    prop: str = field(default="")
    passed: int = field(default=0)
    trials: int = field(default=0)
    event_type: str = "property_check"


@dataclass
class PropertyFailureEvent(VerificationEvent):
    """A property failed; the counterexample is kept for replay."""

    suite: str = field(default="")
    prop: str = field(default="")
    trial: int = field(default=0)
    counterexample: Dict[str, Any] = field(default_factory=dict)
    event_type: str = "property_failure"
    severity: str = "error"


@dataclass
class HypothesisFailureEvent(VerificationEvent):
    """A command stopped on a failed hypothesis or a divergent series."""

    command: str = field(default="")
    error: str = field(default="")
    message: str = field(default="")
    exit_code: int = field(default=1)
    event_type: str = "hypothesis_failure"
    severity: str = "warning"


class EventLogger:
    """Structured event logger; appends JSON Lines when a log file is configured."""

    def __init__(self, log_file: Optional[Path] = None, enable_console: bool = True):
        self.log_file = Path(log_file) if log_file else None
        if self.log_file is not None:
            self.log_file.parent.mkdir(parents=True, exist_ok=True)
        self.enable_console = enable_console
        self.event_count = 0

    def log_event(self, event: VerificationEvent) -> None:
        self.event_count += 1

        if self.log_file is not None:
            with open(self.log_file, "a", encoding="utf-8") as f:
                f.write(event.to_json() + "\n")

        if self.enable_console:
            log_level = {
                "info": logging.INFO,
                "warning": logging.WARNING,
                "error": logging.ERROR,
                "critical": logging.CRITICAL,
            }.get(event.severity, logging.INFO)

            logger.log(log_level, f"[{event.event_type}] {event.to_json()}")

    def log_series(self, k: float, s: float, t: float, domain: str, value: float, error_bound: float, terms: int) -> None:
        self.log_event(
            SeriesSummedEvent(
                timestamp=datetime.now(),
                k=k,
                s=s,
                t=t,
                domain=domain,
                value=value,
                error_bound=error_bound,
                terms=terms,
            )
        )

    def log_certificate(
        self, theorem: str, m_star: int, subspace_dim: int, epsilon: float, rigorous: bool = True
    ) -> None:
        self.log_event(
            CertificateIssuedEvent(
                timestamp=datetime.now(),
                theorem=theorem,
                m_star=m_star,
                subspace_dim=subspace_dim,
                epsilon=epsilon,
                rigorous=rigorous,
                severity="info" if rigorous else "warning",
            )
        )

    def log_property(self, suite: str, prop: str, passed: int, trials: int) -> None:
        self.log_event(
            PropertyCheckEvent(
                timestamp=datetime.now(),
                suite=suite,
                prop=prop,
                passed=passed,
                trials=trials,
                severity="info" if passed == trials else "error",
            )
        )

    def log_property_failure(self, suite: str, prop: str, trial: int, counterexample: Dict[str, Any]) -> None:
        self.log_event(
            PropertyFailureEvent(
                timestamp=datetime.now(),
                suite=suite,
                prop=prop,
                trial=trial,
                counterexample=counterexample,
            )
        )

    def log_hypothesis_failure(self, command: str, error: str, message: str, exit_code: int) -> None:
        self.log_event(
            HypothesisFailureEvent(
                timestamp=datetime.now(),
                command=command,
                error=error,
                message=message,
                exit_code=exit_code,
            )
        )
