from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from core.errors import HypothesisFailure
from core.weights.types import IndexDomain


class EmbeddingRelation(str, Enum):
    """Kind of inclusion between two spaces of the scale."""

    COMPACT = "CompactEmbedding"
    CONTINUOUS = "ContinuousEmbedding"
    NO_GUARANTEE = "NoGuarantee"


class Theorem(str, Enum):
    """Result a compactness certificate is extracted from."""

    T1A = "T1a"
    T1B = "T1b"
    T2 = "T2"


def subspace_dimension(m_star: int, domain: IndexDomain) -> int:
    if m_star == 0:
        return 0
    return 2 * m_star + 1 if domain is IndexDomain.FULL_LINE else m_star


@dataclass(frozen=True)
class CompactnessCertificate:
    """Tail rank m* and the (epsilon, kappa) guarantee it certifies.

    Every p in the kappa-ball of the source space satisfies
    ||p - truncate(p, m_star)||_target <= epsilon / 2.
    """

    theorem: Theorem
    m_star: int
    subspace_dim: int
    epsilon: float
    kappa: float
    domain: IndexDomain = IndexDomain.FULL_LINE
    constant: Optional[float] = None
    rigorous: bool = True

    def __post_init__(self) -> None:
        if self.m_star < 0:
            raise HypothesisFailure(f"tail rank must be nonnegative, got {self.m_star}")
        if not (self.epsilon > 0 and self.kappa > 0):
            raise HypothesisFailure(f"epsilon and kappa must be positive, got {self.epsilon}, {self.kappa}")
        if self.subspace_dim != subspace_dimension(self.m_star, self.domain):
            raise HypothesisFailure(
                f"subspace_dim {self.subspace_dim} inconsistent with m_star={self.m_star} on the {self.domain.value} line"
            )

    @classmethod
    def issue(
        cls,
        theorem: Theorem,
        m_star: int,
        epsilon: float,
        kappa: float,
        domain: IndexDomain,
        constant: Optional[float] = None,
        rigorous: bool = True,
    ) -> "CompactnessCertificate":
        return cls(
            theorem=theorem,
            m_star=int(m_star),
            subspace_dim=subspace_dimension(int(m_star), domain),
            epsilon=float(epsilon),
            kappa=float(kappa),
            domain=domain,
            constant=constant,
            rigorous=rigorous,
        )

    @property
    def guaranteed_tail(self) -> float:
        return self.epsilon / 2.0

    @property
    def basis_window(self) -> Tuple[int, int]:
        """Index window spanned by the approximating subspace."""
        if self.domain is IndexDomain.HALF_LINE:
            return 0, max(self.m_star - 1, 0)
        return -self.m_star, self.m_star

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem.value,
            "m_star": self.m_star,
            "subspace_dim": self.subspace_dim,
            "epsilon": self.epsilon,
            "kappa": self.kappa,
            "constant": self.constant,
            "rigorous": self.rigorous,
        }


@dataclass(frozen=True)
class EmbeddingReport:
    relation: EmbeddingRelation
    constant: Optional[float] = None
    hypothesis_notes: Tuple[str, ...] = ()
    rigorous: bool = True

    def __post_init__(self) -> None:
        if self.relation is not EmbeddingRelation.NO_GUARANTEE and self.constant is None:
            raise HypothesisFailure(f"{self.relation.value} report needs a constant")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "relation": self.relation.value,
            "constant": self.constant,
            "hypothesis_notes": list(self.hypothesis_notes),
            "rigorous": self.rigorous,
        }


@dataclass(frozen=True)
class ChainLink:
    source: str
    target: str
    relation: EmbeddingRelation


@dataclass(frozen=True)
class CorollaryChain:
    """One of the interlacing chains of l^s_w between h^{k',s}_w and h^{k,s}_w."""

    case: str
    links: Tuple[ChainLink, ...]

    def labels(self) -> List[str]:
        return [
            "compact" if link.relation is EmbeddingRelation.COMPACT else "continuous" for link in self.links
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case,
            "links": [
                {"source": link.source, "target": link.target, "relation": link.relation.value}
                for link in self.links
            ],
        }


@dataclass(frozen=True)
class SeriesSum:
    """Certified value of sum over the domain of (1+|m|^s)^{-kr/s}.

    The true sum lies in [lower, upper]; value is their midpoint.
    """

    value: float
    lower: float
    upper: float
    terms: int
    k: float
    s: float
    t: float
    r: float
    domain: IndexDomain
    tol: float

    @property
    def error_bound(self) -> float:
        return (self.upper - self.lower) / 2.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "s": self.s,
            "t": self.t,
            "r": self.r,
            "domain": self.domain.value,
            "tol": self.tol,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "terms": self.terms,
        }
