from __future__ import annotations

import logging
from typing import Optional

from core.errors import DomainMismatch
from core.numerics.tolerances import DEFAULT_TOLERANCES
from core.spaces.norms import basis_vector, norm
from core.spaces.sampling import random_vector, trial_rng
from core.spaces.types import SpaceParams
from core.weights.types import IndexDomain

logger = logging.getLogger(__name__)


def sharpness_probe(
    src: SpaceParams,
    tgt: SpaceParams,
    trials: int,
    seed: int = 0,
    window: Optional[int] = None,
    support_size: Optional[int] = None,
) -> float:
    """Empirical lower bound on the best constant C with ||p||_tgt <= C ||p||_src.

    Takes the largest ratio over every basis vector with |m| <= window and
    ``trials`` seeded random finite-support vectors.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if src.domain is not tgt.domain:
        raise DomainMismatch(f"probe spaces live on different domains: {src.domain.value} vs {tgt.domain.value}")
    window = DEFAULT_TOLERANCES.sampling.probe_window if window is None else window
    support_size = support_size or DEFAULT_TOLERANCES.sampling.support_size
    lo = 0 if src.domain is IndexDomain.HALF_LINE else -window

    best = 0.0
    for m in range(lo, window + 1):
        e_m = basis_vector(m)
        best = max(best, norm(tgt, e_m) / norm(src, e_m))
    for trial in range(trials):
        p = random_vector(trial_rng(seed, trial), (lo, window), support_size, src.domain)
        best = max(best, norm(tgt, p) / norm(src, p))
    logger.debug(f"[PROBE] best ratio {best:.12g} over {trials} trials and |m| <= {window}")
    return best
