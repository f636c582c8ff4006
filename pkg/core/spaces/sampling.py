"""Seeded finite-support sampling of sequences."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from core.spaces.norms import norm
from core.spaces.types import SeqVector, SpaceParams
from core.weights.types import IndexDomain


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent, reproducible stream for one trial of a seeded run."""
    return np.random.default_rng([int(seed), int(trial)])


def random_vector(
    rng: np.random.Generator,
    window: Tuple[int, int],
    support_size: int,
    domain: IndexDomain = IndexDomain.FULL_LINE,
) -> SeqVector:
    """Complex vector with random support inside ``window`` and log-uniform magnitudes."""
    lo, hi = window
    if domain is IndexDomain.HALF_LINE:
        lo = max(lo, 0)
    candidates = np.arange(lo, hi + 1)
    size = int(min(max(support_size, 1), candidates.size))
    support = rng.choice(candidates, size=size, replace=False)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=size)
    magnitudes = 10.0 ** rng.uniform(-3.0, 1.0, size=size)
    values = magnitudes * np.exp(1j * phases)
    return SeqVector.from_arrays(support.tolist(), values.tolist())


def sphere_sample(
    sp: SpaceParams,
    radius: float,
    rng: np.random.Generator,
    window: Tuple[int, int],
    support_size: int,
) -> SeqVector:
    """Random vector rescaled so that ||p||_{k,s,w} = radius."""
    p = random_vector(rng, window, support_size, sp.domain)
    return p.scale(radius / norm(sp, p))
