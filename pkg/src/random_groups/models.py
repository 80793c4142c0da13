"""
Triangular-model presentations.

    density(d):   N = round((2m−1)^{3d}) relators, uniform N-subset
    uniform(N):   uniform N-subset
    binomial(ρ):  each relator independently with probability ρ

Sampling draws ranks and unranks them, so memory is O(|R|) for every m.
"""

import logging
import math
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.random_groups.words import Relator, relator_count, unrank_relators
from src.utils.errors import BadParameter, NTooLarge
from src.utils.seeding import make_rng

# Configure logging
logger = logging.getLogger(__name__)

MODELS = ("density", "uniform", "binomial", "explicit")


class Presentation(BaseModel):
    """
    Generators a0..a{m-1} and a set of length-3 relators as an (N, 3) code array.

    The array must already hold distinct words; from_relators drops repeats.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: int
    relators: np.ndarray
    model: str = "explicit"
    param: Optional[float] = None
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _check(self):
        if self.m < 1:
            raise BadParameter(f"m must be >= 1, got {self.m}")
        if self.model not in MODELS:
            raise BadParameter(f"unknown model {self.model!r}")
        codes = self.relators
        if codes.ndim != 2 or codes.shape[1] != 3:
            raise BadParameter(f"relators must be an (N, 3) array, got shape {codes.shape}")
        if codes.size:
            if codes.min() < 0 or codes.max() >= 2 * self.m:
                raise BadParameter(f"relator letter outside the alphabet of {self.m} generators")
            x, y, z = codes[:, 0], codes[:, 1], codes[:, 2]
            if np.any((y == x ^ 1) | (z == y ^ 1) | (x == z ^ 1)):
                raise BadParameter("presentation contains a relator that is not cyclically reduced")
            if np.unique(codes, axis=0).shape[0] != codes.shape[0]:
                raise BadParameter("presentation contains duplicate relators")
        return self

    @property
    def n_relators(self) -> int:
        return int(self.relators.shape[0])

    @property
    def tag(self) -> str:
        if self.param is None:
            return self.model
        param = int(self.param) if self.model == "uniform" else self.param
        return f"{self.model}({param})"

    def words(self) -> List[Relator]:
        return [Relator.from_codes(row) for row in self.relators]

    @classmethod
    def from_relators(cls, m: int, relators: List[Relator], **metadata) -> "Presentation":
        unique = list(dict.fromkeys(r.codes for r in relators))
        if len(unique) < len(relators):
            logger.debug(f"Dropped {len(relators) - len(unique)} repeated relator(s)")
        codes = np.array(unique, dtype=np.int64).reshape(-1, 3)
        return cls(m=m, relators=codes, **metadata)


def _subset(m: int, n_relators: int, rng: np.random.Generator) -> np.ndarray:
    total = relator_count(m)
    if n_relators > total:
        raise NTooLarge(n_relators, total)
    ranks = np.sort(rng.choice(total, size=n_relators, replace=False)) if n_relators else np.zeros(0, np.int64)
    return unrank_relators(m, ranks)


def density_relator_count(m: int, d: float) -> int:
    """(2m−1)^{3d} rounded half up"""
    return int(math.floor((2 * m - 1) ** (3.0 * d) + 0.5))


def density_to_binomial(m: int, d: float) -> float:
    """ρ giving the density model's expected relator count"""
    return (2 * m - 1) ** (3.0 * d) / relator_count(m)


def sample_density_model(m: int, d: float, seed: int) -> Presentation:
    if not 0 < d < 1:
        raise BadParameter(f"density must lie in (0, 1), got {d}")
    if m < 1:
        raise BadParameter(f"m must be >= 1, got {m}")
    count = density_relator_count(m, d)
    codes = _subset(m, count, make_rng(seed))
    logger.debug(f"Sampled density({d}) presentation: m={m}, {count} relators")
    return Presentation(m=m, relators=codes, model="density", param=d, seed=seed)


def sample_uniform_model(m: int, n_relators: int, seed: int) -> Presentation:
    if m < 1:
        raise BadParameter(f"m must be >= 1, got {m}")
    if n_relators < 0:
        raise BadParameter(f"relator count must be >= 0, got {n_relators}")
    codes = _subset(m, int(n_relators), make_rng(seed))
    return Presentation(m=m, relators=codes, model="uniform", param=float(n_relators), seed=seed)


def sample_binomial_model(m: int, rho: float, seed: int) -> Presentation:
    """
    Independent inclusion with probability ρ.

    Drawn as |R| ~ Binomial((2m−1)³+1, ρ) followed by a uniform |R|-subset,
    which has the same law as independent coin flips.
    """
    if m < 1:
        raise BadParameter(f"m must be >= 1, got {m}")
    if not 0.0 <= rho <= 1.0:
        raise BadParameter(f"rho must lie in [0, 1], got {rho}")
    rng = make_rng(seed)
    count = int(rng.binomial(relator_count(m), rho))
    codes = _subset(m, count, rng)
    return Presentation(m=m, relators=codes, model="binomial", param=rho, seed=seed)


def sample_presentation(model: str, m: int, param: float, seed: int) -> Presentation:
    if model == "density":
        return sample_density_model(m, float(param), seed)
    if model == "uniform":
        return sample_uniform_model(m, int(param), seed)
    if model == "binomial":
        return sample_binomial_model(m, float(param), seed)
    raise BadParameter(f"unknown model {model!r}")
