"""
Cyclically reduced words of length 3 over S ∪ S⁻¹.

Letters are coded as integers: generator i is 2i, its inverse 2i+1, so the
inverse of code c is c ^ 1 and code order is a0 < A0 < a1 < A1 < ...
Words are ranked lexicographically in code order, giving a bijection between
[0, (2m−1)³+1) and the word space.
"""

import logging
import re
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.config import Config
from src.utils.errors import BadParameter, ParseError, TooLarge

# Configure logging
logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^([aA])(\d+)$")


class Letter(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int
    sign: int = 1

    @model_validator(mode="after")
    def _check(self):
        if self.index < 0:
            raise BadParameter(f"generator index must be >= 0, got {self.index}")
        if self.sign not in (1, -1):
            raise BadParameter(f"sign must be +1 or -1, got {self.sign}")
        return self

    @property
    def code(self) -> int:
        return 2 * self.index + (1 if self.sign == -1 else 0)

    @classmethod
    def from_code(cls, code: int) -> "Letter":
        return cls(index=int(code) // 2, sign=-1 if int(code) % 2 else 1)

    @classmethod
    def from_token(cls, token: str) -> "Letter":
        match = _TOKEN.match(token)
        if not match:
            raise BadParameter(f"bad letter token {token!r}")
        return cls(index=int(match.group(2)), sign=-1 if match.group(1) == "A" else 1)

    def inverse(self) -> "Letter":
        return Letter(index=self.index, sign=-self.sign)

    def __str__(self) -> str:
        return f"{'a' if self.sign == 1 else 'A'}{self.index}"


def is_cyclically_reduced(codes: Sequence[int]) -> bool:
    x, y, z = (int(c) for c in codes)
    return y != x ^ 1 and z != y ^ 1 and x != z ^ 1


class Relator(BaseModel):
    model_config = ConfigDict(frozen=True)

    letters: Tuple[Letter, Letter, Letter]

    @model_validator(mode="after")
    def _check(self):
        if not is_cyclically_reduced(self.codes):
            raise BadParameter(f"{self} is not cyclically reduced")
        return self

    @property
    def codes(self) -> Tuple[int, int, int]:
        return tuple(letter.code for letter in self.letters)

    @classmethod
    def from_codes(cls, codes: Sequence[int]) -> "Relator":
        return cls(letters=tuple(Letter.from_code(c) for c in codes))

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters)


def parse_relator(tokens: Sequence[str], line_number: int = None, path: str = None) -> Relator:
    if len(tokens) != 3:
        raise ParseError(f"relator needs three letters, got {len(tokens)}", line_number, path)
    try:
        return Relator(letters=tuple(Letter.from_token(token) for token in tokens))
    except BadParameter as e:
        raise ParseError(str(e), line_number, path)


def relator_count(m: int) -> int:
    """(2m−1)³ + 1"""
    return (2 * m - 1) ** 3 + 1


def _per_first_letter(m: int) -> int:
    letters = 2 * m
    return (letters - 1) + (letters - 2) ** 2


def unrank_relators(m: int, ranks) -> np.ndarray:
    """Words (as an (N, 3) code array) at the given lexicographic ranks"""
    ranks = np.asarray(ranks, dtype=np.int64)
    letters = 2 * m
    per_x = _per_first_letter(m)
    block = letters - 2
    safe_block = max(block, 1)

    x = ranks // per_x
    rest = ranks % per_x
    ix = x ^ 1
    jx = x - (ix < x)
    before = jx * block

    in_before = rest < before
    in_self = ~in_before & (rest < before + letters - 1)
    after_rest = rest - before - (letters - 1)
    j = np.where(in_before, rest // safe_block, np.where(in_self, jx, jx + 1 + after_rest // safe_block))
    zi = np.where(in_before, rest % safe_block, np.where(in_self, rest - before, after_rest % safe_block))

    y = j + (j >= ix)
    iy = y ^ 1
    same = y == x
    low = np.minimum(ix, iy)
    high = np.maximum(ix, iy)
    z = zi + (zi >= low)
    z = z + ((z >= high) & ~same)
    return np.stack([x, y, z], axis=1).astype(np.int64)


def rank_relators(m: int, codes) -> np.ndarray:
    """Inverse of unrank_relators"""
    codes = np.atleast_2d(np.asarray(codes, dtype=np.int64))
    x, y, z = codes[:, 0], codes[:, 1], codes[:, 2]
    letters = 2 * m
    block = letters - 2

    ix, iy = x ^ 1, y ^ 1
    jx = x - (ix < x)
    j = y - (y > ix)
    same = y == x
    zi = z - (z > np.minimum(ix, iy)) - ((z > np.maximum(ix, iy)) & ~same)

    offset = np.where(
        j < jx,
        j * block + zi,
        np.where(j == jx, jx * block + zi, jx * block + (letters - 1) + (j - jx - 1) * block + zi),
    )
    return x * _per_first_letter(m) + offset


def enumerate_codes(m: int) -> np.ndarray:
    if m < 1:
        raise BadParameter(f"m must be >= 1, got {m}")
    if m > Config.MAX_ENUMERATE_M:
        raise TooLarge(f"m={m} exceeds the enumeration cap {Config.MAX_ENUMERATE_M}")
    return unrank_relators(m, np.arange(relator_count(m), dtype=np.int64))


def enumerate_relators(m: int) -> List[Relator]:
    """Every cyclically reduced word of length 3, lexicographic in code order"""
    return [Relator.from_codes(row) for row in enumerate_codes(m)]
