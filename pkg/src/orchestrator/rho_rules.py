"""
ρ rules: "c*logm/m", "c*logm/(8*m^2)" or an absolute number.
"""

import math
import re
from typing import Union

from src.utils.errors import BadParameter

_NUMBER = r"([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)"
_CONNECTIVITY = re.compile(rf"^(?:{_NUMBER}\*)?logm/m$")
_GROUP_REGIME = re.compile(rf"^(?:{_NUMBER}\*)?logm/\(8\*m\^2\)$")
_POWER = re.compile(rf"^(?:{_NUMBER}\*)?m\^(-?{_NUMBER[1:-1]})$")


def resolve_rho(rule: Union[str, float, int], m: int) -> float:
    """Evaluate a ρ rule at m"""
    if not isinstance(rule, str):
        return float(rule)
    text = rule.replace(" ", "")
    try:
        return float(text)
    except ValueError:
        pass

    match = _CONNECTIVITY.match(text)
    if match:
        coefficient = float(match.group(1) or 1.0)
        return coefficient * math.log(m) / m
    match = _GROUP_REGIME.match(text)
    if match:
        coefficient = float(match.group(1) or 1.0)
        return coefficient * math.log(m) / (8.0 * m * m)
    match = _POWER.match(text)
    if match:
        coefficient = float(match.group(1) or 1.0)
        return coefficient * float(m) ** float(match.group(2))
    raise BadParameter(f"unrecognised rho rule {rule!r}")
