"""
Presentation file format.

    m <m> model <tag> [seed <seed>]
    a2 A0 a1
    ...

Uppercase letters are inverses. Tags: explicit, density(d), uniform(N), binomial(ρ).
"""

import logging
import re
from pathlib import Path
from typing import Union

from src.random_groups.models import MODELS, Presentation
from src.random_groups.words import parse_relator
from src.utils.errors import BadParameter, ParseError

# Configure logging
logger = logging.getLogger(__name__)

_TAG = re.compile(r"^([a-z]+)(?:\(([^)]*)\))?$")


def parse_tag(tag: str, line_number: int = None, path: str = None):
    match = _TAG.match(tag)
    if not match or match.group(1) not in MODELS:
        raise ParseError(f"bad model tag {tag!r}", line_number, path)
    param = match.group(2)
    try:
        return match.group(1), (float(param) if param not in (None, "") else None)
    except ValueError:
        raise ParseError(f"bad model parameter {param!r}", line_number, path)


def parse_presentation(text: str, source: str = "<input>") -> Presentation:
    header = None
    relators = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            if len(tokens) not in (4, 6) or tokens[0] != "m" or tokens[2] != "model":
                raise ParseError("expected header 'm <m> model <tag>'", line_number, source)
            if len(tokens) == 6 and tokens[4] != "seed":
                raise ParseError(f"expected 'seed' after the model tag, got {tokens[4]!r}", line_number, source)
            try:
                m = int(tokens[1])
                seed = int(tokens[5]) if len(tokens) == 6 else None
            except ValueError:
                raise ParseError("non-integer m or seed in header", line_number, source)
            model, param = parse_tag(tokens[3], line_number, source)
            header = (m, model, param, seed)
            continue
        relators.append(parse_relator(tokens, line_number, source))

    if header is None:
        raise ParseError("missing header", None, source)
    m, model, param, seed = header
    try:
        return Presentation.from_relators(m, relators, model=model, param=param, seed=seed)
    except BadParameter as e:
        raise ParseError(str(e), None, source)


def format_presentation(pres: Presentation) -> str:
    header = f"m {pres.m} model {pres.tag}"
    if pres.seed is not None:
        header += f" seed {pres.seed}"
    return "\n".join([header] + [str(word) for word in pres.words()]) + "\n"


def load_presentation(path: Union[str, Path]) -> Presentation:
    path = Path(path)
    logger.info(f"Loading presentation from {path}")
    return parse_presentation(path.read_text(), str(path))


def save_presentation(pres: Presentation, path: Union[str, Path]) -> None:
    Path(path).write_text(format_presentation(pres))
