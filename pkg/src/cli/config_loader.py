"""
Experiment configuration files: key=value lines, # comments and blank lines
ignored. Keys use the long flag names with '-' or '_' (seed, rho-rule, ...).
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from src.utils.errors import ParseError

# Configure logging
logger = logging.getLogger(__name__)


class ExperimentConfig(BaseModel):
    command: Optional[str] = None
    grid: Dict[str, List[Any]] = Field(default_factory=dict)
    trials: int = 1
    seed: Optional[int] = None
    out: Optional[str] = None
    format: str = "csv"
    workers: int = 1
    options: Dict[str, Any] = Field(default_factory=dict)

    def echo(self) -> Dict[str, Any]:
        """Everything that determines the output bytes; workers and out do not"""
        return self.model_dump(exclude={"workers", "out"})


def parse_config_text(text: str, source: str = "<input>") -> Dict[str, str]:
    values: Dict[str, str] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not key or " " in key:
            raise ParseError(f"expected key=value, got {line!r}", line_number, source)
        values[key] = value.strip()
    return values


def config_load(path: Union[str, Path]) -> ExperimentConfig:
    """
    Read a config file. Values stay unconverted in options, keyed by flag
    destination; the command line resolves and overrides them.
    """
    path = Path(path)
    if not path.exists():
        raise ParseError("config file not found", None, str(path))
    logger.info(f"Loading experiment config from {path}")
    values = parse_config_text(path.read_text(), str(path))
    return ExperimentConfig(command=values.pop("command", None), options=values)
