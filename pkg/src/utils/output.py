"""
Table emission for the command line.

CSV starts with a "# config: <json>" line; JSON is {"config": ..., "rows": [...]}.
Keys are sorted and floats use pandas' fixed formatting so that a rerun
produces identical bytes.
"""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd

from src.utils.errors import BadParameter

# Configure logging
logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


def render_table(frame: pd.DataFrame, config: Dict[str, Any], fmt: str = "csv") -> str:
    if fmt not in FORMATS:
        raise BadParameter(f"unknown output format {fmt!r}; expected one of {FORMATS}")
    header = json.dumps(config, sort_keys=True, default=str)
    if fmt == "csv":
        return f"# config: {header}\n" + frame.to_csv(index=False, lineterminator="\n")
    rows = json.loads(frame.to_json(orient="records", double_precision=15))
    return json.dumps({"config": json.loads(header), "rows": rows}, indent=2, sort_keys=True) + "\n"


def write_table(frame: pd.DataFrame, config: Dict[str, Any], fmt: str = "csv",
                out: Optional[str] = None) -> None:
    """Write to the path in out, or to stdout when out is None or "-" """
    text = render_table(frame, config, fmt)
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"Wrote {len(frame)} row(s) to {path}")
