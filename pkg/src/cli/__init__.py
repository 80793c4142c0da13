"""
CLI Module

Subcommands wiring the lab's modules into reproducible experiments.
"""

from .config_loader import ExperimentConfig, config_load
from .main import run

__all__ = ["ExperimentConfig", "config_load", "run"]
