"""
Orchestrator Module

This module coordinates Monte Carlo experiments across the lab's trial kinds.
"""

from .experiment_orchestrator import (
    ExperimentDescriptor,
    ExperimentOrchestrator,
    experiment_orchestrator,
    register_trial_kind,
)
from .rho_rules import resolve_rho

__all__ = [
    "ExperimentDescriptor",
    "ExperimentOrchestrator",
    "experiment_orchestrator",
    "register_trial_kind",
    "resolve_rho",
]
