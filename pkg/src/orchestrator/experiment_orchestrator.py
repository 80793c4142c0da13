"""
Experiment Orchestrator

Expands an experiment descriptor into grid points × trials, derives each
trial's seed from (master seed, grid index, trial index), dispatches the
trials to a bounded worker pool and returns rows in deterministic order.
"""

import importlib
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Tuple

import pandas as pd
from pydantic import BaseModel, Field

from src.config import Config
from src.orchestrator.rho_rules import resolve_rho
from src.utils.errors import BadParameter, InvalidDescriptor
from src.utils.seeding import derive_seed

# Configure logging
logger = logging.getLogger(__name__)

TrialFunction = Callable[[Dict[str, Any], int, Dict[str, Any]], Dict[str, Any]]

# modules that register trial kinds on import
KIND_MODULES = (
    "src.random_graphs.montecarlo",
    "src.random_groups.experiments",
    "src.certify.experiments",
)


class ExperimentDescriptor(BaseModel):
    kind: str
    grid: Dict[str, List[Any]]
    trials: int
    master_seed: int
    options: Dict[str, Any] = Field(default_factory=dict)


class TrialKind(BaseModel):
    name: str
    columns: List[str]
    required: List[str]
    function: Callable

    model_config = {"arbitrary_types_allowed": True}


_REGISTRY: Dict[str, TrialKind] = {}


def register_trial_kind(name: str, columns: List[str], required: List[str]):
    """Decorator registering a trial function under a kind name"""
    def decorator(function: TrialFunction) -> TrialFunction:
        _REGISTRY[name] = TrialKind(name=name, columns=columns, required=required, function=function)
        return function
    return decorator


class ExperimentOrchestrator:
    """Runs descriptor grids on an ordered worker pool"""

    def __init__(self, workers: int = None):
        self.workers = workers or Config.WORKERS
        logger.info(f"Initializing Experiment Orchestrator with {self.workers} worker(s)")

    @staticmethod
    def load_kinds() -> Dict[str, TrialKind]:
        for module in KIND_MODULES:
            importlib.import_module(module)
        return _REGISTRY

    def resolve_kind(self, descriptor: ExperimentDescriptor) -> TrialKind:
        kinds = self.load_kinds()
        if descriptor.kind not in kinds:
            raise InvalidDescriptor(f"unknown trial kind {descriptor.kind!r}; known: {sorted(kinds)}")
        kind = kinds[descriptor.kind]
        missing = [name for name in kind.required if name not in descriptor.grid]
        if missing:
            raise InvalidDescriptor(f"grid for {descriptor.kind!r} lacks {missing}")
        if descriptor.trials < 1:
            raise InvalidDescriptor(f"trial count must be positive, got {descriptor.trials}")
        if any(len(values) == 0 for values in descriptor.grid.values()):
            raise InvalidDescriptor("grid has an empty parameter list")
        return kind

    @staticmethod
    def grid_points(descriptor: ExperimentDescriptor) -> List[Dict[str, Any]]:
        """Cartesian product in declaration order; ρ rules are resolved against m"""
        names = list(descriptor.grid)
        points = []
        for values in itertools.product(*(descriptor.grid[name] for name in names)):
            point = dict(zip(names, values))
            if "rho" in point and "m" in point:
                try:
                    point["rho"] = resolve_rho(point["rho"], int(point["m"]))
                except BadParameter as e:
                    raise InvalidDescriptor(str(e))
            points.append(point)
        return points

    def tasks(self, descriptor: ExperimentDescriptor) -> List[Tuple[Dict[str, Any], int, int]]:
        return [
            (point, trial, derive_seed(descriptor.master_seed, index, trial))
            for index, point in enumerate(self.grid_points(descriptor))
            for trial in range(descriptor.trials)
        ]

    def run(self, descriptor: ExperimentDescriptor) -> pd.DataFrame:
        """
        Execute every trial of the descriptor.

        Returns:
            DataFrame with the kind's declared columns, one row per trial,
            ordered by grid point then trial index
        """
        kind = self.resolve_kind(descriptor)
        tasks = self.tasks(descriptor)
        logger.info(f"Running {len(tasks)} {descriptor.kind} trial(s)")

        def execute(task):
            point, trial, seed = task
            outputs = kind.function(point, seed, descriptor.options)
            logger.debug(f"{descriptor.kind} trial {trial} at {point} done")
            return {"kind": descriptor.kind, **point, "trial": trial, "seed": seed, **outputs}

        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                rows = list(pool.map(execute, tasks))
        else:
            rows = [execute(task) for task in tasks]

        frame = pd.DataFrame(rows)
        for column in kind.columns:
            if column not in frame:
                frame[column] = None
        return frame[kind.columns]


# Create a global instance for easy access
experiment_orchestrator = ExperimentOrchestrator()
