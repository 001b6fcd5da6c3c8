"""End-to-end training: partition input MFs, cluster the output, induce rules."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .constants import INPUT_LABELS, INPUT_VARIABLES, OUTPUT_VARIABLE, default_output_labels
from .dataset import Dataset, split, to_training
from .fcm import FcmConfig, FcmResult, fcm_cluster, mfs_from_centers
from .inference import InferenceConfig, MamdaniModel
from .membership import LinguisticVariable, Universe, make_equal_partition
from .rules import TrainingRecord, induce_rules


@dataclass(frozen=True)
class TrainConfig:
    """Pipeline settings; defaults follow the published design (60% train, 4 clusters)."""

    train_fraction: float = 0.6
    fcm: FcmConfig = field(default_factory=FcmConfig)
    seed: int = 0
    input_labels: tuple[str, ...] = INPUT_LABELS
    output_labels: tuple[str, ...] | None = None
    grid_step: float = 0.1
    stratify_by_app: bool = False

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction <= 1.0:
            raise ValueError(f"train_fraction must be in (0, 1], got {self.train_fraction}")
        if len(self.input_labels) < 2:
            raise ValueError("need at least 2 input labels")
        if self.output_labels is not None and len(self.output_labels) != self.fcm.c:
            raise ValueError(
                f"{len(self.output_labels)} output labels for {self.fcm.c} clusters"
            )

    def resolved_output_labels(self) -> tuple[str, ...]:
        if self.output_labels is not None:
            return tuple(self.output_labels)
        return default_output_labels(self.fcm.c)


@dataclass(frozen=True)
class TrainResult:
    model: MamdaniModel
    fcm_result: FcmResult
    train: Dataset | None
    test: Dataset | None
    summary: dict


def build_input_variables(
    labels: Sequence[str] = INPUT_LABELS,
    grid_step: float = 0.1,
) -> tuple[LinguisticVariable, ...]:
    """The four input variables, each an equal 5-triangle partition of [0, 100]."""
    universe = Universe(0.0, 100.0, grid_step)
    return tuple(
        LinguisticVariable(name, universe, make_equal_partition(universe, labels))
        for name in INPUT_VARIABLES
    )


def train_from_records(
    records: Sequence[TrainingRecord],
    config: TrainConfig = TrainConfig(),
) -> tuple[MamdaniModel, FcmResult]:
    """Fit a Mamdani model on normalized records.

    Input MFs are the fixed equal partition; output MFs come from fuzzy
    c-means clustering of the overall scores; rules are induced per record.
    """
    if not records:
        raise ValueError("cannot train on an empty record list")
    inputs = build_input_variables(config.input_labels, config.grid_step)
    fcm_result = fcm_cluster([r.overall for r in records], config.fcm)
    output_universe = Universe(0.0, 100.0, config.grid_step)
    output = LinguisticVariable(
        OUTPUT_VARIABLE,
        output_universe,
        mfs_from_centers(fcm_result.centers, output_universe, config.resolved_output_labels()),
    )
    rules = induce_rules(records, inputs, output)
    model = MamdaniModel(
        inputs=inputs,
        output=output,
        rules=rules,
        config=InferenceConfig(grid_step=config.grid_step),
        provenance={
            "fcm": {
                "centers": list(fcm_result.centers),
                "iterations": fcm_result.iterations,
                "converged": fcm_result.converged,
                "objective_trace": list(fcm_result.objective_trace),
                "config": {
                    "c": config.fcm.c,
                    "m": config.fcm.m,
                    "tol": config.fcm.tol,
                    "max_iter": config.fcm.max_iter,
                    "seed": config.fcm.seed,
                },
            },
            "training": {
                "seed": config.seed,
                "train_fraction": config.train_fraction,
                "stratify_by_app": config.stratify_by_app,
                "record_count": len(records),
            },
        },
    )
    return model, fcm_result


def train(dataset: Dataset, config: TrainConfig = TrainConfig()) -> TrainResult:
    """Split the dataset, train on the train part, and summarize the run."""
    if config.train_fraction < 1.0:
        train_set, test_set = split(dataset, config.train_fraction, config.seed,
                                    config.stratify_by_app)
    else:
        train_set, test_set = dataset, Dataset(())
    model, fcm_result = train_from_records(to_training(train_set), config)
    summary = {
        "rows": len(dataset),
        "train_rows": len(train_set),
        "test_rows": len(test_set),
        "rule_count": len(model.rules),
        "fcm_centers": list(fcm_result.centers),
        "fcm_iterations": fcm_result.iterations,
        "fcm_converged": fcm_result.converged,
        "fcm_objective_trace": list(fcm_result.objective_trace),
    }
    return TrainResult(model=model, fcm_result=fcm_result, train=train_set,
                       test=test_set, summary=summary)
