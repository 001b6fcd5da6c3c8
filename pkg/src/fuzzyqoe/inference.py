"""Mamdani rule base, min/max inference, and centroid defuzzification."""
from __future__ import annotations

import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NoRuleCoverageError, OutOfRangeError
from .membership import LinguisticVariable, TriangularMF, Universe

MODEL_FORMAT = "fuzzyqoe-model"
MODEL_VERSION = 1


@dataclass(frozen=True)
class FuzzyRule:
    """One IF-THEN rule: an antecedent label per input variable, one consequent label.

    ``degree`` records the rule's support at induction time (product of the
    memberships of the record that produced it).
    """

    antecedents: Mapping[str, str]
    consequent: str
    degree: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedents", dict(self.antecedents))
        if not self.antecedents:
            raise ValueError("rule needs at least one antecedent")
        if not 0.0 < self.degree <= 1.0:
            raise ValueError(f"rule degree must be in (0, 1], got {self.degree}")


@dataclass(frozen=True)
class RuleBase:
    """Ordered collection of rules forming the knowledge base."""

    rules: tuple[FuzzyRule, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


@dataclass(frozen=True)
class InferenceConfig:
    """Operator selection; only the canonical Mamdani configuration is supported."""

    and_op: str = "min"
    implication: str = "min"
    aggregation: str = "max"
    defuzzification: str = "centroid"
    grid_step: float = 0.1

    def __post_init__(self) -> None:
        expected = {
            "and_op": "min",
            "implication": "min",
            "aggregation": "max",
            "defuzzification": "centroid",
        }
        for name, value in expected.items():
            if getattr(self, name) != value:
                raise ValueError(f"unsupported {name} '{getattr(self, name)}' (only '{value}')")
        if self.grid_step <= 0:
            raise ValueError(f"grid_step must be positive, got {self.grid_step}")


@dataclass(frozen=True)
class InferenceResult:
    """Crisp output plus the firing strength of every rule, in rule-base order."""

    crisp: float
    firing_strengths: tuple[float, ...]


def defuzzify_centroid(xs: np.ndarray, mus: np.ndarray) -> float:
    """Center of gravity of a sampled membership function on a uniform grid."""
    xs = np.asarray(xs, dtype=float)
    mus = np.asarray(mus, dtype=float)
    if xs.shape != mus.shape:
        raise ValueError(f"grid and membership shapes differ: {xs.shape} vs {mus.shape}")
    if not np.all(np.isfinite(mus)) or np.any(mus < 0):
        raise ValueError("membership samples must be finite and non-negative")
    if not np.any(mus > 0):
        raise NoRuleCoverageError("aggregated membership is zero everywhere")
    return float(np.dot(xs, mus) / np.sum(mus))


def aggregate_clipped(
    output: LinguisticVariable,
    rules: Sequence[FuzzyRule],
    strengths: Sequence[float],
    grid: np.ndarray,
) -> np.ndarray:
    """Clip every consequent set at its rule's strength and max-aggregate on the grid."""
    agg = np.zeros_like(grid, dtype=float)
    for rule, s in zip(rules, strengths):
        if s <= 0.0:
            continue
        mu = output.mf(rule.consequent).membership_grid(grid)
        np.maximum(agg, np.minimum(mu, s), out=agg)
    return agg


@dataclass(frozen=True)
class MamdaniModel:
    """Immutable trained model: four input variables, one output, and a rule base.

    Inference is pure and deterministic, so a shared instance is safe to use
    from multiple threads.
    """

    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable
    rules: RuleBase
    config: InferenceConfig = InferenceConfig()
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))
        if len(self.inputs) != 4:
            raise ValueError(f"model needs exactly 4 input variables, got {len(self.inputs)}")
        names = [var.name for var in self.inputs]
        if len(set(names)) != 4:
            raise ValueError(f"duplicate input variable names: {names}")
        if (self.output.universe.lo, self.output.universe.hi) != (0.0, 100.0):
            raise ValueError("output universe must be [0, 100]")
        if self.output.universe.grid_step != self.config.grid_step:
            raise ValueError("output universe grid_step must match the inference config")
        if len(self.rules) == 0:
            raise ValueError("rule base must be non-empty")
        for i, rule in enumerate(self.rules):
            if set(rule.antecedents) != set(names):
                raise ValueError(f"rule {i} antecedents {sorted(rule.antecedents)} "
                                 f"do not cover the input variables {sorted(names)}")
            for var in self.inputs:
                if rule.antecedents[var.name] not in var.labels:
                    raise ValueError(f"rule {i}: '{var.name}' has no label "
                                     f"'{rule.antecedents[var.name]}'")
            if rule.consequent not in self.output.labels:
                raise ValueError(f"rule {i}: unknown consequent '{rule.consequent}'")

    @property
    def input_names(self) -> tuple[str, ...]:
        return tuple(var.name for var in self.inputs)

    def input(self, name: str) -> LinguisticVariable:
        for var in self.inputs:
            if var.name == name:
                return var
        raise KeyError(f"model has no input variable '{name}'")

    def firing_strength(self, rule: FuzzyRule, inputs: Mapping[str, float]) -> float:
        """Min over the rule's antecedent memberships at the given crisp inputs."""
        degree = 1.0
        for var in self.inputs:
            if var.name not in inputs:
                raise ValueError(f"missing input variable '{var.name}'")
            x = inputs[var.name]
            if not math.isfinite(x) or not var.universe.contains(x):
                raise OutOfRangeError(
                    f"value {x} outside universe [{var.universe.lo}, {var.universe.hi}] "
                    f"of '{var.name}'"
                )
            degree = min(degree, var.mf(rule.antecedents[var.name]).membership(x))
        return degree

    def infer(self, inputs: Mapping[str, float]) -> InferenceResult:
        """Run the full clip/max/centroid pipeline for one crisp input vector."""
        strengths = tuple(self.firing_strength(rule, inputs) for rule in self.rules)
        if max(strengths) <= 0.0:
            raise NoRuleCoverageError(
                f"no rule fires for inputs {dict(inputs)}; "
                "the input combination is outside the induced knowledge base"
            )
        grid = self.output.universe.grid()
        agg = aggregate_clipped(self.output, self.rules.rules, strengths, grid)
        return InferenceResult(crisp=defuzzify_centroid(grid, agg), firing_strengths=strengths)

    def to_dict(self) -> dict:
        return model_to_dict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def from_dict(data: dict) -> "MamdaniModel":
        return model_from_dict(data)

    @staticmethod
    def from_json(text: str) -> "MamdaniModel":
        return model_from_dict(json.loads(text))


def _variable_to_dict(var: LinguisticVariable) -> dict:
    return {
        "name": var.name,
        "universe": {"lo": var.universe.lo, "hi": var.universe.hi,
                     "grid_step": var.universe.grid_step},
        "mfs": [
            {"label": mf.label, "left_foot": mf.left_foot,
             "peak": mf.peak, "right_foot": mf.right_foot}
            for mf in var.mfs
        ],
    }


def _variable_from_dict(data: dict) -> LinguisticVariable:
    universe = Universe(**data["universe"])
    mfs = tuple(
        TriangularMF(m["label"], m["left_foot"], m["peak"], m["right_foot"])
        for m in data["mfs"]
    )
    return LinguisticVariable(data["name"], universe, mfs)


def model_to_dict(model: MamdaniModel) -> dict:
    """Canonical dict form of a model; equal models produce identical documents."""
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "config": {
            "and_op": model.config.and_op,
            "implication": model.config.implication,
            "aggregation": model.config.aggregation,
            "defuzzification": model.config.defuzzification,
            "grid_step": model.config.grid_step,
        },
        "inputs": [_variable_to_dict(var) for var in model.inputs],
        "output": _variable_to_dict(model.output),
        "rules": [
            {
                "antecedents": {name: rule.antecedents[name] for name in model.input_names},
                "consequent": rule.consequent,
                "degree": rule.degree,
            }
            for rule in model.rules
        ],
        "provenance": model.provenance,
    }


def model_from_dict(data: dict) -> MamdaniModel:
    if data.get("format") != MODEL_FORMAT:
        raise ValueError(f"not a {MODEL_FORMAT} document: format={data.get('format')!r}")
    if data.get("version") != MODEL_VERSION:
        raise ValueError(f"unsupported model version {data.get('version')!r}")
    return MamdaniModel(
        inputs=tuple(_variable_from_dict(v) for v in data["inputs"]),
        output=_variable_from_dict(data["output"]),
        rules=RuleBase(tuple(
            FuzzyRule(r["antecedents"], r["consequent"], r["degree"]) for r in data["rules"]
        )),
        config=InferenceConfig(**data["config"]),
        provenance=data.get("provenance", {}),
    )


def save_model(model: MamdaniModel, path: str | Path) -> None:
    Path(path).write_text(model.to_json(), encoding="utf-8")


def load_model(path: str | Path) -> MamdaniModel:
    return MamdaniModel.from_json(Path(path).read_text(encoding="utf-8"))
