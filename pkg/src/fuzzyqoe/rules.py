"""Rule induction from labeled training records."""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .constants import OUTPUT_VARIABLE
from .inference import FuzzyRule, RuleBase
from .membership import LinguisticVariable


@dataclass(frozen=True)
class TrainingRecord:
    """Normalized ratings for the four input variables plus the overall score."""

    inputs: Mapping[str, float]
    overall: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", dict(self.inputs))
        for name, value in self.inputs.items():
            if not 0.0 <= value <= 100.0:
                raise ValueError(f"input '{name}' = {value} outside [0, 100]")
        if not 0.0 <= self.overall <= 100.0:
            raise ValueError(f"overall = {self.overall} outside [0, 100]")


def _consequent_for(output: LinguisticVariable, overall: float) -> tuple[str, float]:
    """Best output label and its membership for a record's overall score.

    A score exactly on a universe bound can sit outside every clustered
    output set (all memberships 0); such boundary exemplars take the
    nearest-peak label with full support so the rule stays reachable.
    """
    label = output.best_label(overall)
    support = output.mf(label).membership(overall)
    if support > 0.0:
        return label, support
    nearest = min(output.mfs, key=lambda mf: (abs(mf.peak - overall), mf.peak))
    return nearest.label, 1.0


def induce_rules(
    records: Sequence[TrainingRecord],
    inputs: Sequence[LinguisticVariable],
    output: LinguisticVariable,
) -> RuleBase:
    """Derive one rule per distinct antecedent label combination.

    Each record maps to the best-matching label of every input and of the
    output; its degree is the product of the five membership degrees.
    Conflicting records for the same antecedents keep the highest-degree
    consequent (ties go to the lower-peak label), so the result does not
    depend on record order. The returned base is sorted canonically by
    antecedent label indices.
    """
    if not records:
        raise ValueError("cannot induce rules from an empty record list")
    inputs = tuple(inputs)

    label_rank = {var.name: {label: i for i, label in enumerate(var.labels)} for var in inputs}
    consequent_rank = {label: i for i, label in enumerate(output.labels)}

    best: dict[tuple[str, ...], tuple[float, int, str]] = {}
    for record in records:
        cell = []
        degree = 1.0
        for var in inputs:
            if var.name not in record.inputs:
                raise ValueError(f"record is missing input variable '{var.name}'")
            x = record.inputs[var.name]
            label = var.best_label(x)
            degree *= var.mf(label).membership(x)
            cell.append(label)
        out_label, out_support = _consequent_for(output, record.overall)
        degree *= out_support
        key = tuple(cell)
        candidate = (degree, consequent_rank[out_label], out_label)
        incumbent = best.get(key)
        # higher degree wins; on an exact degree tie the lower-peak consequent wins
        if incumbent is None or (candidate[0], -candidate[1]) > (incumbent[0], -incumbent[1]):
            best[key] = candidate

    names = [var.name for var in inputs]
    ordered_keys = sorted(best, key=lambda key: tuple(
        label_rank[name][label] for name, label in zip(names, key)
    ))
    rules = tuple(
        FuzzyRule(
            antecedents=dict(zip(names, key)),
            consequent=best[key][2],
            degree=best[key][0],
        )
        for key in ordered_keys
    )
    return RuleBase(rules)


@dataclass(frozen=True)
class RuleBaseStats:
    """Rule count and per-(variable, label) usage histogram."""

    count: int
    label_usage: Mapping[tuple[str, str], int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "label_usage", dict(self.label_usage))


def rulebase_stats(rules: RuleBase, output_name: str = OUTPUT_VARIABLE) -> RuleBaseStats:
    """Count rules and how often each label is referenced."""
    usage: dict[tuple[str, str], int] = {}
    for rule in rules:
        for name, label in rule.antecedents.items():
            usage[(name, label)] = usage.get((name, label), 0) + 1
        usage[(output_name, rule.consequent)] = usage.get((output_name, rule.consequent), 0) + 1
    return RuleBaseStats(count=len(rules), label_usage=usage)
