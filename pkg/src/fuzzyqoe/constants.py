"""Canonical variable and label vocabulary of the QoE survey domain."""

INPUT_VARIABLES = (
    "content_quality",
    "hardware_quality",
    "environment_understanding",
    "user_interaction",
)
OUTPUT_VARIABLE = "overall_rating"

INPUT_LABELS = ("very poor", "poor", "fair", "good", "excellent")
OUTPUT_LABELS_FOUR = ("poor", "fair", "good", "excellent")

LIKERT_OPTIONS = 5

SCORE_LO = 0.0
SCORE_HI = 100.0


def default_output_labels(c: int) -> tuple[str, ...]:
    """Label set for a c-cluster output variable.

    Four clusters get the conventional quality names; other counts fall back
    to generic ordered names.
    """
    if c == len(OUTPUT_LABELS_FOUR):
        return OUTPUT_LABELS_FOUR
    return tuple(f"level_{i + 1}" for i in range(c))
