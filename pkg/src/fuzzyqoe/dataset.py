"""Survey CSV ingestion, Likert normalization, and train/test splitting."""
from __future__ import annotations

import csv
import io
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constants import INPUT_VARIABLES, LIKERT_OPTIONS
from .errors import OutOfRangeError, SchemaError
from .rules import TrainingRecord

REQUIRED_COLUMNS = ("participant_id", "app", "G1", "G2", "G3", "G4", "overall")
DEMOGRAPHIC_COLUMNS = ("gender", "age_range", "prior_ar", "prior_gesture")
LIKERT_COLUMNS = ("G1", "G2", "G3", "G4")

# questionnaire order: one general question per high-level parameter
G_TO_VARIABLE = dict(zip(LIKERT_COLUMNS, INPUT_VARIABLES))

_TRUE_WORDS = {"true", "1", "yes", "y"}
_FALSE_WORDS = {"false", "0", "no", "n"}


@dataclass(frozen=True)
class SurveyRow:
    """One participant's answers: Likert ratings plus the 0-100 overall score."""

    participant_id: str
    app: str
    likert: Mapping[str, int]
    overall: float
    gender: str | None = None
    age_range: str | None = None
    prior_ar: bool | None = None
    prior_gesture: bool | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "likert", dict(self.likert))
        if not self.participant_id:
            raise SchemaError("participant_id must be non-empty")
        if not self.app:
            raise SchemaError("app must be non-empty")
        for column in LIKERT_COLUMNS:
            if column not in self.likert:
                raise SchemaError(f"missing Likert answer '{column}'")
        for column, value in self.likert.items():
            if not isinstance(value, int) or isinstance(value, bool):
                raise SchemaError(f"Likert answer '{column}' must be an integer, got {value!r}")
            if not 1 <= value <= LIKERT_OPTIONS:
                raise SchemaError(
                    f"Likert answer '{column}' = {value} outside 1..{LIKERT_OPTIONS}"
                )
        if not (math.isfinite(self.overall) and 0.0 <= self.overall <= 100.0):
            raise SchemaError(f"overall = {self.overall} outside [0, 100]")


@dataclass(frozen=True)
class Provenance:
    source: str
    row_count: int


@dataclass(frozen=True)
class Dataset:
    """Validated survey rows; may be empty only as the result of a split."""

    rows: tuple[SurveyRow, ...]
    provenance: Provenance = field(compare=False, default=Provenance("<memory>", 0))

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        ids = [row.participant_id for row in self.rows]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise SchemaError(f"duplicate participant_id values: {dupes}")

    def __len__(self) -> int:
        return len(self.rows)


def normalize_likert(i_in: int, n: int = LIKERT_OPTIONS) -> float:
    """Map answer option ``i_in`` of an ``n``-option scale onto [0, 100].

    Endpoints map exactly to 0 and 100; for the five-point scale the options
    map to 0, 25, 50, 75, 100.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"option count must be an integer >= 2, got {n}")
    if not isinstance(i_in, int) or isinstance(i_in, bool):
        raise ValueError(f"answer must be an integer, got {i_in!r}")
    if not 1 <= i_in <= n:
        raise OutOfRangeError(f"answer {i_in} outside 1..{n}")
    return (i_in - 1) * 100.0 / (n - 1)


def _parse_flag(cell: str, row_number: int, column: str) -> bool | None:
    text = cell.strip().lower()
    if not text:
        return None
    if text in _TRUE_WORDS:
        return True
    if text in _FALSE_WORDS:
        return False
    raise SchemaError(f"row {row_number}, column '{column}': expected a boolean, got {cell!r}")


def _parse_likert_cell(cell: str, row_number: int, column: str) -> int:
    try:
        value = int(cell.strip())
    except (TypeError, ValueError):
        raise SchemaError(
            f"row {row_number}, column '{column}': expected an integer Likert answer, "
            f"got {cell!r}"
        ) from None
    if not 1 <= value <= LIKERT_OPTIONS:
        raise SchemaError(
            f"row {row_number}, column '{column}': Likert answer {value} outside "
            f"1..{LIKERT_OPTIONS}"
        )
    return value


def parse_survey_csv(source) -> Dataset:
    """Read and validate a survey CSV.

    ``source`` may be a path, a text stream, or a byte stream (UTF-8).
    Required columns: participant_id, app, G1..G4, overall. Demographic
    columns and low-level ``q_*`` answers are optional; unknown columns are
    ignored.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as handle:
            return _parse_stream(handle, str(source))
    if isinstance(source, (bytes, bytearray)):
        return _parse_stream(io.StringIO(source.decode("utf-8")), "<bytes>")
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return _parse_stream(io.StringIO(data), getattr(source, "name", "<stream>"))


def _parse_stream(handle, source_name: str) -> Dataset:
    reader = csv.DictReader(handle)
    header = reader.fieldnames
    if header is None:
        raise SchemaError(f"{source_name}: empty file, header row required")
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"{source_name}: missing required columns {missing}")
    q_columns = sorted(c for c in header if c.startswith("q_"))

    rows = []
    for row_number, raw in enumerate(reader, start=2):  # header is line 1
        likert = {c: _parse_likert_cell(raw[c], row_number, c) for c in LIKERT_COLUMNS}
        for column in q_columns:
            cell = raw.get(column) or ""
            if cell.strip():
                likert[column] = _parse_likert_cell(cell, row_number, column)
        try:
            overall = float(raw["overall"].strip())
        except (TypeError, ValueError):
            raise SchemaError(
                f"row {row_number}, column 'overall': expected a number, "
                f"got {raw['overall']!r}"
            ) from None
        try:
            rows.append(SurveyRow(
                participant_id=raw["participant_id"].strip(),
                app=raw["app"].strip(),
                likert=likert,
                overall=overall,
                gender=(raw.get("gender") or "").strip() or None,
                age_range=(raw.get("age_range") or "").strip() or None,
                prior_ar=_parse_flag(raw.get("prior_ar") or "", row_number, "prior_ar"),
                prior_gesture=_parse_flag(raw.get("prior_gesture") or "", row_number,
                                          "prior_gesture"),
            ))
        except SchemaError as exc:
            raise SchemaError(f"row {row_number}: {exc}") from None

    if not rows:
        raise SchemaError(f"{source_name}: empty dataset, no data rows")
    return Dataset(tuple(rows), Provenance(source_name, len(rows)))


def write_survey_csv(dataset: Dataset, dest) -> None:
    """Serialize a dataset back to the ingestion CSV format (round-trip safe)."""
    q_columns = sorted({k for row in dataset.rows for k in row.likert if k.startswith("q_")})
    header = (["participant_id", "app"] + list(DEMOGRAPHIC_COLUMNS)
              + q_columns + list(LIKERT_COLUMNS) + ["overall"])

    def _write(handle) -> None:
        writer = csv.DictWriter(handle, fieldnames=header)
        writer.writeheader()
        for row in dataset.rows:
            record = {
                "participant_id": row.participant_id,
                "app": row.app,
                "gender": row.gender or "",
                "age_range": row.age_range or "",
                "prior_ar": "" if row.prior_ar is None else str(row.prior_ar).lower(),
                "prior_gesture": "" if row.prior_gesture is None
                                 else str(row.prior_gesture).lower(),
                "overall": repr(row.overall),
            }
            for column in LIKERT_COLUMNS:
                record[column] = row.likert[column]
            for column in q_columns:
                record[column] = row.likert.get(column, "")
            writer.writerow(record)

    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="") as handle:
            _write(handle)
    else:
        _write(dest)


def to_training(dataset: Dataset) -> list[TrainingRecord]:
    """Normalize the four high-level answers; the overall score passes through."""
    records = []
    for row in dataset.rows:
        inputs = {
            variable: normalize_likert(row.likert[column], LIKERT_OPTIONS)
            for column, variable in G_TO_VARIABLE.items()
        }
        records.append(TrainingRecord(inputs=inputs, overall=row.overall))
    return records


def split(
    dataset: Dataset,
    train_fraction: float,
    seed: int = 0,
    stratify_by_app: bool = False,
) -> tuple[Dataset, Dataset]:
    """Seeded pseudorandom permutation followed by a prefix split.

    The train part holds round(train_fraction * n) rows; train and test are
    an exact partition of the input. With ``stratify_by_app`` the split is
    applied within each application group separately.
    """
    if len(dataset) == 0:
        raise ValueError("cannot split an empty dataset")
    if not 0.0 < train_fraction <= 1.0:
        raise ValueError(f"train_fraction must be in (0, 1], got {train_fraction}")

    rng = np.random.default_rng(seed)

    def _split_rows(rows: tuple[SurveyRow, ...]) -> tuple[list[SurveyRow], list[SurveyRow]]:
        order = rng.permutation(len(rows))
        k = round(train_fraction * len(rows))
        return [rows[i] for i in order[:k]], [rows[i] for i in order[k:]]

    if stratify_by_app:
        train_rows: list[SurveyRow] = []
        test_rows: list[SurveyRow] = []
        for app in sorted({row.app for row in dataset.rows}):
            group = tuple(row for row in dataset.rows if row.app == app)
            got_train, got_test = _split_rows(group)
            train_rows.extend(got_train)
            test_rows.extend(got_test)
    else:
        train_rows, test_rows = _split_rows(dataset.rows)

    source = dataset.provenance.source
    return (
        Dataset(tuple(train_rows), Provenance(f"{source}#train", len(train_rows))),
        Dataset(tuple(test_rows), Provenance(f"{source}#test", len(test_rows))),
    )
