"""Mamdani fuzzy-inference QoE modeling from Likert-scale survey data."""

from .constants import (
    INPUT_LABELS,
    INPUT_VARIABLES,
    OUTPUT_VARIABLE,
    default_output_labels,
)
from .dataset import (
    Dataset,
    SurveyRow,
    normalize_likert,
    parse_survey_csv,
    split,
    to_training,
    write_survey_csv,
)
from .errors import FuzzyQoEError, NoRuleCoverageError, OutOfRangeError, SchemaError
from .estimator import MamdaniQoERegressor
from .fcm import FcmConfig, FcmResult, fcm_cluster, mfs_from_centers
from .inference import (
    FuzzyRule,
    InferenceConfig,
    InferenceResult,
    MamdaniModel,
    RuleBase,
    aggregate_clipped,
    defuzzify_centroid,
    load_model,
    save_model,
)
from .membership import LinguisticVariable, TriangularMF, Universe, make_equal_partition
from .rules import TrainingRecord, induce_rules, rulebase_stats
from .stats import (
    DescriptiveStats,
    EvaluationReport,
    TTestResult,
    descriptive,
    evaluate,
    paired_t_test,
    rmse,
    student_t_cdf,
    student_t_ppf,
)
from .training import TrainConfig, TrainResult, build_input_variables, train, train_from_records

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "DescriptiveStats",
    "EvaluationReport",
    "FcmConfig",
    "FcmResult",
    "FuzzyQoEError",
    "FuzzyRule",
    "InferenceConfig",
    "InferenceResult",
    "INPUT_LABELS",
    "INPUT_VARIABLES",
    "LinguisticVariable",
    "MamdaniModel",
    "MamdaniQoERegressor",
    "NoRuleCoverageError",
    "OutOfRangeError",
    "OUTPUT_VARIABLE",
    "RuleBase",
    "SchemaError",
    "SurveyRow",
    "TrainConfig",
    "TrainResult",
    "TrainingRecord",
    "TriangularMF",
    "TTestResult",
    "Universe",
    "aggregate_clipped",
    "build_input_variables",
    "default_output_labels",
    "defuzzify_centroid",
    "descriptive",
    "evaluate",
    "fcm_cluster",
    "induce_rules",
    "load_model",
    "make_equal_partition",
    "mfs_from_centers",
    "normalize_likert",
    "paired_t_test",
    "parse_survey_csv",
    "rmse",
    "rulebase_stats",
    "save_model",
    "split",
    "student_t_cdf",
    "student_t_ppf",
    "to_training",
    "train",
    "train_from_records",
    "write_survey_csv",
]
