"""Scikit-learn style regressor wrapping the fuzzy QoE pipeline."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .constants import INPUT_VARIABLES
from .errors import OutOfRangeError
from .fcm import FcmConfig
from .rules import TrainingRecord
from .training import TrainConfig, train_from_records


def _check_scores(X, name: str = "X") -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != len(INPUT_VARIABLES):
        raise ValueError(
            f"{name} must be a 2-D array with {len(INPUT_VARIABLES)} columns "
            f"({', '.join(INPUT_VARIABLES)}), got shape {X.shape}"
        )
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} must be finite")
    if np.any(X < 0.0) or np.any(X > 100.0):
        raise OutOfRangeError(f"{name} values must lie in [0, 100]")
    return X


class MamdaniQoERegressor(RegressorMixin, BaseEstimator):
    """Predict 0-100 overall ratings from the four high-level parameter scores.

    ``fit`` builds equal triangular partitions for the inputs, clusters the
    targets with fuzzy c-means to shape the output sets, and induces the rule
    base from the training rows. ``predict`` runs Mamdani min/max inference
    with centroid defuzzification. The fitted ``model_`` is immutable and
    serializable.

    Parameters
    ----------
    n_clusters : output cluster count for fuzzy c-means.
    fuzzifier : FCM exponent m (> 1).
    tol, max_iter : FCM convergence controls.
    grid_step : defuzzification grid resolution on [0, 100].
    random_state : seed for the FCM center initialization.
    """

    def __init__(self, n_clusters=4, fuzzifier=2.0, tol=1e-6, max_iter=300,
                 grid_step=0.1, random_state=0):
        self.n_clusters = n_clusters
        self.fuzzifier = fuzzifier
        self.tol = tol
        self.max_iter = max_iter
        self.grid_step = grid_step
        self.random_state = random_state

    def fit(self, X, y):
        X = _check_scores(X)
        y = np.asarray(y, dtype=float)
        if y.shape != (X.shape[0],):
            raise ValueError(f"y must have shape ({X.shape[0]},), got {y.shape}")
        if not np.all(np.isfinite(y)):
            raise ValueError("y must be finite")
        if np.any(y < 0.0) or np.any(y > 100.0):
            raise OutOfRangeError("y values must lie in [0, 100]")

        records = [
            TrainingRecord(inputs=dict(zip(INPUT_VARIABLES, row)), overall=float(target))
            for row, target in zip(X, y)
        ]
        config = TrainConfig(
            train_fraction=1.0,
            fcm=FcmConfig(c=self.n_clusters, m=self.fuzzifier, tol=self.tol,
                          max_iter=self.max_iter, seed=self.random_state),
            seed=self.random_state,
            grid_step=self.grid_step,
        )
        self.model_, self.fcm_result_ = train_from_records(records, config)
        self.n_features_in_ = len(INPUT_VARIABLES)
        return self

    def predict(self, X):
        check_is_fitted(self, "model_")
        X = _check_scores(X)
        return np.array([
            self.model_.infer(dict(zip(INPUT_VARIABLES, row))).crisp for row in X
        ])
