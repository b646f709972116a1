"""scikit-learn style façade over the code builders.

``LRCEncoder`` treats rows of an integer array as messages or words over
the code's field, with field elements given by their integer codes and
``-1`` marking an erased symbol.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .analysis import DEFAULT_EXACT_BUDGET, DEFAULT_LOW_WEIGHT, report
from .config import CodeConfig, build_from_config, builtin_config, builtin_names, load_config
from .engine import LinearCode, recover_word

__all__ = ["LRCEncoder", "check_symbols"]


def check_symbols(X, q: int, width: int, allow_erasures: bool = False, what: str = "X") -> np.ndarray:
    """Validate a 2-D array of field codes.

    Parameters
    ----------
    X : array-like of shape (n_samples, width)
        Integer codes in ``[0, q)``; ``-1`` is accepted when
        ``allow_erasures`` is set.
    q : int
        Field size.
    width : int
        Required number of columns.

    Returns
    -------
    numpy.ndarray of dtype int64
    """
    arr = check_array(X, dtype=None, ensure_2d=True, ensure_all_finite=True)
    if not np.issubdtype(arr.dtype, np.integer):
        as_int = arr.astype(np.int64)
        if not np.array_equal(as_int, arr):
            raise ValueError(f"{what} must hold integer field codes")
        arr = as_int
    arr = arr.astype(np.int64, copy=False)
    if arr.shape[1] != width:
        raise ValueError(f"{what} has {arr.shape[1]} columns, expected {width}")
    low = -1 if allow_erasures else 0
    if arr.size and (arr.min() < low or arr.max() >= q):
        raise ValueError(f"{what} entries must lie in [{low}, {q - 1}]")
    return arr


def _resolve(config) -> CodeConfig:
    if isinstance(config, CodeConfig):
        return config
    if isinstance(config, str) and config in builtin_names():
        return builtin_config(config)
    return load_config(config)


class LRCEncoder(BaseEstimator, TransformerMixin):
    """Encoder and erasure decoder for a configured locally recoverable code.

    Parameters
    ----------
    config : str, path or CodeConfig
        Built-in configuration name, path to a configuration file, or a
        parsed configuration.
    t : int, optional
        Override of the configuration's ``t``.
    m : int, optional
        Override of the surface tier degree.
    exact_budget : int
        Largest ``q^k`` swept exhaustively by ``report``.
    low_weight : int
        Largest weight searched when the sweep is over budget.

    Attributes
    ----------
    code_ : LinearCode
    n_features_in_ : int
        The dimension ``k``; ``transform`` expects messages of this length.
    """

    def __init__(self, config=None, t=None, m=None, exact_budget=DEFAULT_EXACT_BUDGET,
                 low_weight=DEFAULT_LOW_WEIGHT):
        self.config = config
        self.t = t
        self.m = m
        self.exact_budget = exact_budget
        self.low_weight = low_weight

    def fit(self, X=None, y=None):
        """Build the code; ``X`` and ``y`` are ignored."""
        if self.config is None:
            raise ValueError("config is required")
        if isinstance(self.config, LinearCode):
            code = self.config
        else:
            overrides = {k: v for k, v in (("t", self.t), ("m", self.m)) if v is not None}
            code = build_from_config(_resolve(self.config), **overrides)
        self.code_ = code
        self.n_features_in_ = code.k
        basis = code.basis
        self.pivots_ = np.array([int(np.flatnonzero(row)[0]) for row in basis], dtype=np.int64)
        return self

    def transform(self, X):
        """Encode each row of ``X`` (length ``k``) into a codeword of length ``n``."""
        check_is_fitted(self, "code_")
        X = check_symbols(X, self.code_.field.q, self.code_.k)
        return self.code_.encode(X)

    def inverse_transform(self, X):
        """Message of each codeword; rows must be codewords."""
        check_is_fitted(self, "code_")
        X = check_symbols(X, self.code_.field.q, self.code_.n)
        msgs = X[:, self.pivots_]
        if not np.array_equal(self.code_.encode(msgs), X):
            raise ValueError("some rows are not codewords")
        return msgs

    def predict(self, X, partition=None):
        """Fill erasures (``-1``) in each row by local repair."""
        check_is_fitted(self, "code_")
        X = check_symbols(X, self.code_.field.q, self.code_.n, allow_erasures=True)
        return np.array([recover_word(self.code_, row, partition) for row in X], dtype=np.int64).reshape(X.shape)

    def score(self, X, y):
        """Fraction of rows of ``X`` whose repair equals the matching row of ``y``."""
        check_is_fitted(self, "code_")
        y = check_symbols(y, self.code_.field.q, self.code_.n, what="y")
        return float(np.mean(np.all(self.predict(X) == y, axis=1)))

    def report(self):
        """Construction report for the fitted code."""
        check_is_fitted(self, "code_")
        return report(self.code_, exact_budget=self.exact_budget, low_weight=self.low_weight)
