"""scikit-learn style wrappers around :class:`KappaFamily`.

``KappaCurve`` learns nothing beyond storing the landmarks: ``fit(X)`` takes
the ordered landmark rows and ``predict(t)`` returns curve points at times
``t``.  ``KappaSmoother`` treats each input matrix as an ordered sequence of
samples and replaces it by the family evaluated at the sample indices, a
shape-preserving smoother usable inside a ``Pipeline``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import check_positive
from .shape import KappaFamily, LandmarkSet, Topology

__all__ = ["KappaCurve", "KappaSmoother"]


def _topology(value) -> Topology:
    try:
        return Topology(value)
    except ValueError:
        raise ValueError(f"topology must be 'open' or 'closed', got {value!r}") from None


class KappaCurve(BaseEstimator):
    """Smooth curve through ordered landmarks.

    Parameters
    ----------
    kappa : float
        Smoothing scale; small values interpolate, large ones collapse to the centroid.
    topology : {"open", "closed"}
    """

    def __init__(self, kappa=0.1, topology="open"):
        self.kappa = kappa
        self.topology = topology

    def fit(self, X, y=None):
        check_positive(self.kappa, "kappa")
        X = check_array(X, ensure_min_samples=1)
        self.family_ = KappaFamily(LandmarkSet(X, _topology(self.topology)))
        self.n_features_in_ = X.shape[1]
        self.centroid_ = self.family_.centroid()
        return self

    def predict(self, t):
        """Curve points at times ``t`` (shape ``(n,)`` or ``(n, 1)``) -> ``(n, D)``."""
        check_is_fitted(self, "family_")
        t = np.asarray(t, dtype=float)
        if t.ndim > 2 or (t.ndim == 2 and t.shape[1] != 1):
            raise ValueError("t must be a 1-D array of times")
        t = check_array(t.reshape(-1, 1))[:, 0]
        return self.family_(t, self.kappa)

    def weights(self, t):
        check_is_fitted(self, "family_")
        return self.family_.weights(np.asarray(t, dtype=float), self.kappa)[0]

    def sample(self, count=None):
        check_is_fitted(self, "family_")
        return self.family_.sample(self.kappa, count=count)


class KappaSmoother(TransformerMixin, BaseEstimator):
    """Replace an ordered sequence of rows by its kappa-family at integer times."""

    def __init__(self, kappa=0.5, topology="open"):
        self.kappa = kappa
        self.topology = topology

    def fit(self, X, y=None):
        check_positive(self.kappa, "kappa")
        _topology(self.topology)
        X = check_array(X)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        family = KappaFamily(LandmarkSet(X, _topology(self.topology)))
        return family(np.arange(len(X), dtype=float), self.kappa)
