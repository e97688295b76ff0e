"""Initial coefficient estimators and the restricted least-squares solver."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .data import Dataset

# |beta_j| below this floor is clamped when forming the reweighting diagonal
# 1/beta_j^2, keeping the adaptive-ridge system finite.
AR_STABILITY_FLOOR = 1e-8


class RankDeficientWarning(UserWarning):
    """Design (sub)matrix has column rank below its width.

    The minimum-norm solution is still returned; callers that need a unique
    least-squares solution should treat this as an error.
    """

    def __init__(self, rank: int, ncols: int):
        super().__init__(f"rank {rank} < {ncols} columns, returning minimum-norm solution")
        self.rank = rank
        self.ncols = ncols


class SingularSystemError(np.linalg.LinAlgError):
    """Ridge system with lambda = 0 on a rank-deficient design."""


@dataclass(frozen=True)
class CoefficientVector:
    """An estimate of the regression coefficients plus its provenance."""

    values: np.ndarray
    method: str
    tuning: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("coefficient values must be a 1-d vector")
        if not np.all(np.isfinite(values)):
            raise ValueError("coefficient values must all be finite")
        object.__setattr__(self, "values", values)

    @property
    def p(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class Support:
    """A sorted set of retained column indices."""

    retained: tuple[int, ...]

    def __post_init__(self):
        retained = tuple(int(j) for j in self.retained)
        if any(j < 0 for j in retained):
            raise ValueError("indices must be non-negative")
        if len(set(retained)) != len(retained):
            raise ValueError("indices must be unique")
        if list(retained) != sorted(retained):
            retained = tuple(sorted(retained))
        object.__setattr__(self, "retained", retained)

    def __len__(self) -> int:
        return len(self.retained)


class RestrictedFit(NamedTuple):
    coefficients: np.ndarray
    risk: float


def _lstsq(design: np.ndarray, response: np.ndarray) -> tuple[np.ndarray, int]:
    """Minimum-norm least squares via SVD; returns (solution, rank)."""
    beta, _, rank, _ = np.linalg.lstsq(design, response, rcond=None)
    return beta, int(rank)


def fit_ols(data: Dataset) -> CoefficientVector:
    """Ordinary least squares.

    Uses an orthogonal factorization rather than the normal equations. On
    rank deficiency a :class:`RankDeficientWarning` is emitted and the
    minimum-norm solution is returned.
    """
    beta, rank = _lstsq(data.design, data.response)
    if rank < data.n_features:
        warnings.warn(RankDeficientWarning(rank, data.n_features), stacklevel=2)
    return CoefficientVector(beta, method="ols")


def fit_ridge(data: Dataset, ridge_lambda: float) -> CoefficientVector:
    """Ridge estimator (X'X + lambda I)^{-1} X'Y.

    Solved as the augmented least-squares problem [X; sqrt(lambda) I], so
    lambda = 0 reduces exactly to :func:`fit_ols`. Raises
    :class:`SingularSystemError` when lambda = 0 and X'X is singular.
    """
    if ridge_lambda < 0:
        raise ValueError("ridge lambda must be nonnegative")
    p = data.n_features
    if ridge_lambda == 0.0:
        beta, rank = _lstsq(data.design, data.response)
        if rank < p:
            raise SingularSystemError(
                f"lambda = 0 with rank {rank} < {p}: X'X is singular"
            )
    else:
        augmented = np.vstack([data.design, math.sqrt(ridge_lambda) * np.eye(p)])
        target = np.concatenate([data.response, np.zeros(p)])
        beta, _ = _lstsq(augmented, target)
    return CoefficientVector(beta, method="ridge", tuning={"lambda": float(ridge_lambda)})


def fit_adaptive_ridge(
    data: Dataset,
    xi: float,
    steps: int,
    ridge_lambda: float | None = None,
) -> CoefficientVector:
    """Iteratively reweighted ridge with diagonal weights 1/beta_j^2.

    Starts from the ridge fit at ``ridge_lambda`` (default sqrt(n)) and runs
    exactly ``steps`` fixed-point iterations
    beta <- (X'X + xi * diag(1/beta_j^2))^{-1} X'Y, clamping |beta_j| at
    :data:`AR_STABILITY_FLOOR` inside the diagonal.
    """
    if xi <= 0:
        raise ValueError("xi must be positive")
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if ridge_lambda is None:
        ridge_lambda = math.sqrt(data.n_obs)
    beta = fit_ridge(data, ridge_lambda).values
    gram = data.design.T @ data.design
    xty = data.design.T @ data.response
    for _ in range(steps):
        floored = np.maximum(np.abs(beta), AR_STABILITY_FLOOR)
        beta = np.linalg.solve(gram + xi * np.diag(1.0 / floored**2), xty)
    return CoefficientVector(
        beta,
        method="adaptive_ridge",
        tuning={"lambda": float(ridge_lambda), "xi": float(xi), "steps": int(steps)},
    )


def least_squares_on_support(data: Dataset, support: Support) -> RestrictedFit:
    """OLS restricted to the retained columns, with its mean squared residual.

    The empty support yields no coefficients and risk ||Y||^2 / n.
    """
    n = data.n_obs
    if len(support) == 0:
        return RestrictedFit(
            np.empty(0), float(data.response @ data.response) / n
        )
    indices = list(support.retained)
    if indices[-1] >= data.n_features:
        raise IndexError(f"support index {indices[-1]} out of range for p = {data.n_features}")
    restricted = data.design[:, indices]
    beta, rank = _lstsq(restricted, data.response)
    if rank < len(indices):
        warnings.warn(RankDeficientWarning(rank, len(indices)), stacklevel=2)
    residual = data.response - restricted @ beta
    return RestrictedFit(beta, float(residual @ residual) / n)
