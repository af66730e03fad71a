"""L2-penalized logistic regression fit by iteratively reweighted least squares.

The objective is the mean negative log-likelihood plus (lambda/2)*|w|^2
over the non-intercept weights.  Normalizing by the sample count makes
the optimum invariant under uniform duplication of the dataset, which is
the natural likelihood behaviour.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import ClassCollapse, DimensionMismatch


@dataclass(frozen=True)
class LogRegConfig:
    l2_lambda: float = 1e-4
    max_iter: int = 200
    tol: float = 1e-8


@dataclass
class LogisticModel:
    weights: np.ndarray  # (d,)
    intercept: float
    config: LogRegConfig
    converged: bool = True
    n_iter: int = 0

    kind: str = field(default="logreg", init=False)

    def predict_scores(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.weights.shape[0]:
            raise DimensionMismatch(
                f"expected {self.weights.shape[0]} features, got {X.shape}"
            )
        z = X @ self.weights + self.intercept
        return _sigmoid(z)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "weights": [float(w) for w in self.weights],
            "intercept": float(self.intercept),
            "converged": self.converged,
            "n_iter": self.n_iter,
        }


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def train_logreg(X, y, config: LogRegConfig | None = None) -> LogisticModel:
    """Newton/IRLS fit; converged when the largest parameter change < tol."""
    config = config or LogRegConfig()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2:
        raise ValueError("X must be 2-D")
    n, d = X.shape
    classes = np.unique(y)
    if len(classes) < 2:
        raise ClassCollapse("training labels contain a single class")

    beta = np.zeros(d + 1)  # [intercept, weights]
    Xb = np.hstack([np.ones((n, 1)), X])
    penalty = np.full(d + 1, config.l2_lambda)
    penalty[0] = 0.0  # intercept is unpenalized

    converged = False
    it = 0
    for it in range(1, config.max_iter + 1):
        p = _sigmoid(Xb @ beta)
        p = np.clip(p, 1e-12, 1.0 - 1e-12)
        grad = Xb.T @ (p - y) / n + penalty * beta
        w_diag = p * (1.0 - p)
        hess = (Xb.T * w_diag) @ Xb / n + np.diag(penalty)
        try:
            step = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess, grad, rcond=None)[0]
        beta = beta - step
        if np.max(np.abs(step)) < config.tol:
            converged = True
            break
    if not converged:
        warnings.warn(
            f"logistic regression did not converge in {config.max_iter} iterations",
            RuntimeWarning,
        )
    return LogisticModel(
        weights=beta[1:].copy(),
        intercept=float(beta[0]),
        config=config,
        converged=converged,
        n_iter=it,
    )
