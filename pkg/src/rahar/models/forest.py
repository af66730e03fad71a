"""Random forest of Gini-split binary trees.

Trees are grown on bootstrap samples to purity (or until no usable split
remains), with ``mtry`` features drawn per node.  Leaves store their
class-1 fraction; the forest score is the mean leaf value over trees, so
purity-grown trees cast hard 0/1 votes and degenerate trees fall back to
their bootstrap class prior.  All randomness derives from per-tree
streams seeded by (seed, tree index), so a forest is reproducible
regardless of training order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ClassCollapse, DimensionMismatch


@dataclass(frozen=True)
class ForestConfig:
    trees: int = 100
    mtry: int | None = None  # None -> ceil(sqrt(n_features))
    min_leaf: int = 1
    seed: int = 0


@dataclass
class _Node:
    feature: int = -1
    threshold: float = 0.0
    left: "_Node | None" = None
    right: "_Node | None" = None
    leaf_value: float | None = None  # class-1 fraction when this is a leaf

    def predict_one(self, row: np.ndarray) -> float:
        node = self
        while node.leaf_value is None:
            node = node.left if row[node.feature] <= node.threshold else node.right
        return node.leaf_value

    def to_dict(self) -> dict:
        if self.leaf_value is not None:
            return {"leaf": self.leaf_value}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }


@dataclass
class RandomForestModel:
    trees: list[_Node]
    n_features: int
    config: ForestConfig

    kind: str = field(default="random_forest", init=False)

    def predict_scores(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise DimensionMismatch(f"expected {self.n_features} features, got {X.shape}")
        scores = np.zeros(X.shape[0])
        for tree in self.trees:
            scores += [tree.predict_one(row) for row in X]
        return scores / len(self.trees)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n_features": self.n_features,
            "trees": [t.to_dict() for t in self.trees],
        }


def _gini(pos: float, total: float) -> float:
    if total == 0:
        return 0.0
    p = pos / total
    return 2.0 * p * (1.0 - p)


def _best_node_split(X, y, rows, features, min_leaf):
    """(feature, threshold) minimizing weighted child Gini; None when unsplittable."""
    best = None
    best_impurity = np.inf
    n = len(rows)
    for feature in features:
        col = X[rows, feature]
        order = np.argsort(col, kind="stable")
        sorted_col = col[order]
        sorted_y = y[rows][order]
        left_pos = np.cumsum(sorted_y)
        total_pos = left_pos[-1]
        for i in range(min_leaf - 1, n - min_leaf):
            if sorted_col[i] == sorted_col[i + 1]:
                continue
            n_left = i + 1
            n_right = n - n_left
            impurity = (
                n_left * _gini(left_pos[i], n_left)
                + n_right * _gini(total_pos - left_pos[i], n_right)
            ) / n
            if impurity < best_impurity - 1e-15:
                best_impurity = impurity
                best = (feature, (sorted_col[i] + sorted_col[i + 1]) / 2.0)
    return best


def _grow(X, y, rows, rng, mtry, min_leaf) -> _Node:
    pos = int(y[rows].sum())
    n = len(rows)
    if pos == 0 or pos == n or n < 2 * min_leaf:
        return _Node(leaf_value=pos / n)
    d = X.shape[1]
    sampled = np.sort(rng.choice(d, size=min(mtry, d), replace=False))
    split = _best_node_split(X, y, rows, sampled, min_leaf)
    if split is None:
        # the sampled features are constant here; retry with all features so a
        # usable split elsewhere is not missed, then give up
        if len(sampled) < d:
            split = _best_node_split(X, y, rows, np.arange(d), min_leaf)
        if split is None:
            return _Node(leaf_value=pos / n)
    feature, threshold = split
    go_left = X[rows, feature] <= threshold
    left = _grow(X, y, rows[go_left], rng, mtry, min_leaf)
    right = _grow(X, y, rows[~go_left], rng, mtry, min_leaf)
    return _Node(feature=int(feature), threshold=float(threshold), left=left, right=right)


def train_random_forest(X, y, config: ForestConfig | None = None) -> RandomForestModel:
    config = config or ForestConfig()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2:
        raise ValueError("X must be 2-D")
    if len(np.unique(y)) < 2:
        raise ClassCollapse("training labels contain a single class")
    n, d = X.shape
    mtry = config.mtry if config.mtry is not None else math.ceil(math.sqrt(d))
    trees = []
    for tree_index in range(config.trees):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([config.seed, tree_index]))
        )
        bootstrap = rng.integers(0, n, size=n)
        trees.append(_grow(X, y, bootstrap, rng, mtry, config.min_leaf))
    return RandomForestModel(trees=trees, n_features=d, config=config)
