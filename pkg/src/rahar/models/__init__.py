"""Native classifiers and evaluation for sleep-quality prediction.

Three model families are implemented from scratch (logistic regression
via IRLS, discrete AdaBoost over stumps, random forest with Gini trees)
plus ROC/AUC evaluation and seeded stratified cross-validation.  An
SVM-RBF is deliberately not included; export the feature dataset and use
an external tool if kernel models are needed.
"""

from .boosting import AdaBoostConfig, AdaBoostModel, Stump, train_adaboost
from .evaluation import (
    ConfusionCounts,
    EvalReport,
    auc_trapezoid,
    evaluate,
    f1_score,
    roc_curve,
)
from .forest import ForestConfig, RandomForestModel, train_random_forest
from .logreg import LogisticModel, LogRegConfig, train_logreg
from .validation import (
    MODEL_KINDS,
    CVResult,
    cross_validate,
    make_config,
    stratified_folds,
    train,
)

__all__ = [
    "AdaBoostConfig",
    "AdaBoostModel",
    "ConfusionCounts",
    "CVResult",
    "EvalReport",
    "ForestConfig",
    "LogisticModel",
    "LogRegConfig",
    "MODEL_KINDS",
    "RandomForestModel",
    "Stump",
    "auc_trapezoid",
    "cross_validate",
    "evaluate",
    "f1_score",
    "make_config",
    "roc_curve",
    "stratified_folds",
    "train",
    "train_adaboost",
    "train_logreg",
    "train_random_forest",
]
