"""Multiple change-point detection by hierarchical divisive estimation.

Distribution shifts in a multivariate observation sequence are located
with energy statistics: for sample sets X (size n) and Y (size m) the
empirical divergence is

    E = (2/(mn)) * sum_ij |Xi - Yj|^a
        - C(n,2)^-1 * sum_{i<k} |Xi - Xk|^a
        - C(m,2)^-1 * sum_{j<k} |Yj - Yk|^a,      0 < a < 2,

and the scaled statistic Q = (mn/(m+n)) * E grows without bound under a
true distributional difference.  The divisive estimator repeatedly picks
the split that maximizes Q across all current segments, tests it by
permuting observations within segments, and commits it while the
permutation p-value stays at or below the significance level.

All randomness flows through per-permutation streams seeded from
(master_seed, iteration, permutation index), so results are identical
regardless of evaluation order or parallelism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .errors import SegmentTooSmall


@dataclass(frozen=True)
class EnergyParams:
    alpha_exp: float = 1.0
    min_segment: int = 30

    def __post_init__(self):
        if not 0.0 < self.alpha_exp < 2.0:
            raise ValueError(f"alpha_exp must be in (0, 2), got {self.alpha_exp}")
        if self.min_segment < 2:
            raise ValueError(f"min_segment must be >= 2, got {self.min_segment}")


@dataclass(frozen=True)
class PermutationConfig:
    n_permutations: int = 99
    significance: float = 0.01
    master_seed: int = 0

    def __post_init__(self):
        if self.n_permutations < 1:
            raise ValueError("n_permutations must be >= 1")
        if not 0.0 < self.significance < 1.0:
            raise ValueError("significance must be in (0, 1)")
        if self.master_seed < 0:
            raise ValueError("master_seed must be non-negative")


@dataclass(frozen=True)
class ChangePoint:
    """A committed split: offset within the span, its Q statistic and p-value."""

    index: int
    statistic: float
    p_value: float


ChangePointSet = list[ChangePoint]


def _as_observations(span) -> np.ndarray:
    obs = np.asarray(span, dtype=float)
    if obs.ndim == 1:
        obs = obs[:, None]
    if obs.ndim != 2:
        raise ValueError(f"observations must be 1-D or 2-D, got shape {obs.shape}")
    if not np.all(np.isfinite(obs)):
        raise ValueError("observations must be finite")
    return obs


def energy_divergence(X, Y, alpha_exp: float = 1.0) -> tuple[float, float]:
    """Empirical energy divergence (E, Q) between two observation sets.

    Symmetric in X and Y.  Needs at least two observations on each side so
    the within-sample pair averages exist.
    """
    if not 0.0 < alpha_exp < 2.0:
        raise ValueError(f"alpha_exp must be in (0, 2), got {alpha_exp}")
    X = _as_observations(X)
    Y = _as_observations(Y)
    if X.shape[0] < 2 or Y.shape[0] < 2:
        raise SegmentTooSmall("energy divergence needs >= 2 observations per side")
    if X.shape[1] != Y.shape[1]:
        raise ValueError("X and Y must have the same dimensionality")
    # canonical argument order makes the result bitwise symmetric in (X, Y)
    if (Y.shape[0], Y.tobytes()) < (X.shape[0], X.tobytes()):
        X, Y = Y, X
    n, m = X.shape[0], Y.shape[0]
    cross = np.linalg.norm(X[:, None, :] - Y[None, :, :], axis=2) ** alpha_exp
    within_x = pdist(X) ** alpha_exp
    within_y = pdist(Y) ** alpha_exp
    e_hat = 2.0 * cross.mean() - within_x.mean() - within_y.mean()
    q_hat = (m * n / (m + n)) * e_hat
    return float(e_hat), float(q_hat)


def _alpha_distance_matrix(obs: np.ndarray, alpha_exp: float) -> np.ndarray:
    if obs.shape[0] < 2:
        return np.zeros((obs.shape[0], obs.shape[0]))
    return squareform(pdist(obs) ** alpha_exp)


def _qcurve_max(
    left_within: np.ndarray, row_cum: np.ndarray, length: int, min_segment: int
) -> tuple[int, float]:
    """Best (t, Q) from prefix sums; ties go to the smallest split index."""
    total_within = left_within[length]
    t = np.arange(min_segment, length - min_segment + 1)
    n_left = t.astype(float)
    n_right = (length - t).astype(float)
    lw = left_within[t]
    cross = row_cum[t] - 2.0 * lw
    rw = total_within - lw - cross
    e_hat = (
        2.0 * cross / (n_left * n_right)
        - lw / (n_left * (n_left - 1.0) / 2.0)
        - rw / (n_right * (n_right - 1.0) / 2.0)
    )
    q_hat = (n_left * n_right / (n_left + n_right)) * e_hat
    k = int(np.argmax(q_hat))  # first maximum = smallest split index
    return int(t[k]), float(q_hat[k])


def _split_scan(dist: np.ndarray, min_segment: int) -> tuple[int, float]:
    """Best split of one segment from its alpha-distance matrix.

    Evaluates Q at every split index t (left = first t observations) with
    at least ``min_segment`` observations on each side, in O(L^2) via
    prefix sums.
    """
    length = dist.shape[0]
    # new_pair[t] = sum of distances from observation t to all earlier ones
    col_cum = np.cumsum(dist, axis=0)
    new_pair = np.empty(length)
    new_pair[0] = 0.0
    new_pair[1:] = col_cum.diagonal(offset=1)
    # left_within[t] = sum over pairs among the first t observations
    left_within = np.empty(length + 1)
    left_within[0] = 0.0
    np.cumsum(new_pair, out=left_within[1:])
    row_cum = np.empty(length + 1)
    row_cum[0] = 0.0
    np.cumsum(dist.sum(axis=1), out=row_cum[1:])
    return _qcurve_max(left_within, row_cum, length, min_segment)


def _permuted_stat(
    dist: np.ndarray, row_totals: np.ndarray, order: np.ndarray, min_segment: int
) -> float:
    """Best-split Q of the within-segment permutation `order`, without
    materializing the doubly permuted distance matrix.

    Row sums are permutation-invariant, and the pair-prefix increments of
    the permuted matrix are prefix column sums of the row-gathered matrix
    read at (t-1, order[t]).
    """
    length = dist.shape[0]
    prefix = np.cumsum(dist[order], axis=0)
    new_pair = np.empty(length)
    new_pair[0] = 0.0
    new_pair[1:] = prefix[np.arange(length - 1), order[1:]]
    left_within = np.empty(length + 1)
    left_within[0] = 0.0
    np.cumsum(new_pair, out=left_within[1:])
    row_cum = np.empty(length + 1)
    row_cum[0] = 0.0
    np.cumsum(row_totals[order], out=row_cum[1:])
    return _qcurve_max(left_within, row_cum, length, min_segment)[1]


def best_split(span, params: EnergyParams | None = None) -> tuple[int, float]:
    """Split index maximizing Q over all admissible splits of the span.

    A split at index t puts the first t observations on the left; both
    sides must keep at least ``min_segment`` observations.
    """
    params = params or EnergyParams()
    obs = _as_observations(span)
    if obs.shape[0] < 2 * params.min_segment:
        raise SegmentTooSmall(
            f"span of {obs.shape[0]} observations cannot satisfy min_segment={params.min_segment}"
        )
    dist = _alpha_distance_matrix(obs, params.alpha_exp)
    return _split_scan(dist, params.min_segment)


def _permutation_rng(master_seed: int, iteration_id: int, perm_index: int) -> np.random.Generator:
    seq = np.random.SeedSequence([master_seed, iteration_id, perm_index])
    return np.random.Generator(np.random.PCG64(seq))


def permutation_test(
    current_segments: list,
    observed_stat: float,
    params: EnergyParams | None = None,
    perm_cfg: PermutationConfig | None = None,
    iteration_id: int = 0,
) -> float:
    """Permutation p-value for the best split of the current segmentation.

    Each permutation shuffles observations independently within every
    segment and recomputes the maximal best-split statistic across all
    segments; p = (1 + #{permuted >= observed}) / (R + 1).  Deterministic
    given (master_seed, iteration_id).
    """
    params = params or EnergyParams()
    perm_cfg = perm_cfg or PermutationConfig()
    matrices = [
        _alpha_distance_matrix(_as_observations(seg), params.alpha_exp)
        for seg in current_segments
    ]
    return _permutation_pvalue(matrices, observed_stat, params, perm_cfg, iteration_id)


def _permutation_pvalue(
    matrices: list[np.ndarray],
    observed_stat: float,
    params: EnergyParams,
    perm_cfg: PermutationConfig,
    iteration_id: int,
) -> float:
    admissible = [
        np.ascontiguousarray(d) for d in matrices if d.shape[0] >= 2 * params.min_segment
    ]
    row_totals = [d.sum(axis=1) for d in admissible]
    exceed = 0
    for r in range(perm_cfg.n_permutations):
        rng = _permutation_rng(perm_cfg.master_seed, iteration_id, r)
        stat = -np.inf
        for dist, totals in zip(admissible, row_totals):
            order = rng.permutation(dist.shape[0])
            q = _permuted_stat(dist, totals, order, params.min_segment)
            if q > stat:
                stat = q
        if stat >= observed_stat:
            exceed += 1
    return (1 + exceed) / (perm_cfg.n_permutations + 1)


def e_divisive(
    span,
    params: EnergyParams | None = None,
    perm_cfg: PermutationConfig | None = None,
) -> ChangePointSet:
    """Hierarchical divisive estimation of all significant change points.

    Iterates: find the globally best admissible split across current
    segments, test it by within-segment permutation, commit it if
    p <= significance, stop otherwise.  Spans too short to split return an
    empty set (the whole span is one mode).  Committed indices are offsets
    within the span, reported in increasing order.
    """
    params = params or EnergyParams()
    perm_cfg = perm_cfg or PermutationConfig()
    obs = _as_observations(span)
    length = obs.shape[0]
    if length < 2 * params.min_segment:
        return []

    full_dist = _alpha_distance_matrix(obs, params.alpha_exp)
    segments: list[tuple[int, int]] = [(0, length)]
    best_cache: dict[tuple[int, int], tuple[int, float]] = {}
    committed: list[ChangePoint] = []

    for iteration_id in range(length):  # hard upper bound; loop exits earlier
        best_seg = None
        best_q = -np.inf
        best_t = -1
        for seg in segments:  # segments kept sorted, so ties pick the smallest index
            a, b = seg
            if b - a < 2 * params.min_segment:
                continue
            if seg not in best_cache:
                local_t, q = _split_scan(full_dist[a:b, a:b], params.min_segment)
                best_cache[seg] = (a + local_t, q)
            t_global, q = best_cache[seg]
            if q > best_q:
                best_seg, best_q, best_t = seg, q, t_global
        if best_seg is None:
            break

        matrices = [full_dist[a:b, a:b] for a, b in segments]
        p_value = _permutation_pvalue(matrices, best_q, params, perm_cfg, iteration_id)
        if p_value > perm_cfg.significance:
            break

        committed.append(ChangePoint(index=best_t, statistic=best_q, p_value=p_value))
        a, b = best_seg
        segments.remove(best_seg)
        del best_cache[best_seg]
        segments.append((a, best_t))
        segments.append((best_t, b))
        segments.sort()

    committed.sort(key=lambda cp: cp.index)
    return committed
