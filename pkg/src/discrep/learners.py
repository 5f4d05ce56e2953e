"""Weighted learners and the stability-bound verifier.

The trainers here consume probability weights over their samples, which is
what the reweighting solvers produce: exact weighted ERM over 1-d threshold
rules for classification and (kernel) ridge regression for the squared loss.
`verify_stability_bound` ties the package together by training on two
weightings and checking the measured pointwise loss difference against the
closed-form ceiling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    LabeledSample,
    SimplexVector,
    WeightedEmpirical,
    require_binary_labels,
)
from .bounds import pointwise_stability, pointwise_stability_shifted_labels
from .distance import disc_l2_kernel, joint_support
from .linalg import KernelSpec, gram_matrix

PREDICT_ONE_LEFT = "predict-1-left"
PREDICT_ONE_RIGHT = "predict-1-right"

ILL_CONDITION_LIMIT = 1e12


def _weight_entries(weights, size: int) -> np.ndarray:
    if isinstance(weights, SimplexVector):
        w = weights.entries
    else:
        w = SimplexVector(np.asarray(weights, dtype=float)).entries
    if w.shape[0] != size:
        raise ValueError("weights must align one-to-one with the sample")
    return w


# --------------------------------------------------------------------------
# threshold classification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdHypothesis:
    """Half-line classifier: predict 1 on one side of the cutoff (inclusive)."""

    cutoff: float
    orientation: str

    def __post_init__(self):
        if not math.isfinite(self.cutoff):
            raise ValueError("cutoff must be finite")
        if self.orientation not in (PREDICT_ONE_LEFT, PREDICT_ONE_RIGHT):
            raise ValueError("orientation must be predict-1-left or predict-1-right")

    def predict(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if xs.ndim == 2 and xs.shape[1] == 1:
            xs = xs[:, 0]
        if self.orientation == PREDICT_ONE_RIGHT:
            return (xs >= self.cutoff).astype(float)
        return (xs <= self.cutoff).astype(float)


def weighted_zero_one_error(h: ThresholdHypothesis, sample: LabeledSample, weights) -> float:
    w = _weight_entries(weights, sample.size)
    preds = h.predict(sample.points)
    return float(np.sum(w * (preds != sample.labels)))


def train_weighted_threshold(sample: LabeledSample, weights) -> ThresholdHypothesis:
    """Exact weighted ERM over half-line classifiers on the line.

    Scans every cutoff between consecutive distinct sorted points (plus one
    sentinel beyond each end, which yields the constant rules) in both
    orientations. Ties go to the smallest cutoff, then to predict-1-right.
    """
    if sample.dim != 1:
        raise ValueError("threshold training needs 1-d points")
    labels = require_binary_labels(sample.labels)
    w = _weight_entries(weights, sample.size)
    xs = sample.points[:, 0]
    order = np.argsort(xs, kind="stable")
    xs = xs[order]
    w1 = np.where(labels[order] == 1.0, w[order], 0.0)
    w0 = np.where(labels[order] == 0.0, w[order], 0.0)
    pre1 = np.concatenate([[0.0], np.cumsum(w1)])
    pre0 = np.concatenate([[0.0], np.cumsum(w0)])
    tot1, tot0 = pre1[-1], pre0[-1]
    k = xs.shape[0]
    best = None
    for i in range(k + 1):
        if i == 0:
            cutoff = float(xs[0] - 1.0)
        elif i == k:
            cutoff = float(xs[-1] + 1.0)
        else:
            if xs[i] == xs[i - 1]:
                continue
            cutoff = float(0.5 * (xs[i - 1] + xs[i]))
        # Points with index >= i sit right of the cutoff.
        err_right = float(pre1[i] + (tot0 - pre0[i]))
        err_left = float(pre0[i] + (tot1 - pre1[i]))
        for err, orientation in ((err_right, PREDICT_ONE_RIGHT), (err_left, PREDICT_ONE_LEFT)):
            if best is None or err < best[0]:
                best = (err, cutoff, orientation)
    return ThresholdHypothesis(cutoff=best[1], orientation=best[2])


# --------------------------------------------------------------------------
# ridge regression (primal, linear features)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearHypothesis:
    """Homogeneous linear predictor x -> coef . x (no offset)."""

    coef: np.ndarray

    def __post_init__(self):
        c = np.array(self.coef, dtype=float)
        if c.ndim != 1 or not np.isfinite(c).all():
            raise ValueError("coef must be a finite vector")
        c.setflags(write=False)
        object.__setattr__(self, "coef", c)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coef))

    def predict(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        if xs.ndim == 1:
            xs = xs[:, None]
        return xs @ self.coef


def train_weighted_ridge(sample: LabeledSample, weights, lam: float) -> LinearHypothesis:
    """Minimize sum_i w_i (coef . x_i - y_i)^2 + lam * |coef|^2 exactly."""
    if not (math.isfinite(lam) and lam > 0):
        raise ValueError("lam must be positive")
    w = _weight_entries(weights, sample.size)
    x = sample.points
    y = sample.labels
    a = x.T @ (w[:, None] * x) + lam * np.eye(sample.dim)
    b = x.T @ (w * y)
    coef = np.linalg.solve(a, b)
    grad = 2.0 * x.T @ (w * (x @ coef - y)) + 2.0 * lam * coef
    if float(np.linalg.norm(grad)) > 1e-8:
        raise ArithmeticError("ridge normal equations not solved to tolerance")
    return LinearHypothesis(coef)


# --------------------------------------------------------------------------
# kernel ridge regression (dual)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelHypothesis:
    """Kernel expansion h(x) = sum_i alpha_i k(x_i, x) over the training points."""

    alpha: np.ndarray
    points: np.ndarray
    rkhs_norm: float
    kernel: KernelSpec | None = None
    ill_conditioned: bool = False

    def __post_init__(self):
        a = np.array(self.alpha, dtype=float)
        pts = np.array(self.points, dtype=float)
        if a.ndim != 1 or not np.isfinite(a).all():
            raise ValueError("alpha must be a finite vector")
        if pts.ndim != 2 or pts.shape[0] != a.shape[0]:
            raise ValueError("points must align one-to-one with alpha")
        a.setflags(write=False)
        pts.setflags(write=False)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "points", pts)

    def predict(self, xs) -> np.ndarray:
        if self.kernel is None:
            raise ValueError(
                "hypothesis carries no kernel; use predict_from_cross with a "
                "precomputed cross-gram matrix"
            )
        xs = np.asarray(xs, dtype=float)
        if xs.ndim == 1:
            xs = xs[:, None]
        return self.kernel.pairwise(xs, self.points) @ self.alpha

    def predict_from_cross(self, cross) -> np.ndarray:
        """Predictions from cross[i, j] = k(new_i, train_j)."""
        cross = np.asarray(cross, dtype=float)
        if cross.ndim != 2 or cross.shape[1] != self.alpha.shape[0]:
            raise ValueError("cross-gram must have one column per training point")
        return cross @ self.alpha


def train_weighted_krr(
    sample: LabeledSample, weights, gram, lam: float, kernel: KernelSpec | None = None
) -> KernelHypothesis:
    """Weighted kernel ridge regression through the symmetrized dual system.

    With s = sqrt(weights), solves (diag(s) K diag(s) + lam I) beta = s * y and
    sets alpha = s * beta, a stationary point of
    sum_i w_i (h(x_i) - y_i)^2 + lam |h|_K^2. The system is symmetric positive
    definite, so a Cholesky factorization does the solve; a condition estimate
    above 1e12 sets the ill_conditioned flag.
    """
    if not (math.isfinite(lam) and lam > 0):
        raise ValueError("lam must be positive")
    w = _weight_entries(weights, sample.size)
    g = np.asarray(gram, dtype=float)
    if g.shape != (sample.size, sample.size):
        raise ValueError("gram matrix must be square over the sample")
    s = np.sqrt(w)
    a = (s[:, None] * g * s[None, :]) + lam * np.eye(sample.size)
    a = 0.5 * (a + a.T)
    chol = np.linalg.cholesky(a)
    beta = np.linalg.solve(chol.T, np.linalg.solve(chol, s * sample.labels))
    alpha = s * beta
    ill = bool(np.linalg.cond(a) > ILL_CONDITION_LIMIT)
    sq_norm = float(alpha @ g @ alpha)
    return KernelHypothesis(
        alpha=alpha,
        points=sample.points,
        rkhs_norm=math.sqrt(max(sq_norm, 0.0)),
        kernel=kernel,
        ill_conditioned=ill,
    )


# --------------------------------------------------------------------------
# stability-bound verification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilityReport:
    observed_max: float
    bound_value: float
    satisfied: bool
    branch: str
    disc: float
    label_gap: float
    radius: float
    kappa: float
    loss_bound: float
    lam: float


def verify_stability_bound(
    q: WeightedEmpirical,
    p: WeightedEmpirical,
    labels_q,
    labels_p,
    lam: float,
    kernel: KernelSpec,
    probe_points,
    probe_labels,
    target_norm_bound: float = 0.0,
) -> StabilityReport:
    """Train on both weightings and check the pointwise loss-difference ceiling.

    ``labels_q`` and ``labels_p`` are the two labeling functions evaluated on
    the joint support (q points first). The discrepancy is measured over the
    smallest hypothesis ball containing both trained predictors and
    ``target_norm_bound`` (the norm of the labeling function when the caller
    knows it); the squared-loss discrepancy of the radius-R ball is R^2 times
    the unit-ball value. When the two labelings agree on q's support the
    matching-label ceiling applies, otherwise the shifted-label one with the
    measured root-mean-square gap.
    """
    probe_points = np.asarray(probe_points, dtype=float)
    if probe_points.ndim == 1:
        probe_points = probe_points[:, None]
    if probe_points.size == 0:
        raise ValueError("probe grid must be nonempty")
    probe_labels = np.asarray(probe_labels, dtype=float)
    if probe_labels.ndim != 1 or probe_labels.shape[0] != probe_points.shape[0]:
        raise ValueError("probe labels must align one-to-one with probe points")
    if not (math.isfinite(target_norm_bound) and target_norm_bound >= 0):
        raise ValueError("target_norm_bound must be nonnegative")

    pts, qm, pm = joint_support(q, p)
    labels_q = np.asarray(labels_q, dtype=float)
    labels_p = np.asarray(labels_p, dtype=float)
    if labels_q.shape != (pts.shape[0],) or labels_p.shape != (pts.shape[0],):
        raise ValueError("support labels must align with the joint support")

    gram = gram_matrix(pts, kernel).data
    h_q = train_weighted_krr(LabeledSample(pts, labels_q), qm, gram, lam, kernel)
    h_p = train_weighted_krr(LabeledSample(pts, labels_p), pm, gram, lam, kernel)

    radius = max(h_q.rkhs_norm, h_p.rkhs_norm, float(target_norm_bound))
    disc_unit = disc_l2_kernel(q, p, gram).value
    disc = radius * radius * disc_unit

    kappa_sq = max(
        float(np.max(np.diag(gram))),
        float(np.max(kernel.pairwise(probe_points, probe_points).diagonal())),
    )
    kappa = math.sqrt(max(kappa_sq, 0.0))
    loss_bound = max(
        float(np.max(np.abs(labels_q))),
        float(np.max(np.abs(labels_p))),
        float(np.max(np.abs(probe_labels))),
        kappa * radius,
    )

    gap_sq = float(np.sum(qm * (labels_q - labels_p) ** 2))
    label_gap = math.sqrt(max(gap_sq, 0.0))
    if label_gap <= 1e-12:
        branch = "matching_labels"
        bound = pointwise_stability(kappa=kappa, sigma=4.0 * loss_bound, disc=disc, lam=lam)
    else:
        branch = "shifted_labels"
        bound = pointwise_stability_shifted_labels(
            kappa=kappa, bound=loss_bound, disc=disc, lam=lam, label_gap=label_gap
        )

    pred_q = h_q.predict(probe_points)
    pred_p = h_p.predict(probe_points)
    loss_diff = np.abs((pred_p - probe_labels) ** 2 - (pred_q - probe_labels) ** 2)
    observed = float(np.max(loss_diff))
    return StabilityReport(
        observed_max=observed,
        bound_value=float(bound),
        satisfied=bool(observed <= bound + 1e-12),
        branch=branch,
        disc=float(disc),
        label_gap=label_gap,
        radius=float(radius),
        kappa=kappa,
        loss_bound=float(loss_bound),
        lam=float(lam),
    )
