"""Tests for the weighted learners and the stability-bound verifier."""
import numpy as np
import pytest

from discrep.core import LabeledSample, WeightedEmpirical
from discrep.learners import (
    PREDICT_ONE_LEFT,
    PREDICT_ONE_RIGHT,
    KernelHypothesis,
    LinearHypothesis,
    StabilityReport,
    ThresholdHypothesis,
    train_weighted_krr,
    train_weighted_ridge,
    train_weighted_threshold,
    verify_stability_bound,
    weighted_zero_one_error,
)
from discrep.linalg import GaussianKernel, LinearKernel, gram_matrix

from_points = WeightedEmpirical.from_points


def uniform(k):
    return np.full(k, 1.0 / k)


# --------------------------------------------------------------------------
# threshold ERM
# --------------------------------------------------------------------------


def test_threshold_perfect_separation():
    sample = LabeledSample([0.0, 1.0, 2.0, 3.0], [0, 0, 1, 1])
    h = train_weighted_threshold(sample, uniform(4))
    assert h.cutoff == pytest.approx(1.5)
    assert h.orientation == PREDICT_ONE_RIGHT
    assert weighted_zero_one_error(h, sample, uniform(4)) == 0.0


def test_threshold_constant_labels():
    ones = LabeledSample([0.0, 1.0, 2.0], [1, 1, 1])
    h = train_weighted_threshold(ones, uniform(3))
    assert (h.cutoff, h.orientation) == (-1.0, PREDICT_ONE_RIGHT)
    assert weighted_zero_one_error(h, ones, uniform(3)) == 0.0
    zeros = LabeledSample([0.0, 1.0, 2.0], [0, 0, 0])
    h = train_weighted_threshold(zeros, uniform(3))
    assert weighted_zero_one_error(h, zeros, uniform(3)) == 0.0


def test_threshold_tie_breaking():
    # Four zero-one-third candidates tie; the smallest cutoff wins, and at that
    # cutoff the predict-1-right orientation is preferred.
    sample = LabeledSample([0.0, 1.0, 2.0], [1, 0, 1])
    h = train_weighted_threshold(sample, uniform(3))
    assert h.cutoff == pytest.approx(-1.0)
    assert h.orientation == PREDICT_ONE_RIGHT
    assert weighted_zero_one_error(h, sample, uniform(3)) == pytest.approx(1 / 3)


def test_threshold_scan_is_exhaustively_optimal():
    rng = np.random.default_rng(99)
    for _ in range(20):
        k = int(rng.integers(2, 12))
        xs = rng.normal(size=k)
        ys = rng.integers(0, 2, size=k).astype(float)
        w = rng.dirichlet(np.ones(k))
        sample = LabeledSample(xs, ys)
        h = train_weighted_threshold(sample, w)
        best = weighted_zero_one_error(h, sample, w)
        srt = np.sort(np.unique(xs))
        cutoffs = [srt[0] - 1.0, srt[-1] + 1.0]
        cutoffs += [0.5 * (a + b) for a, b in zip(srt[:-1], srt[1:])]
        for c in cutoffs:
            for orient in (PREDICT_ONE_LEFT, PREDICT_ONE_RIGHT):
                cand = ThresholdHypothesis(c, orient)
                assert best <= weighted_zero_one_error(cand, sample, w) + 1e-12


def test_threshold_weights_concentrated_right_move_the_cutoff():
    rng = np.random.default_rng(42)
    xs = rng.normal(-1.0, 2.0, size=400)
    ys = (np.abs(xs) <= 1.0).astype(float)
    sample = LabeledSample(xs, ys)
    plain = train_weighted_threshold(sample, uniform(400))
    assert plain.cutoff < 0.0
    right = np.where(xs > 0.0, 1.0, 1e-9)
    h = train_weighted_threshold(sample, right / right.sum())
    assert h.cutoff > 0.0


def test_threshold_replication_consistency():
    sample = LabeledSample([0.0, 2.0], [1, 0])
    h_w = train_weighted_threshold(sample, [0.25, 0.75])
    replicated = LabeledSample([0.0, 2.0, 2.0, 2.0], [1, 0, 0, 0])
    h_r = train_weighted_threshold(replicated, uniform(4))
    grid = np.linspace(-1, 3, 41)
    assert np.array_equal(h_w.predict(grid), h_r.predict(grid))


def test_threshold_input_validation():
    with pytest.raises(ValueError, match="1-d"):
        train_weighted_threshold(LabeledSample([[0.0, 1.0]], [1]), [1.0])
    with pytest.raises(ValueError, match="lie in"):
        train_weighted_threshold(LabeledSample([0.0], [0.5]), [1.0])
    with pytest.raises(ValueError, match="align"):
        train_weighted_threshold(LabeledSample([0.0, 1.0], [0, 1]), [1.0])
    with pytest.raises(ValueError, match="orientation"):
        ThresholdHypothesis(0.0, "sideways")


# --------------------------------------------------------------------------
# ridge
# --------------------------------------------------------------------------


def test_ridge_zero_labels_give_zero_coef():
    rng = np.random.default_rng(1)
    sample = LabeledSample(rng.normal(size=(6, 3)), np.zeros(6))
    h = train_weighted_ridge(sample, uniform(6), lam=0.5)
    assert h.coef == pytest.approx(np.zeros(3), abs=1e-12)
    assert h.norm == 0.0


def test_ridge_single_point_closed_form():
    sample = LabeledSample([[1.0, 0.0]], [1.0])
    h = train_weighted_ridge(sample, [1.0], lam=1.0)
    assert h.coef == pytest.approx([0.5, 0.0])


def test_ridge_shrinkage_is_monotone():
    rng = np.random.default_rng(2)
    sample = LabeledSample(rng.normal(size=(12, 4)), rng.normal(size=12))
    w = rng.dirichlet(np.ones(12))
    norms = [train_weighted_ridge(sample, w, lam).norm for lam in (0.01, 0.1, 1.0, 10.0, 100.0)]
    assert all(a >= b - 1e-12 for a, b in zip(norms, norms[1:]))


def test_ridge_matches_least_squares_oracle():
    # Ridge equals ordinary least squares on rows scaled by sqrt(w) with
    # sqrt(lam) ridge rows appended; lstsq provides an independent solution.
    rng = np.random.default_rng(3)
    x = rng.normal(size=(10, 3))
    y = rng.normal(size=10)
    w = rng.dirichlet(np.ones(10))
    lam = 0.37
    h = train_weighted_ridge(LabeledSample(x, y), w, lam)
    aug_x = np.vstack([np.sqrt(w)[:, None] * x, np.sqrt(lam) * np.eye(3)])
    aug_y = np.concatenate([np.sqrt(w) * y, np.zeros(3)])
    ref, *_ = np.linalg.lstsq(aug_x, aug_y, rcond=None)
    assert h.coef == pytest.approx(ref, abs=1e-10)


def test_ridge_gradient_residual_is_tiny():
    rng = np.random.default_rng(4)
    x = rng.normal(size=(8, 2))
    y = rng.normal(size=8)
    w = rng.dirichlet(np.ones(8))
    h = train_weighted_ridge(LabeledSample(x, y), w, lam=0.05)
    grad = 2.0 * x.T @ (w * (x @ h.coef - y)) + 2.0 * 0.05 * h.coef
    assert np.linalg.norm(grad) <= 1e-8


def test_ridge_replication_consistency():
    x = np.array([[1.0, 2.0], [0.5, -1.0]])
    y = np.array([1.0, -0.5])
    h_w = train_weighted_ridge(LabeledSample(x, y), [0.25, 0.75], lam=0.3)
    xr = np.array([[1.0, 2.0], [0.5, -1.0], [0.5, -1.0], [0.5, -1.0]])
    yr = np.array([1.0, -0.5, -0.5, -0.5])
    h_r = train_weighted_ridge(LabeledSample(xr, yr), uniform(4), lam=0.3)
    grid = np.linspace(-2, 2, 9)[:, None] * np.ones(2)
    assert h_w.predict(grid) == pytest.approx(h_r.predict(grid), abs=1e-8)


def test_ridge_validation():
    sample = LabeledSample([[1.0]], [1.0])
    with pytest.raises(ValueError, match="lam"):
        train_weighted_ridge(sample, [1.0], lam=0.0)


# --------------------------------------------------------------------------
# kernel ridge
# --------------------------------------------------------------------------


def test_krr_linear_kernel_matches_ridge():
    rng = np.random.default_rng(5)
    x = rng.normal(size=(9, 3))
    y = rng.normal(size=9)
    w = rng.dirichlet(np.ones(9))
    lam = 0.2
    sample = LabeledSample(x, y)
    kernel = LinearKernel()
    gram = gram_matrix(x, kernel).data
    h_k = train_weighted_krr(sample, w, gram, lam, kernel)
    h_r = train_weighted_ridge(sample, w, lam)
    grid = rng.normal(size=(20, 3))
    assert h_k.predict(grid) == pytest.approx(h_r.predict(grid), abs=1e-8)
    assert h_k.rkhs_norm == pytest.approx(h_r.norm, abs=1e-8)


def test_krr_zero_labels():
    x = np.array([[0.0], [1.0]])
    kernel = GaussianKernel(gamma=1.0)
    h = train_weighted_krr(
        LabeledSample(x, [0.0, 0.0]), uniform(2), gram_matrix(x, kernel).data, 0.1, kernel
    )
    assert h.alpha == pytest.approx([0.0, 0.0], abs=1e-14)
    assert h.rkhs_norm == 0.0


def test_krr_duplicate_points_same_predictor():
    rng = np.random.default_rng(6)
    x = rng.normal(size=(5, 2))
    y = rng.normal(size=5)
    kernel = GaussianKernel(gamma=0.5)
    h1 = train_weighted_krr(
        LabeledSample(x, y), uniform(5), gram_matrix(x, kernel).data, 0.25, kernel
    )
    xd = np.repeat(x, 2, axis=0)
    yd = np.repeat(y, 2)
    h2 = train_weighted_krr(
        LabeledSample(xd, yd), uniform(10), gram_matrix(xd, kernel).data, 0.25, kernel
    )
    grid = rng.normal(size=(15, 2))
    assert h1.predict(grid) == pytest.approx(h2.predict(grid), abs=1e-8)


def test_krr_objective_is_stationary():
    rng = np.random.default_rng(7)
    x = rng.normal(size=(6, 2))
    y = rng.normal(size=6)
    w = rng.dirichlet(np.ones(6))
    lam = 0.15
    kernel = GaussianKernel(gamma=0.8)
    gram = gram_matrix(x, kernel).data
    h = train_weighted_krr(LabeledSample(x, y), w, gram, lam, kernel)

    def objective(alpha):
        resid = gram @ alpha - y
        return float(np.sum(w * resid**2) + lam * alpha @ gram @ alpha)

    eps = 1e-6
    for i in range(6):
        step = np.zeros(6)
        step[i] = eps
        deriv = (objective(h.alpha + step) - objective(h.alpha - step)) / (2 * eps)
        assert abs(deriv) <= 1e-6


def test_krr_ill_conditioning_flag():
    x = np.array([[0.0], [1e-9], [1.0]])
    kernel = GaussianKernel(gamma=1.0)
    gram = gram_matrix(x, kernel).data
    sample = LabeledSample(x, [1.0, 1.0, -1.0])
    good = train_weighted_krr(sample, uniform(3), gram, 1.0, kernel)
    assert not good.ill_conditioned
    bad = train_weighted_krr(sample, uniform(3), gram, 1e-14, kernel)
    assert bad.ill_conditioned


def test_krr_predict_requires_kernel_or_cross():
    x = np.array([[0.0], [1.0]])
    kernel = LinearKernel()
    gram = gram_matrix(x, kernel).data
    h = train_weighted_krr(LabeledSample(x, [1.0, 2.0]), uniform(2), gram, 0.1)
    with pytest.raises(ValueError, match="carries no kernel"):
        h.predict([[0.5]])
    cross = kernel.pairwise(np.array([[0.5]]), x)
    withk = train_weighted_krr(LabeledSample(x, [1.0, 2.0]), uniform(2), gram, 0.1, kernel)
    assert h.predict_from_cross(cross) == pytest.approx(withk.predict([[0.5]]))


def test_krr_validation():
    x = np.array([[0.0], [1.0]])
    with pytest.raises(ValueError, match="square over the sample"):
        train_weighted_krr(LabeledSample(x, [0.0, 1.0]), uniform(2), np.eye(3), 0.1)
    with pytest.raises(ValueError, match="lam"):
        train_weighted_krr(LabeledSample(x, [0.0, 1.0]), uniform(2), np.eye(2), 0.0)


# --------------------------------------------------------------------------
# stability verification
# --------------------------------------------------------------------------


def expansion_labels(anchors, coefs, kernel, xs):
    return kernel.pairwise(np.asarray(xs, dtype=float), anchors) @ coefs


def test_stability_identical_distributions():
    pts = np.array([[0.0], [1.0], [2.0]])
    q = from_points(pts, [0.2, 0.5, 0.3])
    kernel = GaussianKernel(gamma=0.5)
    labels = np.array([1.0, -1.0, 0.5])
    report = verify_stability_bound(
        q, q, labels, labels, lam=0.5, kernel=kernel,
        probe_points=np.linspace(-1, 3, 9), probe_labels=np.zeros(9),
    )
    assert report.observed_max == pytest.approx(0.0, abs=1e-12)
    assert report.branch == "matching_labels"
    assert report.satisfied


def test_stability_zero_disc_different_supports():
    # Equal second moments and equal feature-label correlations force the two
    # linear-kernel fits to coincide even though the supports differ.
    r = 1.0 / np.sqrt(2.0)
    q = from_points([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    p = from_points([[r, r], [-r, -r], [r, -r], [-r, r]])
    kernel = LinearKernel()
    coef = np.array([0.8, -0.4])

    def f(xs):
        return np.asarray(xs, dtype=float) @ coef

    from discrep.distance import joint_support

    pts, _, _ = joint_support(q, p)
    probe = np.array([[0.3, 0.1], [1.0, 1.0], [-0.5, 0.25]])
    report = verify_stability_bound(
        q, p, f(pts), f(pts), lam=0.1, kernel=kernel,
        probe_points=probe, probe_labels=f(probe),
        target_norm_bound=float(np.linalg.norm(coef)),
    )
    assert report.disc == pytest.approx(0.0, abs=1e-7)
    assert report.observed_max <= 1e-8
    assert report.satisfied


def test_stability_shifted_gaussian_regression_instance():
    rng = np.random.default_rng(7)
    kernel = GaussianKernel(gamma=0.3)
    q = from_points(rng.normal(-1.0, 2.0, size=12))
    p = from_points(rng.normal(1.0, 2.0, size=10))
    from discrep.distance import joint_support

    pts, _, _ = joint_support(q, p)
    anchors = np.array([[-1.0], [0.5], [2.0]])
    coefs = np.array([0.7, -0.2, 0.4])
    labels = expansion_labels(anchors, coefs, kernel, pts)
    probe = np.linspace(-5, 5, 41)[:, None]
    probe_labels = expansion_labels(anchors, coefs, kernel, probe)
    k_anchor = kernel.pairwise(anchors, anchors)
    target_norm = float(np.sqrt(coefs @ k_anchor @ coefs))
    report = verify_stability_bound(
        q, p, labels, labels, lam=0.1, kernel=kernel,
        probe_points=probe, probe_labels=probe_labels,
        target_norm_bound=target_norm,
    )
    assert report.branch == "matching_labels"
    assert report.satisfied
    assert report.observed_max <= report.bound_value


def test_stability_shifted_labels_branch():
    rng = np.random.default_rng(11)
    kernel = GaussianKernel(gamma=0.4)
    q = from_points(rng.normal(-0.5, 1.5, size=10))
    p = from_points(rng.normal(0.5, 1.5, size=8))
    from discrep.distance import joint_support

    pts, _, _ = joint_support(q, p)
    anchors = np.array([[-1.0], [1.0]])
    cq = np.array([0.5, 0.2])
    cp = np.array([0.3, 0.6])
    labels_q = expansion_labels(anchors, cq, kernel, pts)
    labels_p = expansion_labels(anchors, cp, kernel, pts)
    probe = np.linspace(-4, 4, 33)[:, None]
    k_anchor = kernel.pairwise(anchors, anchors)
    norm_bound = max(
        float(np.sqrt(cq @ k_anchor @ cq)), float(np.sqrt(cp @ k_anchor @ cp))
    )
    report = verify_stability_bound(
        q, p, labels_q, labels_p, lam=0.2, kernel=kernel,
        probe_points=probe, probe_labels=expansion_labels(anchors, cp, kernel, probe),
        target_norm_bound=norm_bound,
    )
    assert report.branch == "shifted_labels"
    assert report.label_gap > 0
    assert report.satisfied


def test_stability_validation():
    q = from_points([0.0, 1.0])
    kernel = LinearKernel()
    labels = np.zeros(2)
    with pytest.raises(ValueError, match="probe grid must be nonempty"):
        verify_stability_bound(q, q, labels, labels, 0.1, kernel, np.empty((0, 1)), [])
    with pytest.raises(ValueError, match="probe labels"):
        verify_stability_bound(q, q, labels, labels, 0.1, kernel, [[0.5]], [1.0, 2.0])
    with pytest.raises(ValueError, match="support labels"):
        verify_stability_bound(q, q, np.zeros(3), labels, 0.1, kernel, [[0.5]], [1.0])


def test_report_and_hypothesis_types():
    assert isinstance(
        ThresholdHypothesis(0.0, PREDICT_ONE_LEFT), ThresholdHypothesis
    )
    with pytest.raises(ValueError, match="finite"):
        LinearHypothesis([np.inf])
    with pytest.raises(ValueError, match="align"):
        KernelHypothesis(np.ones(2), np.zeros((3, 1)), 1.0)
    fields = set(StabilityReport.__dataclass_fields__)
    assert {"observed_max", "bound_value", "satisfied", "branch", "disc"} <= fields
