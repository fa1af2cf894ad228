import numpy as np
import pytest

from combman.diffgeo import (ChartSpec, MinkowskiNorm, NormError, build_partition_norm,
                             euclidean_norm, hessian_half_square, minkowski_check)


def samples(dim, k=100, seed=0):
    return np.random.default_rng(seed).standard_normal((k, dim))


class TestMinkowskiCheck:
    @pytest.mark.parametrize("dim", range(2, 7))
    def test_euclidean(self, dim):
        rep = minkowski_check(euclidean_norm(dim), samples(dim))
        assert rep.ok and not rep.failures
        assert rep.homogeneity_margin <= 1e-9
        assert rep.min_eigenvalue > 0.5

    def test_hessian_of_euclidean_is_identity(self):
        H = hessian_half_square(euclidean_norm(3), [0.3, -1.2, 2.0])
        assert H == pytest.approx(np.eye(3), abs=1e-6)

    def test_scaled(self):
        rep = minkowski_check(euclidean_norm(3, 2.0), samples(3))
        assert rep.ok and rep.min_eigenvalue == pytest.approx(4.0, rel=1e-5)

    def test_difference_of_absolute_values_is_not_a_norm(self):
        F = MinkowskiNorm(2, lambda v: abs(v[0]) - abs(v[1]))
        rep = minkowski_check(F, samples(2))
        assert not rep.nonnegative and not rep.ok
        assert rep.min_value < 0
        assert any("negative" in f for f in rep.failures)

    def test_l1_norm_is_degenerate(self):
        # homogeneous and non-negative but its fundamental form vanishes
        F = MinkowskiNorm(2, lambda v: float(np.abs(v).sum()))
        rep = minkowski_check(F, samples(2, 20))
        assert rep.nonnegative and rep.homogeneous and not rep.positive_definite

    def test_non_homogeneous(self):
        F = MinkowskiNorm(2, lambda v: float(np.dot(v, v)))
        rep = minkowski_check(F, samples(2, 10))
        assert not rep.homogeneous

    def test_report_dict(self):
        d = minkowski_check(euclidean_norm(2), samples(2, 5)).to_dict()
        assert d["ok"] is True and d["failures"] == []

    def test_errors(self):
        with pytest.raises(NormError):
            minkowski_check(euclidean_norm(2), [])
        with pytest.raises(NormError):
            minkowski_check(euclidean_norm(2), [[0.0, 0.0]])
        with pytest.raises(NormError):
            minkowski_check(euclidean_norm(2), [[1.0, 0.0]], scales=(0.0,))
        with pytest.raises(NormError):
            euclidean_norm(2)([1.0, 2.0, 3.0])


class TestPartitionNorm:
    def test_single_manifold_identity(self):
        chart = ChartSpec(1, 2, (3,))
        F = build_partition_norm(chart, [euclidean_norm(3)], [1.0])
        v = np.array([1.0, 2.0, 2.0])
        assert F(v) == pytest.approx(3.0)

    def test_equal_weights(self):
        chart = ChartSpec(2, 1, (2, 2))
        F = build_partition_norm(chart, [euclidean_norm(2), euclidean_norm(2)], [0.5, 0.5])
        v = np.array([0.0, 3.0, 4.0])
        assert F(v) == pytest.approx(0.5 * 3 + 0.5 * 4)
        assert minkowski_check(F, samples(3)).ok

    def test_varying_weights(self):
        chart = ChartSpec(2, 1, (1, 2))
        w0 = lambda x: 1 / (1 + x[0] ** 2)  # noqa: E731
        w1 = lambda x: x[0] ** 2 / (1 + x[0] ** 2)  # noqa: E731
        F = build_partition_norm(chart, [euclidean_norm(1), euclidean_norm(2)], [w0, w1],
                                 point=[1.0, 0], check_points=[[3.0, 1]])
        # both blocks see the shared coordinate only
        assert F(np.array([2.0, 0])) == pytest.approx(2.0)

    def test_weights_must_sum_to_one(self):
        chart = ChartSpec(2, 1, (2, 2))
        with pytest.raises(NormError, match="weights do not sum to 1"):
            build_partition_norm(chart, [euclidean_norm(2)] * 2, [0.3, 0.8])

    def test_bad_inputs(self):
        chart = ChartSpec(2, 1, (2, 3))
        with pytest.raises(NormError):
            build_partition_norm(chart, [euclidean_norm(2)], [1.0])
        with pytest.raises(NormError):
            build_partition_norm(chart, [euclidean_norm(2), euclidean_norm(2)], [0.5, 0.5])
        with pytest.raises(NormError, match="\\[0, 1\\]"):
            build_partition_norm(chart, [euclidean_norm(2), euclidean_norm(3)], [1.5, -0.5])
