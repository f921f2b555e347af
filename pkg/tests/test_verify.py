import math

import numpy as np
import pytest
from conftest import random_unitary

from toeplitz_synth.synthesis import UnsupportedSpecError
from toeplitz_synth.toeplitz import ToeplitzSpec
from toeplitz_synth.verify import (
    check_theorem1,
    check_theorem2,
    loglog_slope,
    operator_distance,
    spectral_norm,
    trotter_sweep,
)


def svd_norm(a):
    return float(np.linalg.svd(a, compute_uv=False)[0])


def brute_phase_distance(u, v):
    """Grid over the circle, then repeated zooms around the best point."""
    lo, hi = -np.pi, np.pi
    for _ in range(6):
        grid = np.linspace(lo, hi, 401)
        vals = [svd_norm(u - np.exp(1j * p) * v) for p in grid]
        best = int(np.argmin(vals))
        step = grid[1] - grid[0]
        lo, hi = grid[best] - 2 * step, grid[best] + 2 * step
    return min(vals)


class TestDistance:
    def test_equal(self, rng):
        u = random_unitary(rng, 4)
        rep = operator_distance(u, u)
        assert rep.raw_distance <= 1e-15 and rep.phase_distance <= 1e-15 and rep.frobenius == 0

    def test_pure_phase(self):
        alpha = 0.9
        rep = operator_distance(np.eye(4), np.exp(1j * alpha) * np.eye(4))
        assert rep.raw_distance == pytest.approx(abs(np.exp(1j * alpha) - 1), abs=1e-14)
        assert rep.phase_distance <= 1e-10

    def test_x_versus_identity(self):
        x = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert svd_norm(x - np.eye(2)) == pytest.approx(2.0)
        rep = operator_distance(x, np.eye(2))
        assert rep.raw_distance == pytest.approx(2.0, abs=1e-14)
        assert rep.phase_distance == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            operator_distance(np.eye(2), np.eye(4))

    @pytest.mark.parametrize("dim", [2, 4, 8])
    def test_spectral_norm_matches_svd(self, rng, dim):
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        assert spectral_norm(a) == pytest.approx(svd_norm(a), rel=1e-12)

    @pytest.mark.parametrize("phi", [0.0, 0.3, -2.0, np.pi, 5.5])
    def test_phase_invariance(self, rng, phi):
        u = random_unitary(rng, 8)
        assert operator_distance(u, u * np.exp(1j * phi)).phase_distance <= 1e-10

    def test_phase_distance_against_brute_force(self, rng):
        for dim in (2, 4):
            for scale in (0.05, 1.0):
                u = random_unitary(rng, dim)
                h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
                w, vecs = np.linalg.eigh(h + h.conj().T)
                v = u @ (vecs * np.exp(1j * scale * w)) @ vecs.conj().T
                rep = operator_distance(u, v)
                assert rep.phase_distance <= rep.raw_distance
                assert rep.phase_distance == pytest.approx(brute_phase_distance(u, v), abs=1e-9)

    def test_triangle_inequality(self, rng):
        for _ in range(10):
            a, b, c = (random_unitary(rng, 4) for _ in range(3))
            ab = operator_distance(a, b).raw_distance
            bc = operator_distance(b, c).raw_distance
            ac = operator_distance(a, c).raw_distance
            assert ac <= ab + bc + 1e-12


class TestIdentityCheckers:
    def test_theorem1_examples(self):
        assert check_theorem1(2, 0, -1.0).deviation <= 1e-14
        assert check_theorem1(2, 1, 3.0) == (True, 0.0)
        assert check_theorem1(5, 2, 0.7).deviation <= 1e-12

    def test_theorem2_examples(self):
        assert check_theorem2(2, 1, 1.0).deviation <= 1e-14
        assert check_theorem2(3, 3, 2.0).deviation == 0.0
        assert check_theorem2(6, 2, -0.5).deviation <= 1e-12

    @pytest.mark.parametrize("n", range(2, 6))
    def test_random_draws(self, n, rng):
        for a in rng.uniform(-1, 1, size=5):
            assert all(check_theorem1(n, m, a).passed for m in range(n))
            assert all(check_theorem2(n, j, a).passed for j in range(1, n + 1))


class TestSweep:
    def test_poisson_v_sweep(self):
        res = trotter_sweep(ToeplitzSpec.poisson(3), 0.1, [4, 8, 16, 32], "v")
        assert [r.parameter for r in res.rows] == [4, 8, 16, 32]
        assert -1.15 <= res.slope <= -0.85

    def test_pure_class_is_flat(self):
        spec = ToeplitzSpec.from_bands(3, {1: 0.4, 3: 0.4, 5: 0.4, 7: 0.4, 2: 0.2, 6: 0.2})
        res = trotter_sweep(spec, 0.7, [1, 2, 4], "u")
        assert all(r.phase_distance <= 1e-10 for r in res.rows)
        assert math.isnan(res.slope)

    def test_zero_time(self):
        res = trotter_sweep(ToeplitzSpec.poisson(3), 0.0, [1, 2, 4])
        assert all(r.phase_distance <= 1e-12 and r.raw_distance <= 1e-12 for r in res.rows)

    def test_unsupported(self):
        with pytest.raises(UnsupportedSpecError):
            trotter_sweep(ToeplitzSpec.from_bands(3, {1: 1.0, 3: 2.0}), 0.1, [1])

    def test_exports(self):
        res = trotter_sweep(ToeplitzSpec.poisson(2), 0.1, [2, 4])
        lines = res.to_csv().splitlines()
        assert lines[0] == "parameter,raw_distance,phase_distance,gate_total,depth"
        assert len(lines) == 3 and lines[1].startswith("2,")
        table = res.to_table()
        assert "phase_distance" in table and "slope" in table

    def test_slope_helper(self):
        assert loglog_slope([1, 2, 4], [1.0, 0.5, 0.25]) == pytest.approx(-1.0)
        assert math.isnan(loglog_slope([1, 2], [1e-15, 1e-15]))
