import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_cfg
from lvmbkit.action_sim import (
    GroupElement,
    ProjectivePoint,
    act,
    chordal_distance,
    group_law_residual,
    local_freeness_check,
    normal_form,
)
from lvmbkit.arrangement import point_in_V
from lvmbkit.errors import ActionOverflow, Inconsistent, PointNotInV, TargetAtZero
from lvmbkit.generators import hopf_like
from lvmbkit.linalg_exact import GaussianRational as GQ


def torus_point(rng, n):
    return ProjectivePoint(rng.uniform(0.5, 2, n) * np.exp(1j * rng.uniform(-np.pi, np.pi, n)))


class TestPoint:
    def test_declared_zeros(self):
        p = ProjectivePoint([1, 2, 3], zero_support={2})
        assert p.coords[1] == 0 and p.zero_support == {2}

    def test_inferred_zeros(self):
        assert ProjectivePoint([1, 0, 3]).zero_support == {2}

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjectivePoint([0, 0])

    def test_undeclared_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjectivePoint([0, 1, 2], zero_support={2})


class TestAct:
    def test_identity(self, cfg_a):
        p = ProjectivePoint([1 + 1j, 2, -3, 0.5])
        assert chordal_distance(act(cfg_a, [0], p), p) <= 1e-12

    def test_half_turn(self, cfg_a):
        a, b, c = 1.5 - 1j, 0.25j, -2.0
        q = act(cfg_a, [1j * np.pi], ProjectivePoint([a, b, c, 1]))
        expected = np.array([-a, b, -c, 1])
        np.testing.assert_allclose(q.coords / q.coords[3], expected, atol=1e-12)

    def test_zero_support_kept(self, cfg_a):
        p = ProjectivePoint([1, 0, 2, 3])
        assert act(cfg_a, [0.3 - 2j], p).zero_support == {2}

    def test_overflow_reported(self, cfg_a):
        with pytest.raises(ActionOverflow):
            act(cfg_a, [400.0], ProjectivePoint([1, 1, 1, 1]))

    def test_large_but_representable(self, cfg_a):
        q = act(cfg_a, [200.0], ProjectivePoint([1, 1, 1, 1]))
        assert np.all(q.coords != 0)

    def test_complex_weights(self):
        cfg = make_cfg([[GQ(0, 1), 1, 0]], [])
        q = act(cfg, [np.pi / 2], ProjectivePoint([1, 1, 1]))
        np.testing.assert_allclose(q.coords / q.coords[2], [1j, np.exp(np.pi / 2), 1], atol=1e-12)


class TestChordal:
    def test_orthogonal(self):
        assert chordal_distance(np.array([1, 0]), np.array([0, 1])) == pytest.approx(1.0)

    def test_angle(self):
        # sin of the angle between the lines through (1,0) and (1,1)
        assert chordal_distance(np.array([1, 0]), np.array([1, 1])) == pytest.approx(2 ** -0.5)

    def test_projective(self):
        p = np.array([1 + 2j, 3, -1j])
        assert chordal_distance(p, (2 - 5j) * p) < 1e-15


class TestGroupLaw:
    def test_zero(self, cfg_a):
        assert group_law_residual(cfg_a, [0], [0], ProjectivePoint([1, 2, 3, 4])) == 0

    def test_inverse(self, cfg_a):
        p = ProjectivePoint([1j, 2, 3, 4])
        t = GroupElement((0.7 - 0.2j,))
        assert chordal_distance(act(cfg_a, -t, act(cfg_a, t, p)), p) < 1e-12

    @settings(max_examples=200, deadline=None)
    @given(st.integers(4, 8), st.integers(0, 2**32 - 1))
    def test_random(self, n, seed):
        rng = np.random.default_rng(seed)
        cfg = hopf_like(n)
        t1 = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
        t2 = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
        assert group_law_residual(cfg, [t1], [t2], torus_point(rng, n)) < 1e-9


class TestLocalFreeness:
    def test_generic(self, cfg_a):
        assert local_freeness_check(cfg_a, ProjectivePoint([1.2, -0.5j, 2, 1])) == 1

    def test_degenerate(self):
        # Lambda_1 = Lambda_2, point supported on {1, 2}: both fields vanish there
        cfg = make_cfg([[0, 0, 1, 2, 3]], [])
        p = ProjectivePoint([1, 2, 0, 0, 0])
        assert local_freeness_check(cfg, p) == 0

    def test_zero_lambda(self):
        cfg = make_cfg([[0, 0, 0, 0]], [])
        assert local_freeness_check(cfg, ProjectivePoint([1, 2, 3, 4])) == 0

    def test_not_in_v(self, cfg_a):
        with pytest.raises(PointNotInV):
            local_freeness_check(cfg_a, ProjectivePoint([1, 2, 3, 0]))


class TestNormalForm:
    def test_reference_only(self, cfg_a):
        res = normal_form(cfg_a, ProjectivePoint([1, 2, 3, 4]), [4])
        assert res.t.t == (0j,)
        assert res.solution_space_dim == 1

    def test_equal_coordinates(self, cfg_a):
        res = normal_form(cfg_a, ProjectivePoint([1, 2, 5, 5]), [3, 4], reference=4)
        assert abs(res.t.t[0]) < 1e-15
        assert res.solution_space_dim == 0

    def test_exp3(self, cfg_a):
        res = normal_form(cfg_a, ProjectivePoint([1, 1, np.e ** 3, 1]), [3, 4], reference=4)
        assert res.t.t[0] == pytest.approx(-1, abs=1e-12)
        assert res.normalized.coords[2] == pytest.approx(1, abs=1e-12)

    def test_target_at_zero(self, cfg_a):
        with pytest.raises(TargetAtZero):
            normal_form(cfg_a, ProjectivePoint([0, 1, 2, 3]), [1, 4])

    def test_inconsistent(self, cfg_a):
        # three targets, one complex parameter, generic values
        with pytest.raises(Inconsistent):
            normal_form(cfg_a, ProjectivePoint([2, 5, 7, 1]), [1, 2, 4])

    @pytest.mark.parametrize("seed", range(30))
    def test_roundtrip(self, seed):
        rng = np.random.default_rng(seed)
        m = 1 + seed % 3
        n = 2 * m + 2
        lam = rng.integers(-4, 5, (m, n)) + 1j * rng.integers(-4, 5, (m, n))
        cfg = make_cfg([[GQ(int(x.real), int(x.imag)) for x in row] for row in lam], [])
        targets = sorted(rng.choice(np.arange(1, n + 1), m + 1, replace=False).tolist())
        p = torus_point(rng, n)
        try:
            res = normal_form(cfg, p, targets)
        except Inconsistent:
            pytest.skip("degenerate integer weights")
        np.testing.assert_allclose(res.normalized.coords[[i - 1 for i in targets]], 1, rtol=1e-9)
        assert chordal_distance(act(cfg, res.t, p), res.normalized) < 1e-9


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_action_respects_v_and_e(seed):
    rng = np.random.default_rng(seed)
    cfg = hopf_like(6)
    zeros = {int(i) + 1 for i in np.flatnonzero(rng.random(6) < 0.4)}
    if len(zeros) == 6:
        return
    p = ProjectivePoint(torus_point(rng, 6).coords, zeros)
    q = act(cfg, [complex(*rng.uniform(-1, 1, 2))], p)
    assert point_in_V(cfg, q.zero_support) == point_in_V(cfg, p.zero_support)
