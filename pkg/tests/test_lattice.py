import random

import numpy as np
import pytest

from conftest import make_cfg
from lvmbkit.action_sim import ProjectivePoint, act
from lvmbkit.config_model import rank_condition_holds
from lvmbkit.errors import SingularA
from lvmbkit.generators import hopf_like, random_config
from lvmbkit.lattice import (
    LatticePresentation,
    compute_a,
    compute_b,
    lattice_presentation,
    lattice_rank_check,
)
from lvmbkit.linalg_exact import ExactMatrix, GaussianRational as GQ


def test_compute_a(cfg_a):
    assert compute_a(cfg_a) == ExactMatrix([[1]])
    cfg = make_cfg([[0, 1, 0, 5, 6], [0, 0, 1, 7, 8]], [])
    assert compute_a(cfg) == ExactMatrix.identity(2)
    with pytest.raises(SingularA):
        compute_a(make_cfg([[1, 1, 3, 0]], []))


def test_compute_b(cfg_a):
    assert compute_b(cfg_a, "literal") == ExactMatrix([[2]])
    assert compute_b(cfg_a, "extended") == ExactMatrix([[2], [-1]])
    empty = compute_b(make_cfg([[1, 2, 0]], []), "literal")
    assert empty.shape == (0, 1)
    with pytest.raises(ValueError):
        compute_b(cfg_a, "verbatim")


def test_presentation_cfg_a(cfg_a):
    p = lattice_presentation(cfg_a)
    assert p.nu == 2 and p.generator_count == 3
    assert p.generators() == [(1, 0), (0, 1), (2, -1)]
    assert p.b_literal.nrows == 1
    assert p.product("literal") == ExactMatrix([[2]])


def test_presentation_smallest_shape():
    p = lattice_presentation(make_cfg([[1, 2, 0]], []))
    assert p.nu == 1
    assert p.generators() == [(1,), (-1,)]


def test_presentation_uses_permutation():
    cfg = make_cfg([[1, 1, 2, 0]], [], permutation=(1, 3, 2, 4))
    p = lattice_presentation(cfg)
    assert p.a_matrix == ExactMatrix([[1]])
    assert p.b_extended == ExactMatrix([[0], [-1]])
    assert p.order == (1, 3, 2, 4)


def test_singular_a():
    with pytest.raises(SingularA):
        lattice_presentation(make_cfg([[1, 1, 3, 0]], []))


def test_rank_check_cfg_a_is_false(cfg_a):
    # all generators are real: e1, e2, (2, -1) span only R^2 inside R^4
    assert not lattice_rank_check(lattice_presentation(cfg_a))


def test_rank_check_complex():
    cfg = make_cfg([[1, GQ(0, 1), 3, GQ(2, 5)]], [])
    assert lattice_rank_check(lattice_presentation(cfg))


def test_rank_check_repeated_column():
    gens = ExactMatrix([[1, 0, 1], [0, 1, 0]])
    p = LatticePresentation(2, ExactMatrix([[1]]), ExactMatrix([[0]]), ExactMatrix([[0], [0]]), gens)
    assert not lattice_rank_check(p)


@pytest.mark.parametrize("n", range(4, 9))
def test_hopf_like_generators_are_real(n):
    p = lattice_presentation(hopf_like(n))
    assert all(x.is_real() for g in p.generators() for x in g)
    assert not lattice_rank_check(p)


@pytest.mark.parametrize("seed", range(25))
def test_rank_check_invariances(seed):
    rng = random.Random(seed)
    m = 1 + seed % 2
    cfg = random_config(rng.randint(2 * m + 1, 8), m, 0, seed)
    p = lattice_presentation(cfg)
    verdict = lattice_rank_check(p)
    cols = p.generators()
    rng.shuffle(cols)
    flip = rng.randrange(len(cols))
    cols[flip] = tuple(-x for x in cols[flip])
    gens = ExactMatrix(list(zip(*cols)), ncols=len(cols))
    q = LatticePresentation(p.nu, p.a_matrix, p.b_literal, p.b_extended, gens)
    assert lattice_rank_check(q) == verdict


@pytest.mark.parametrize("seed", range(40))
def test_no_singular_a_under_rank_condition(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    cfg = random_config(rng.randint(2 * m + 1, 9), m, 0, seed)
    assert rank_condition_holds(cfg)
    p = lattice_presentation(cfg)
    assert p.generator_count == cfg.n - 1
    assert p.b_literal.nrows == cfg.n - cfg.m - 2


def _quotient_coords(cfg, p, z):
    """log coordinates relative to z_1 (in the config's order), with the head killed by T."""
    order = [i - 1 for i in cfg.order]
    w = np.log(z[order[1:]] / z[order[0]])
    head, tail = w[: cfg.m], w[cfg.m:]
    BAinv = np.array([[complex(x) for x in row] for row in p.product("extended").rows]).reshape(p.nu, cfg.m)
    return tail - BAinv @ head


@pytest.mark.parametrize("seed", range(15))
def test_coordinates_invariant_modulo_lattice(seed):
    """The action moves quotient coordinates only by 2*pi*i times lattice vectors."""
    rng = np.random.default_rng(seed)
    m = 1 + seed % 3
    cfg = random_config(2 * m + 1 + seed % 3, m, 0, seed)
    p = lattice_presentation(cfg)
    gens = np.array([[complex(x) for x in row] for row in p.quotient_generators.rows])
    real_gens = np.vstack([gens.real, gens.imag])
    z = ProjectivePoint(rng.uniform(0.5, 2, cfg.n) * np.exp(1j * rng.uniform(-3, 3, cfg.n)))
    t = rng.uniform(-2, 2, m) + 1j * rng.uniform(-2, 2, m)
    diff = (_quotient_coords(cfg, p, act(cfg, t, z).coords) - _quotient_coords(cfg, p, z.coords)) / (2j * np.pi)
    coeffs, *_ = np.linalg.lstsq(real_gens, np.concatenate([diff.real, diff.imag]), rcond=None)
    np.testing.assert_allclose(real_gens @ coeffs, np.concatenate([diff.real, diff.imag]), atol=1e-9)
    np.testing.assert_allclose(coeffs, np.round(coeffs), atol=1e-8)
