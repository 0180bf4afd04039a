"""Built-in configuration families for ``lvmb gen`` and the test suites.

All families are combinatorially valid (they pass :func:`validate`); the
geometric admissibility of the excluded set is assumed, never proven.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .config_model import (
    LVMBConfig,
    SubspaceFamily,
    find_admissible_permutation,
    full_rank_check,
    hyperplane_general_position,
    rank_condition_holds,
)
from .errors import ParamsOutOfRange
from .linalg_exact import ExactMatrix, GaussianRational

__all__ = ["FAMILIES", "MAX_N", "MAX_M", "hopf_like", "torus_free", "random_config",
           "random_lambda", "random_antichain", "generate"]

FAMILIES = ("hopf_like", "torus_free", "random")
MAX_N = 16
MAX_M = 4
_MAX_TRIES = 1000


def _check_params(n: int, m: int, k: int = 0) -> None:
    if not (1 <= m <= MAX_M and n <= MAX_N and n > 2 * m):
        raise ParamsOutOfRange(f"need 1 <= m <= {MAX_M}, 2m < n <= {MAX_N}; got n={n}, m={m}")
    if not 0 <= k <= n:
        raise ParamsOutOfRange(f"need 0 <= k <= n, got k={k}")


def hopf_like(n: int) -> LVMBConfig:
    """m = 1, Lambda = (1, 2, ..., n-1, 0), E generated by {n} and {1..n-1}."""
    _check_params(n, 1)
    lam = ExactMatrix([list(range(1, n)) + [0]], ncols=n)
    excluded = SubspaceFamily((frozenset({n}), frozenset(range(1, n))))
    return LVMBConfig(n, 1, lam, excluded)


def random_lambda(n: int, m: int, rng: random.Random, spread: int = 9, max_den: int = 4,
                  complex_entries: bool = True) -> ExactMatrix:
    """Uniform small Gaussian rationals; no rank condition is imposed."""
    def entry():
        re = Fraction(rng.randint(-spread, spread), rng.randint(1, max_den))
        im = Fraction(rng.randint(-spread, spread), rng.randint(1, max_den)) if complex_entries else 0
        return GaussianRational(re, im)

    return ExactMatrix([[entry() for _ in range(n)] for _ in range(m)], ncols=n)


def random_antichain(indices, rng: random.Random, max_generators: int = 2) -> list[frozenset[int]]:
    """A few random subsets of size >= 2 drawn from ``indices``."""
    pool = sorted(indices)
    if len(pool) < 2:
        return []
    gens = []
    for _ in range(rng.randint(0, max_generators)):
        size = rng.randint(2, len(pool))
        gens.append(frozenset(rng.sample(pool, size)))
    return gens


def _finish(n: int, m: int, excluded: SubspaceFamily, rng: random.Random) -> LVMBConfig:
    for _ in range(_MAX_TRIES):
        cfg = LVMBConfig(n, m, random_lambda(n, m, rng), excluded)
        if full_rank_check(cfg) and hyperplane_general_position(cfg):
            if not rank_condition_holds(cfg):
                cfg = cfg.with_permutation(find_admissible_permutation(cfg))
            return cfg
    raise RuntimeError("could not sample a full-rank Lambda")  # pragma: no cover


def random_config(n: int, m: int, k: int, seed: int) -> LVMBConfig:
    """Random Lambda with exactly k excluded hyperplanes plus random larger generators."""
    _check_params(n, m, k)
    rng = random.Random(seed)
    hyper = sorted(rng.sample(range(1, n + 1), k))
    rest = [i for i in range(1, n + 1) if i not in hyper]
    gens = [frozenset({i}) for i in hyper] + random_antichain(rest, rng)
    return _finish(n, m, SubspaceFamily(tuple(gens)), rng)


def torus_free(n: int, m: int, seed: int) -> LVMBConfig:
    """Random Lambda with an empty excluded family (k = 0)."""
    _check_params(n, m)
    return _finish(n, m, SubspaceFamily(), random.Random(seed))


def generate(family: str, n: int, m: int = 1, k: int = 0, seed: int = 0) -> LVMBConfig:
    if family == "hopf_like":
        return hopf_like(n)
    if family == "torus_free":
        return torus_free(n, m, seed)
    if family == "random":
        return random_config(n, m, k, seed)
    raise ParamsOutOfRange(f"unknown family {family!r}; choose from {FAMILIES}")
