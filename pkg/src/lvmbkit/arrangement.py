"""Combinatorics of the excluded set E and of vanishing loci in V.

A coordinate subspace {z_i = 0, i in S} lies inside the finite union E
exactly when it lies inside one member, i.e. when some generator G of the
minimal antichain satisfies G <= S.  Everything here reduces to that test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .config_model import LVMBConfig
from .errors import AllCoordinatesZero, EmptySubset, ZeroField
from .linalg_exact import GaussianRational, as_gq

__all__ = [
    "FundamentalField",
    "k_count",
    "capable_indices",
    "subspace_contained_in_E",
    "point_in_V",
    "vanishing_nonempty",
]


@dataclass(frozen=True)
class FundamentalField:
    """The field sum_i alpha_i z_i d/dz_i on P^{n-1}."""

    alpha: tuple[GaussianRational, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(as_gq(a) for a in self.alpha))

    @classmethod
    def coordinate(cls, n: int, i: int, scale=1) -> "FundamentalField":
        """scale * z_i d/dz_i (1-based i)."""
        return cls(tuple(scale if j == i else 0 for j in range(1, n + 1)))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self.alpha, start=1) if a)


def k_count(cfg: LVMBConfig) -> int:
    """Number of coordinate hyperplanes contained in E."""
    return len(cfg.excluded.singletons)


def capable_indices(cfg: LVMBConfig) -> tuple[int, ...]:
    """Indices i whose coordinate field vanishes somewhere on X."""
    hyper = cfg.excluded.singletons
    return tuple(i for i in range(1, cfg.n + 1) if i not in hyper)


def subspace_contained_in_E(cfg: LVMBConfig, subset: Iterable[int]) -> bool:
    s = frozenset(subset)
    if not s:
        raise EmptySubset("subspace index set must be nonempty")
    if not s <= frozenset(range(1, cfg.n + 1)):
        raise ValueError(f"indices outside 1..{cfg.n}: {sorted(s)}")
    return any(g <= s for g in cfg.excluded.generators)


def point_in_V(cfg: LVMBConfig, zero_support: Iterable[int]) -> bool:
    """Membership in V decided from the set of vanishing coordinates."""
    s = frozenset(zero_support)
    if len(s) >= cfg.n and s >= frozenset(range(1, cfg.n + 1)):
        raise AllCoordinatesZero("a projective point needs a nonzero coordinate")
    if not s:
        return True
    return not subspace_contained_in_E(cfg, s)


def vanishing_nonempty(cfg: LVMBConfig, f: FundamentalField) -> bool:
    """Whether the field vanishes at some point of V.

    The zero locus in P^{n-1} is the subspace where every z_i with
    alpha_i != 0 vanishes.  Full support gives the empty projective locus.
    """
    if len(f.alpha) != cfg.n:
        raise ValueError(f"field has {len(f.alpha)} coefficients, expected {cfg.n}")
    supp = f.support
    if not supp:
        raise ZeroField("the zero field vanishes everywhere")
    if len(supp) == cfg.n:
        return False
    return not subspace_contained_in_E(cfg, supp)
