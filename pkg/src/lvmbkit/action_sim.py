"""Floating-point evaluation of the C^m-action on P^{n-1}.

T . [z] = [z_i exp(<Lambda_i, T>)]_i with the bilinear pairing
<Lambda_i, T> = sum_j Lambda[j][i] * T[j].

This is the only module that turns Lambda into floats.  Zero coordinates
are symbolic: a point carries the set of indices declared zero, and the
action never creates or destroys a zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .arrangement import k_count, point_in_V
from .config_model import LVMBConfig
from .errors import ActionOverflow, Inconsistent, PointNotInV, TargetAtZero

__all__ = [
    "DEFAULT_RESIDUAL_TOL",
    "DEFAULT_RANK_TOL",
    "ProjectivePoint",
    "GroupElement",
    "NormalFormResult",
    "lambda_float",
    "act",
    "chordal_distance",
    "group_law_residual",
    "local_freeness_check",
    "normal_form",
    "stabilizer_dim_formula",
]

DEFAULT_RESIDUAL_TOL = 1e-9
DEFAULT_RANK_TOL = 1e-8

# exp(x) loses all precision (subnormal) below about -708
_EXP_MIN = -708.0


class ProjectivePoint:
    """Homogeneous coordinates plus the declared zero set (1-based)."""

    __slots__ = ("coords", "zero_support")

    def __init__(self, coords: Iterable[complex], zero_support: Iterable[int] | None = None):
        z = np.array(list(coords), dtype=complex)
        if zero_support is None:
            zeros = frozenset(int(i) + 1 for i in np.flatnonzero(z == 0))
        else:
            zeros = frozenset(zero_support)
            if not zeros <= frozenset(range(1, len(z) + 1)):
                raise ValueError("zero_support indices out of range")
            mask = np.array([i + 1 in zeros for i in range(len(z))], dtype=bool)
            z[mask] = 0
            if np.any(z[~mask] == 0):
                raise ValueError("a coordinate outside zero_support is exactly zero")
        if len(zeros) == len(z):
            raise ValueError("all coordinates are zero")
        if not np.all(np.isfinite(z)):
            raise ValueError("non-finite coordinate")
        self.coords = z
        self.zero_support = zeros

    @property
    def n(self) -> int:
        return len(self.coords)

    def __repr__(self):
        return f"ProjectivePoint({self.coords.tolist()}, zeros={sorted(self.zero_support)})"


@dataclass(frozen=True)
class GroupElement:
    t: tuple[complex, ...]

    def __post_init__(self):
        t = tuple(complex(x) for x in self.t)
        if not all(np.isfinite(x) for x in t):
            raise ValueError("group element entries must be finite")
        object.__setattr__(self, "t", t)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.t, dtype=complex)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(a + b for a, b in zip(self.t, other.t)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple(-a for a in self.t))

    @classmethod
    def zero(cls, m: int) -> "GroupElement":
        return cls((0j,) * m)


@dataclass(frozen=True)
class NormalFormResult:
    t: GroupElement
    normalized: ProjectivePoint
    solution_space_dim: int
    residual: float
    reference: int


def lambda_float(cfg: LVMBConfig) -> np.ndarray:
    """Lambda as an m x n complex array."""
    return np.array([[complex(x) for x in row] for row in cfg.lam.rows], dtype=complex).reshape(cfg.m, cfg.n)


def _as_group_element(t) -> GroupElement:
    return t if isinstance(t, GroupElement) else GroupElement(tuple(t))


def act(cfg: LVMBConfig, t, p: ProjectivePoint) -> ProjectivePoint:
    """Apply T to [z]; the result keeps the declared zero set exactly."""
    t = _as_group_element(t)
    if len(t.t) != cfg.m or p.n != cfg.n:
        raise ValueError("dimension mismatch between config, group element and point")
    expo = t.array @ lambda_float(cfg) if cfg.m else np.zeros(cfg.n, dtype=complex)
    live = np.array([i + 1 not in p.zero_support for i in range(cfg.n)])
    if not np.all(np.isfinite(expo)):
        raise ActionOverflow("non-finite exponent")
    # projective rescaling by the largest live exponent keeps results in range
    expo = expo - expo.real[live].max()
    if np.any(expo.real[live] < _EXP_MIN):
        raise ActionOverflow(
            f"exponent spread {-(expo.real[live].min()):.3g} exceeds double precision range"
        )
    out = np.zeros(cfg.n, dtype=complex)
    out[live] = p.coords[live] * np.exp(expo[live])
    if np.any(out[live] == 0) or not np.all(np.isfinite(out)):
        raise ActionOverflow("coordinate left the floating-point range")
    return ProjectivePoint(out, p.zero_support)


def chordal_distance(p: ProjectivePoint | np.ndarray, q: ProjectivePoint | np.ndarray) -> float:
    """Fubini-Study chordal distance |p ^ q| / (|p| |q|), in [0, 1]."""
    a = p.coords if isinstance(p, ProjectivePoint) else np.asarray(p, dtype=complex)
    b = q.coords if isinstance(q, ProjectivePoint) else np.asarray(q, dtype=complex)
    a = a / np.abs(a).max()
    b = b / np.abs(b).max()
    wedge = np.outer(a, b) - np.outer(b, a)
    # wedge is antisymmetric: sum over all (i, j) counts each pair twice
    num = np.sqrt(0.5 * np.sum(np.abs(wedge) ** 2))
    return float(num / (np.linalg.norm(a) * np.linalg.norm(b)))


def group_law_residual(cfg: LVMBConfig, t1, t2, p: ProjectivePoint) -> float:
    """Distance between (t1 + t2).p and t1.(t2.p)."""
    t1, t2 = _as_group_element(t1), _as_group_element(t2)
    return chordal_distance(act(cfg, t1 + t2, p), act(cfg, t1, act(cfg, t2, p)))


def local_freeness_check(cfg: LVMBConfig, p: ProjectivePoint, tol: float = DEFAULT_RANK_TOL) -> int:
    """Numerical rank of xi_1..xi_m at p, in the chart of the largest coordinate."""
    if not point_in_V(cfg, p.zero_support):
        raise PointNotInV(f"zero pattern {sorted(p.zero_support)} lies in E")
    if cfg.m == 0:
        return 0
    lam = lambda_float(cfg)
    ref = int(np.argmax(np.abs(p.coords)))
    u = p.coords / p.coords[ref]
    others = [i for i in range(cfg.n) if i != ref]
    M = (lam[:, others] - lam[:, [ref]]) * u[others]
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def normal_form(
    cfg: LVMBConfig,
    p: ProjectivePoint,
    targets: Sequence[int],
    reference: int | None = None,
    tol: float = DEFAULT_RESIDUAL_TOL,
) -> NormalFormResult:
    """Find T moving every target coordinate to 1 (relative to ``reference``).

    Solves <Lambda_i - Lambda_ref, T> = log(z_ref / z_i) for the other targets
    in the least-squares sense with the principal logarithm.  ``reference``
    defaults to the largest target index.
    """
    targets = sorted(set(targets))
    if not targets:
        raise ValueError("need at least one target coordinate")
    if reference is None:
        reference = targets[-1]
    if reference not in targets:
        raise ValueError("reference must be one of the targets")
    zeros = [i for i in targets if i in p.zero_support]
    if zeros:
        raise TargetAtZero(f"targets {zeros} are declared zero")
    lam = lambda_float(cfg)
    rest = [i for i in targets if i != reference]
    z = p.coords
    rhs = np.array([np.log(z[reference - 1] / z[i - 1]) for i in rest], dtype=complex)
    M = np.array([lam[:, i - 1] - lam[:, reference - 1] for i in rest], dtype=complex).reshape(len(rest), cfg.m)
    if rest and cfg.m:
        T, _, rank, _ = np.linalg.lstsq(M, rhs, rcond=None)
    else:
        T, rank = np.zeros(cfg.m, dtype=complex), 0
    residual = float(np.linalg.norm(M @ T - rhs)) if rest else 0.0
    if residual > tol * max(1.0, float(np.linalg.norm(rhs)) if rest else 1.0):
        raise Inconsistent(f"least-squares residual {residual:.3g} above tolerance")
    g = GroupElement(tuple(T))
    moved = act(cfg, g, p)
    normalized = ProjectivePoint(moved.coords / moved.coords[reference - 1], p.zero_support)
    return NormalFormResult(g, normalized, cfg.m - int(rank), residual, reference)


def stabilizer_dim_formula(cfg: LVMBConfig) -> int:
    """m - k - 1, the naive count of the normalizing ambiguity (may be negative)."""
    return cfg.m - k_count(cfg) - 1
