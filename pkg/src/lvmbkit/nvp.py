"""Deciding the non-zero vanishing property, with certificates.

The Lie algebra of G is C^n / W, where W is spanned by the all-ones vector
(projectivization) and the m rows of Lambda.  A coordinate field z_i d/dz_i
descends to the class of e_i.  A set of coordinate fields is independent in
the Lie algebra iff stacking their e_i under a basis of W raises the rank by
the number of fields.

A certificate is a list of nu coordinate indices, each with a nonempty zero
locus, independent modulo W.  When k > m+1 only n - k coordinate fields
vanish anywhere, every vanishing field is a combination of them, and
n - k < nu: that count is the deficiency witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .arrangement import FundamentalField, capable_indices, k_count, vanishing_nonempty
from .config_model import LVMBConfig, validate
from .errors import CertificateImpossible, RelationRankDeficient, ValidationFailed
from .linalg_exact import ExactMatrix, rank

__all__ = [
    "BasisCertificate",
    "DeficiencyWitness",
    "NvpDecision",
    "relation_basis",
    "rank_mod_relations",
    "construct_certificate",
    "verify_certificate",
    "decide_nvp",
]


@dataclass(frozen=True)
class BasisCertificate:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class DeficiencyWitness:
    capable: tuple[int, ...]
    required: int

    @property
    def cardinality(self) -> int:
        return len(self.capable)


@dataclass(frozen=True)
class NvpDecision:
    holds: bool
    evidence: BasisCertificate | DeficiencyWitness
    affine_flag: bool
    k: int
    nu: int

    def __post_init__(self):
        if self.holds != isinstance(self.evidence, BasisCertificate):
            raise ValueError("holds must agree with the evidence type")
        if self.affine_flag and not self.holds:
            raise ValueError("affine flag requires the property to hold")


def relation_basis(cfg: LVMBConfig) -> ExactMatrix:
    """Rows: the all-ones vector, then the m rows of Lambda."""
    ones = ExactMatrix([[1] * cfg.n], ncols=cfg.n)
    return ones.vstack(cfg.lam)


def _unit_rows(n: int, indices: Iterable[int]) -> ExactMatrix:
    return ExactMatrix([[1 if j == i else 0 for j in range(1, n + 1)] for i in indices], ncols=n)


def rank_mod_relations(cfg: LVMBConfig, indices: Iterable[int]) -> int:
    """Dimension of the span of the chosen e_i in C^n / W."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        raise ValueError(f"indices must be distinct: {idx}")
    if any(not 1 <= i <= cfg.n for i in idx):
        raise ValueError(f"indices outside 1..{cfg.n}: {idx}")
    W = relation_basis(cfg)
    base = rank(W)
    if base < cfg.m + 1:
        raise RelationRankDeficient(f"relation space has rank {base} < {cfg.m + 1}")
    if not idx:
        return 0
    return rank(W.vstack(_unit_rows(cfg.n, idx))) - base


def construct_certificate(cfg: LVMBConfig) -> BasisCertificate:
    """Greedy scan of the capable indices in increasing order."""
    nu = cfg.nu
    chosen: list[int] = []
    current = 0
    for i in capable_indices(cfg):
        if current == nu:
            break
        r = rank_mod_relations(cfg, chosen + [i])
        if r > current:
            chosen.append(i)
            current = r
    if current < nu:
        raise CertificateImpossible(
            f"selected {current} independent vanishing fields, need {nu} "
            f"(k={k_count(cfg)}, m+1={cfg.m + 1})"
        )
    return BasisCertificate(tuple(chosen))


def verify_certificate(cfg: LVMBConfig, cert: BasisCertificate, scales=None) -> bool:
    """Re-check a certificate from scratch.

    ``scales`` optionally attaches a nonzero exact factor to each field; the
    support and the rank test must not depend on it.
    """
    idx = list(cert.indices)
    if len(set(idx)) != len(idx) or len(idx) != cfg.nu:
        return False
    if any(not isinstance(i, int) or not 1 <= i <= cfg.n for i in idx):
        return False
    if scales is None:
        scales = [1] * len(idx)
    if len(scales) != len(idx) or any(not c for c in scales):
        return False
    fields = [FundamentalField.coordinate(cfg.n, i, c) for i, c in zip(idx, scales)]
    if not all(vanishing_nonempty(cfg, f) for f in fields):
        return False
    W = relation_basis(cfg)
    stacked = W.vstack(ExactMatrix([f.alpha for f in fields], ncols=cfg.n))
    base = rank(W)
    if base != cfg.m + 1:
        return False
    return rank(stacked) - base == cfg.nu


def decide_nvp(cfg: LVMBConfig) -> NvpDecision:
    """Decide the property; holds iff k <= m+1.

    Raises :class:`ValidationFailed` on an invalid configuration and
    :class:`CertificateImpossible` if the greedy construction stalls although
    k <= m+1 (never the case for validated input).
    """
    report = validate(cfg)
    if not report.passed:
        raise ValidationFailed(report.failed())
    k = k_count(cfg)
    nu = cfg.nu
    if k <= cfg.m + 1:
        cert = construct_certificate(cfg)
        return NvpDecision(True, cert, k == cfg.m + 1, k, nu)
    witness = DeficiencyWitness(capable_indices(cfg), nu)
    return NvpDecision(False, witness, False, k, nu)
