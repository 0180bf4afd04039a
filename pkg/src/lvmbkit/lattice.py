"""Lattice presentation of the abelian group G.

With the columns in the order fixed by the configuration's permutation,
write Lambda_1, ..., Lambda_n for the weight vectors and set

    A = rows Lambda_{j+1} - Lambda_1,        j = 1..m        (m x m)
    B = rows Lambda_{m+1+j} - Lambda_1,      j = 1..nu       (nu x m)

Using T to kill the first m log-coordinates (relative to z_1) leaves nu
coordinates, and the lattice 2*pi*i Z^{n-1} descends to the subgroup of C^nu
generated by the columns of [Id_nu | B A^{-1}] (up to the common factor
2*pi*i and signs, which change neither the subgroup's rank nor its span).

The "literal" B stops at Lambda_{n-1} and has nu - 1 rows; it is kept for
reference but cannot be assembled with Id_nu, so generators always come
from the "extended" B that runs through Lambda_n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config_model import LVMBConfig
from .errors import SingularA, SingularMatrixError
from .linalg_exact import ExactMatrix, GaussianRational, inverse, rank

__all__ = [
    "READINGS",
    "LatticePresentation",
    "compute_a",
    "compute_b",
    "lattice_presentation",
    "real_coordinates",
    "lattice_rank_check",
]

READINGS = ("literal", "extended")


def _ordered_columns(cfg: LVMBConfig) -> list[tuple[GaussianRational, ...]]:
    return [cfg.column(i) for i in cfg.order]


def _difference_rows(cols, start: int, stop: int, m: int) -> ExactMatrix:
    base = cols[0]
    rows = [[a - b for a, b in zip(cols[j], base)] for j in range(start, stop)]
    return ExactMatrix(rows, ncols=m)


def compute_a(cfg: LVMBConfig) -> ExactMatrix:
    """m x m matrix with rows Lambda_{j+1} - Lambda_1; raises SingularA if singular."""
    cols = _ordered_columns(cfg)
    A = _difference_rows(cols, 1, cfg.m + 1, cfg.m)
    if rank(A) < cfg.m:
        raise SingularA(f"A has rank {rank(A)} < m={cfg.m} for column order {list(cfg.order)}")
    return A


def compute_b(cfg: LVMBConfig, reading: str = "extended") -> ExactMatrix:
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}, got {reading!r}")
    cols = _ordered_columns(cfg)
    stop = cfg.n - 1 if reading == "literal" else cfg.n
    return _difference_rows(cols, cfg.m + 1, max(stop, cfg.m + 1), cfg.m)


@dataclass(frozen=True)
class LatticePresentation:
    nu: int
    a_matrix: ExactMatrix
    b_literal: ExactMatrix
    b_extended: ExactMatrix
    quotient_generators: ExactMatrix  # nu x (n-1), columns are generators
    reading: str = "extended"
    order: tuple[int, ...] = ()

    @property
    def b_matrix(self) -> ExactMatrix:
        return self.b_literal if self.reading == "literal" else self.b_extended

    @property
    def generator_count(self) -> int:
        return self.quotient_generators.ncols

    def generators(self) -> list[tuple[GaussianRational, ...]]:
        return [self.quotient_generators.column(j) for j in range(self.generator_count)]

    def product(self, reading: str | None = None) -> ExactMatrix:
        """B A^{-1} under the given reading (default: the recorded one)."""
        B = self.b_literal if (reading or self.reading) == "literal" else self.b_extended
        return B @ inverse(self.a_matrix)


def lattice_presentation(cfg: LVMBConfig, reading: str = "extended") -> LatticePresentation:
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}, got {reading!r}")
    A = compute_a(cfg)
    try:
        A_inv = inverse(A)
    except SingularMatrixError as exc:  # rank check above makes this unreachable
        raise SingularA(str(exc)) from None
    b_lit = compute_b(cfg, "literal")
    b_ext = compute_b(cfg, "extended")
    gens = ExactMatrix.identity(cfg.nu).hstack(b_ext @ A_inv)
    return LatticePresentation(cfg.nu, A, b_lit, b_ext, gens, reading, cfg.order)


def real_coordinates(gens: ExactMatrix) -> ExactMatrix:
    """Stack real parts over imaginary parts: a 2nu x (n-1) rational matrix."""
    re = [[x.re for x in row] for row in gens.rows]
    im = [[x.im for x in row] for row in gens.rows]
    return ExactMatrix(re + im, ncols=gens.ncols)


def lattice_rank_check(p: LatticePresentation) -> bool:
    """The n-1 generators are R-linearly independent in C^nu = R^{2nu}."""
    assert p.generator_count <= 2 * p.nu, "n - 1 <= 2nu follows from n > 2m"
    return rank(real_coordinates(p.quotient_generators)) == p.generator_count
