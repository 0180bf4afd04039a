"""LVMB configuration data, its JSON document format, and validity checks.

A configuration is (n, m, Lambda, E): Lambda is an m x n matrix whose i-th
column is the weight vector of the homogeneous coordinate z_i, and E is the
excluded union of coordinate subspaces, stored as the minimal antichain of
index sets S (each S standing for the subspace {z_i = 0 for i in S}).
All indices are 1-based, as in the document format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ConfigSyntaxError, DomainError, NoAdmissiblePermutation
from .linalg_exact import ExactMatrix, GaussianRational, rank

__all__ = [
    "SubspaceFamily",
    "LVMBConfig",
    "Check",
    "ValidationReport",
    "parse_config",
    "serialize_config",
    "config_to_dict",
    "config_from_dict",
    "rank_condition_holds",
    "full_rank_check",
    "find_admissible_permutation",
    "hyperplane_general_position",
    "validate",
    "encode_entry",
    "decode_entry",
    "encode_matrix",
    "decode_matrix",
]

UNVERIFIED_ASSUMPTIONS = (
    "the C^m-action on V is free",
    "the C^m-action on V is proper",
    "the excluded family E yields a compact quotient",
)


def _generator_key(g: frozenset[int]) -> tuple:
    return (len(g), tuple(sorted(g)))


def minimal_antichain(sets: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    """Drop duplicates and every set that contains another one."""
    uniq = sorted({frozenset(s) for s in sets}, key=_generator_key)
    kept: list[frozenset[int]] = []
    for s in uniq:
        # sorted by size, so any subset of s is already in kept
        if not any(g <= s for g in kept):
            kept.append(s)
    return tuple(kept)


@dataclass(frozen=True)
class SubspaceFamily:
    """Minimal antichain of index sets generating the excluded set E.

    Construction canonicalizes: duplicates and non-minimal sets are removed
    and generators are ordered by (size, sorted indices).
    """

    generators: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        gens = [frozenset(g) for g in self.generators]
        if any(not g for g in gens):
            raise DomainError("excluded generators must be nonempty")
        for g in gens:
            for i in g:
                if not isinstance(i, int) or isinstance(i, bool):
                    raise DomainError(f"index {i!r} is not an integer")
        object.__setattr__(self, "generators", minimal_antichain(gens))

    @property
    def singletons(self) -> frozenset[int]:
        return frozenset(next(iter(g)) for g in self.generators if len(g) == 1)

    def is_antichain(self) -> bool:
        gens = self.generators
        return all(
            not (a <= b or b <= a) for i, a in enumerate(gens) for b in gens[i + 1:]
        )

    def indices(self) -> frozenset[int]:
        return frozenset().union(*self.generators) if self.generators else frozenset()

    def as_lists(self) -> list[list[int]]:
        return [sorted(g) for g in self.generators]

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class LVMBConfig:
    """The full input datum.

    ``lam`` has m rows and n columns; column i (0-based i-1) is Lambda_i.
    ``permutation``, when present, lists the original column indices in the
    order used by the rank condition and the lattice presentation.
    ``samples`` are optional floating-point points for the action checks.

    The constructor enforces shapes and index ranges only.  The inequality
    n > 2m is enforced by :func:`parse_config` in strict mode and reported
    by :func:`validate`, so that a bad document can still be diagnosed.
    """

    n: int
    m: int
    lam: ExactMatrix
    excluded: SubspaceFamily = field(default_factory=SubspaceFamily)
    permutation: tuple[int, ...] | None = None
    samples: tuple[tuple[complex, ...], ...] = ()

    def __post_init__(self):
        if self.n < 1 or self.m < 0:
            raise DomainError(f"need n >= 1 and m >= 0, got n={self.n}, m={self.m}")
        if not isinstance(self.lam, ExactMatrix):
            object.__setattr__(self, "lam", ExactMatrix(self.lam, ncols=self.n))
        if self.lam.shape != (self.m, self.n):
            raise DomainError(f"lambda has shape {self.lam.shape}, expected ({self.m}, {self.n})")
        if not isinstance(self.excluded, SubspaceFamily):
            object.__setattr__(self, "excluded", SubspaceFamily(tuple(self.excluded)))
        bad = [i for i in self.excluded.indices() if not 1 <= i <= self.n]
        if bad:
            raise DomainError(f"excluded indices out of range 1..{self.n}: {sorted(bad)}")
        if self.permutation is not None:
            perm = tuple(self.permutation)
            if sorted(perm) != list(range(1, self.n + 1)):
                raise DomainError(f"permutation must reorder 1..{self.n}, got {list(perm)}")
            object.__setattr__(self, "permutation", perm)
        samples = tuple(tuple(complex(z) for z in s) for s in self.samples)
        if any(len(s) != self.n for s in samples):
            raise DomainError(f"every sample needs {self.n} coordinates")
        object.__setattr__(self, "samples", samples)

    @property
    def nu(self) -> int:
        """Complex dimension n - m - 1 of the quotient."""
        return self.n - self.m - 1

    @property
    def order(self) -> tuple[int, ...]:
        """Column order in force: the stored permutation or the identity."""
        return self.permutation if self.permutation is not None else tuple(range(1, self.n + 1))

    def column(self, i: int) -> tuple[GaussianRational, ...]:
        """Lambda_i for a 1-based index i."""
        return self.lam.column(i - 1)

    def bordered(self) -> ExactMatrix:
        """The (m+1) x n matrix with Lambda on top of a row of ones."""
        return self.lam.vstack(ExactMatrix([[1] * self.n], ncols=self.n))

    def with_permutation(self, perm: Sequence[int] | None) -> "LVMBConfig":
        return LVMBConfig(self.n, self.m, self.lam, self.excluded,
                          None if perm is None else tuple(perm), self.samples)


# -- document format ---------------------------------------------------------------

def encode_rational(q: Fraction) -> list[int]:
    return [q.numerator, q.denominator]


def encode_entry(z: GaussianRational) -> list[list[int]]:
    return [encode_rational(z.re), encode_rational(z.im)]


def encode_matrix(M: ExactMatrix) -> list[list[list[list[int]]]]:
    return [[encode_entry(x) for x in row] for row in M.rows]


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _decode_rational(obj, where: str) -> Fraction:
    if _is_int(obj):
        return Fraction(obj)
    if isinstance(obj, list) and len(obj) == 2 and all(_is_int(v) for v in obj):
        if obj[1] == 0:
            raise DomainError(f"zero denominator at {where}")
        return Fraction(obj[0], obj[1])
    raise ConfigSyntaxError(f"bad rational {obj!r} at {where}")


def decode_entry(obj, where: str = "entry") -> GaussianRational:
    """Accepts ``[[rn,rd],[in,id]]`` (canonical), ``[num,den]`` or an int."""
    if isinstance(obj, list) and len(obj) == 2 and all(isinstance(v, list) for v in obj):
        return GaussianRational(_decode_rational(obj[0], where), _decode_rational(obj[1], where))
    return GaussianRational(_decode_rational(obj, where))


def decode_matrix(obj, ncols: int | None = None, where: str = "matrix") -> ExactMatrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ConfigSyntaxError(f"{where} must be an array of rows")
    rows = [[decode_entry(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)]
    try:
        return ExactMatrix(rows, ncols=ncols)
    except ValueError as exc:
        raise DomainError(f"{where}: {exc}") from None


def config_to_dict(cfg: LVMBConfig) -> dict:
    doc = {
        "n": cfg.n,
        "m": cfg.m,
        "lambda": encode_matrix(cfg.lam),
        "excluded": cfg.excluded.as_lists(),
    }
    if cfg.permutation is not None:
        doc["permutation"] = list(cfg.permutation)
    if cfg.samples:
        doc["samples"] = [[[z.real, z.imag] for z in s] for s in cfg.samples]
    return doc


def config_from_dict(doc, strict: bool = True) -> LVMBConfig:
    if not isinstance(doc, dict):
        raise ConfigSyntaxError("configuration must be a JSON object")
    for key in ("n", "m", "lambda", "excluded"):
        if key not in doc:
            raise ConfigSyntaxError(f"missing field {key!r}")
    unknown = set(doc) - {"n", "m", "lambda", "excluded", "permutation", "samples"}
    if unknown:
        raise ConfigSyntaxError(f"unknown fields {sorted(unknown)}")
    n, m = doc["n"], doc["m"]
    if not _is_int(n) or not _is_int(m):
        raise ConfigSyntaxError("n and m must be integers")
    if strict and n <= 2 * m:
        raise DomainError(f"need n > 2m, got n={n}, m={m}")
    lam = decode_matrix(doc["lambda"], where="lambda")
    if lam.nrows == 0:
        lam = ExactMatrix([], ncols=n)
    excluded = doc["excluded"]
    if not isinstance(excluded, list) or not all(
        isinstance(g, list) and all(_is_int(i) for i in g) for g in excluded
    ):
        raise ConfigSyntaxError("excluded must be an array of arrays of integers")
    perm = doc.get("permutation")
    if perm is not None and (not isinstance(perm, list) or not all(_is_int(i) for i in perm)):
        raise ConfigSyntaxError("permutation must be an array of integers")
    samples = doc.get("samples", [])
    try:
        samples = tuple(tuple(complex(re, im) for re, im in s) for s in samples)
    except (TypeError, ValueError):
        raise ConfigSyntaxError("samples must be arrays of [re, im] pairs") from None
    return LVMBConfig(
        n=n,
        m=m,
        lam=lam,
        excluded=SubspaceFamily(tuple(frozenset(g) for g in excluded)),
        permutation=None if perm is None else tuple(perm),
        samples=samples,
    )


def parse_config(text: str, strict: bool = True) -> LVMBConfig:
    """Parse a JSON configuration document into a canonical config.

    Raises :class:`ConfigSyntaxError` for malformed documents and
    :class:`DomainError` for out-of-range values (including n <= 2m when
    ``strict``).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSyntaxError(f"invalid JSON: {exc}") from None
    return config_from_dict(doc, strict=strict)


def serialize_config(cfg: LVMBConfig) -> str:
    return json.dumps(config_to_dict(cfg))


# -- rank conditions ---------------------------------------------------------------

def rank_condition_holds(cfg: LVMBConfig) -> bool:
    """Bordered matrix of the first m+1 columns (in stored order) has rank m+1."""
    if cfg.n < cfg.m + 1:
        return False
    cols = [i - 1 for i in cfg.order[: cfg.m + 1]]
    return rank(cfg.bordered().select_columns(cols)) == cfg.m + 1


def full_rank_check(cfg: LVMBConfig) -> bool:
    """The whole (m+1) x n bordered matrix has rank m+1."""
    return rank(cfg.bordered()) == cfg.m + 1


def find_admissible_permutation(cfg: LVMBConfig) -> tuple[int, ...]:
    """Lexicographically least admissible (m+1)-subset, then the rest in order."""
    B = cfg.bordered()
    size = cfg.m + 1
    for subset in combinations(range(1, cfg.n + 1), size):
        if rank(B.select_columns([i - 1 for i in subset])) == size:
            rest = [i for i in range(1, cfg.n + 1) if i not in subset]
            return tuple(subset) + tuple(rest)
    raise NoAdmissiblePermutation(
        f"no {size} columns of the bordered matrix are independent (full rank fails)"
    )


def hyperplane_general_position(cfg: LVMBConfig) -> bool:
    """Bordered columns of the excluded hyperplanes have rank min(k, m+1).

    This is the nondegeneracy needed to move every excluded-hyperplane
    coordinate to 1 with the action; without it the coordinate fields of the
    remaining indices cannot span the Lie algebra even when k <= m+1.
    """
    hyper = sorted(cfg.excluded.singletons)
    if not hyper:
        return True
    sub = cfg.bordered().select_columns([i - 1 for i in hyper])
    return rank(sub) == min(len(hyper), cfg.m + 1)


@dataclass(frozen=True)
class Check:
    name: str
    verdict: str  # "pass" | "fail"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]
    counts: dict = field(default_factory=dict)
    assumptions: tuple[str, ...] = UNVERIFIED_ASSUMPTIONS

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "failed": self.failed(),
            "checks": [{"name": c.name, "verdict": c.verdict, "detail": c.detail} for c in self.checks],
            "counts": dict(self.counts),
            "assumed_unverified": list(self.assumptions),
        }


def _check(name: str, ok: bool, detail: str = "") -> Check:
    return Check(name, "pass" if ok else "fail", detail)


def validate(cfg: LVMBConfig) -> ValidationReport:
    """Run every structural and rank check; semantic failures are recorded, not raised."""
    n, m = cfg.n, cfg.m
    checks = [
        _check("n>2m", n > 2 * m, f"n={n}, m={m}"),
        _check("lambda_shape", cfg.lam.shape == (m, n), f"{cfg.lam.nrows}x{cfg.lam.ncols}"),
        _check("indices_in_range", all(1 <= i <= n for i in cfg.excluded.indices())),
        _check("antichain", cfg.excluded.is_antichain(), f"{len(cfg.excluded)} generators"),
    ]
    full = full_rank_check(cfg)
    checks.append(_check("full_rank", full, f"rank of bordered matrix vs m+1={m + 1}"))

    if cfg.permutation is not None:
        ok = rank_condition_holds(cfg)
        detail = f"stored permutation {list(cfg.permutation)}"
    elif rank_condition_holds(cfg):
        ok, detail = True, "identity ordering"
    elif full:
        ok, detail = True, f"after permutation {list(find_admissible_permutation(cfg))}"
    else:
        ok, detail = False, "no admissible ordering"
    checks.append(_check("rank_condition", ok, detail))

    k = len(cfg.excluded.singletons)
    checks.append(_check(
        "hyperplane_general_position",
        hyperplane_general_position(cfg),
        f"bordered columns of {k} excluded hyperplanes vs rank {min(k, m + 1)}",
    ))
    counts = {"n": n, "m": m, "k": k, "nu": cfg.nu, "capable": n - k,
              "generators": len(cfg.excluded)}
    return ValidationReport(tuple(checks), counts)
