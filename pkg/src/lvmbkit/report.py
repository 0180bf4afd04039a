"""Analysis reports: assembly, JSON encoding and decoding.

Every exact quantity is written as rational pairs ``[num, den]`` (complex
entries as ``[[re_num, re_den], [im_num, im_den]]``), never as decimals.
Matrices carry their shape so empty matrices survive a round trip.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import __version__
from .action_sim import (
    DEFAULT_RANK_TOL,
    DEFAULT_RESIDUAL_TOL,
    ProjectivePoint,
    act,
    chordal_distance,
    group_law_residual,
    local_freeness_check,
    normal_form,
    stabilizer_dim_formula,
)
from .arrangement import k_count, point_in_V
from .config_model import (
    Check,
    LVMBConfig,
    ValidationReport,
    config_from_dict,
    config_to_dict,
    decode_matrix,
    encode_matrix,
    find_admissible_permutation,
    rank_condition_holds,
    validate,
)
from .errors import LVMBError
from .lattice import LatticePresentation, lattice_presentation, lattice_rank_check
from .nvp import BasisCertificate, DeficiencyWitness, NvpDecision, decide_nvp, verify_certificate

ADMISSIBILITY_NOTE = "combinatorially valid, geometric admissibility assumed"


def matrix_to_dict(M) -> dict:
    return {"shape": [M.nrows, M.ncols], "rows": encode_matrix(M)}


def matrix_from_dict(d):
    return decode_matrix(d["rows"], ncols=d["shape"][1])


def nvp_to_dict(d: NvpDecision) -> dict:
    out = {"holds": d.holds, "affine_flag": d.affine_flag, "k": d.k, "nu": d.nu}
    if isinstance(d.evidence, BasisCertificate):
        out["certificate"] = {"indices": list(d.evidence.indices)}
    else:
        w = d.evidence
        out["witness"] = {"capable": list(w.capable), "cardinality": w.cardinality,
                          "required": w.required}
    return out


def nvp_from_dict(d: dict) -> NvpDecision:
    if "certificate" in d:
        ev = BasisCertificate(tuple(d["certificate"]["indices"]))
    else:
        ev = DeficiencyWitness(tuple(d["witness"]["capable"]), d["witness"]["required"])
    return NvpDecision(d["holds"], ev, d["affine_flag"], d["k"], d["nu"])


def lattice_to_dict(p: LatticePresentation) -> dict:
    return {
        "reading": p.reading,
        "order": list(p.order),
        "nu": p.nu,
        "a_matrix": matrix_to_dict(p.a_matrix),
        "b_literal": matrix_to_dict(p.b_literal),
        "b_extended": matrix_to_dict(p.b_extended),
        "b_literal_times_a_inverse": matrix_to_dict(p.product("literal")),
        "quotient_generators": matrix_to_dict(p.quotient_generators),
        "generator_count": p.generator_count,
        "literal_row_count": p.b_literal.nrows,
        "rank_check": lattice_rank_check(p),
    }


def lattice_from_dict(d: dict) -> LatticePresentation:
    return LatticePresentation(
        nu=d["nu"],
        a_matrix=matrix_from_dict(d["a_matrix"]),
        b_literal=matrix_from_dict(d["b_literal"]),
        b_extended=matrix_from_dict(d["b_extended"]),
        quotient_generators=matrix_from_dict(d["quotient_generators"]),
        reading=d["reading"],
        order=tuple(d["order"]),
    )


def validation_from_dict(d: dict) -> ValidationReport:
    checks = tuple(Check(c["name"], c["verdict"], c["detail"]) for c in d["checks"])
    return ValidationReport(checks, dict(d["counts"]), tuple(d["assumed_unverified"]))


@dataclass(frozen=True)
class AnalysisReport:
    config: LVMBConfig
    validation: ValidationReport
    k: int
    nu: int
    nvp: NvpDecision | None = None
    lattice: LatticePresentation | None = None
    action_checks: dict | None = None
    version: str = __version__
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "toolkit": {"name": "lvmb-kit", "version": self.version},
            "note": ADMISSIBILITY_NOTE,
            "seed": self.seed,
            "config": config_to_dict(self.config),
            "validation": self.validation.to_dict(),
            "k": self.k,
            "nu": self.nu,
            "nvp": None if self.nvp is None else nvp_to_dict(self.nvp),
            "lattice": None if self.lattice is None else lattice_to_dict(self.lattice),
            "action_checks": self.action_checks,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisReport":
        return cls(
            config=config_from_dict(d["config"], strict=False),
            validation=validation_from_dict(d["validation"]),
            k=d["k"],
            nu=d["nu"],
            nvp=None if d["nvp"] is None else nvp_from_dict(d["nvp"]),
            lattice=None if d["lattice"] is None else lattice_from_dict(d["lattice"]),
            action_checks=d["action_checks"],
            version=d["toolkit"]["version"],
            seed=d["seed"],
        )


def _random_point(cfg: LVMBConfig, rng: np.random.Generator) -> ProjectivePoint:
    """A random point of V: torus point, sometimes with a few declared zeros."""
    z = rng.uniform(0.5, 2.0, cfg.n) * np.exp(1j * rng.uniform(-np.pi, np.pi, cfg.n))
    if rng.random() < 0.5:
        zeros = {int(i) + 1 for i in np.flatnonzero(rng.random(cfg.n) < 0.3)}
        if zeros and len(zeros) < cfg.n and point_in_V(cfg, zeros):
            return ProjectivePoint(z, zeros)
    return ProjectivePoint(z)


def action_summary(cfg: LVMBConfig, samples: int, seed: int,
                   tol: float = DEFAULT_RESIDUAL_TOL, rank_tol: float = DEFAULT_RANK_TOL,
                   points: list[ProjectivePoint] | None = None) -> dict:
    """Numerical spot-checks of the action at sample points of V."""
    rng = np.random.default_rng(seed)
    if points is None:
        points = [ProjectivePoint(s) for s in cfg.samples]
        points = [p for p in points if point_in_V(cfg, p.zero_support)]
        while len(points) < samples:
            points.append(_random_point(cfg, rng))
    hyper = sorted(cfg.excluded.singletons)
    targets = hyper if hyper else [cfg.n]
    group_res, identity_res, ranks, nf_res = [], [], [], []
    zero_ok = True
    nf_status = "ok"
    nf_dims = set()
    for p in points:
        t1 = rng.uniform(-1, 1, cfg.m) + 1j * rng.uniform(-1, 1, cfg.m)
        t2 = rng.uniform(-1, 1, cfg.m) + 1j * rng.uniform(-1, 1, cfg.m)
        try:
            group_res.append(group_law_residual(cfg, t1, t2, p))
            zero_ok &= act(cfg, t1, p).zero_support == p.zero_support
            identity_res.append(chordal_distance(act(cfg, np.zeros(cfg.m), p), p))
        except LVMBError as exc:
            return {"error": str(exc)}
        if point_in_V(cfg, p.zero_support):
            ranks.append(local_freeness_check(cfg, p, tol=rank_tol))
        if not set(targets) & p.zero_support:
            try:
                res = normal_form(cfg, p, targets, tol=tol)
            except LVMBError as exc:
                nf_status = f"{type(exc).__name__}: {exc}"
                continue
            nf_dims.add(res.solution_space_dim)
            nf_res.append(chordal_distance(act(cfg, res.t, p), res.normalized))
    return {
        "points": len(points),
        "seed": seed,
        "tolerance": tol,
        "group_law_max_residual": max(group_res, default=0.0),
        "group_law_pass": all(r < tol for r in group_res),
        "identity_max_residual": max(identity_res, default=0.0),
        "zero_pattern_preserved": bool(zero_ok),
        "local_freeness_ranks": ranks,
        "locally_free_everywhere": all(r == cfg.m for r in ranks),
        "normal_form": {
            "targets": targets,
            "status": nf_status,
            "roundtrip_max_residual": max(nf_res, default=0.0),
            "solution_space_dims": sorted(nf_dims),
            "formula_dim_m_minus_k_minus_1": stabilizer_dim_formula(cfg),
        },
    }


def build_report(cfg: LVMBConfig, reading: str = "extended", samples: int = 0,
                 seed: int = 0, tol: float = DEFAULT_RESIDUAL_TOL) -> AnalysisReport:
    """Validate, decide the property, compute the lattice; stop early if invalid.

    A configuration without a stored permutation whose identity ordering
    fails the rank condition is reordered with the admissible permutation
    before computing the lattice; the order used is recorded.
    """
    report = validate(cfg)
    k = k_count(cfg)
    if not report.passed:
        return AnalysisReport(cfg, report, k, cfg.nu, seed=seed)
    decision = decide_nvp(cfg)
    lat_cfg = cfg
    if cfg.permutation is None and not rank_condition_holds(cfg):
        lat_cfg = cfg.with_permutation(find_admissible_permutation(cfg))
    lattice = lattice_presentation(lat_cfg, reading)
    actions = action_summary(cfg, samples, seed, tol) if samples or cfg.samples else None
    return AnalysisReport(cfg, report, k, cfg.nu, decision, lattice, actions, seed=seed)


def certificate_payload(cfg: LVMBConfig) -> dict:
    decision = decide_nvp(cfg)
    out = nvp_to_dict(decision)
    if decision.holds:
        out["verified"] = verify_certificate(cfg, decision.evidence)
    return out
