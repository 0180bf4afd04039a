"""Command-line interface: ``lvmb validate|analyze|certify|orbit|gen``.

Exit codes: 0 success, 1 semantic failure, 2 input error.  Every command
prints one JSON document on standard output.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .action_sim import DEFAULT_RANK_TOL, DEFAULT_RESIDUAL_TOL, ProjectivePoint
from .arrangement import point_in_V
from .config_model import config_to_dict, parse_config, validate
from .errors import (
    CertificateImpossible,
    ConfigSyntaxError,
    DomainError,
    LVMBError,
    ParamsOutOfRange,
    ValidationFailed,
)
from .generators import FAMILIES, generate
from .lattice import READINGS
from .report import ADMISSIBILITY_NOTE, action_summary, build_report, certificate_payload

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _emit(doc, out=None) -> None:
    out = out or sys.stdout
    json.dump(doc, out, indent=2)
    out.write("\n")


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigSyntaxError(f"cannot read {path}: {exc}") from None
    return parse_config(text, strict=False)


def _input_error(exc: Exception) -> int:
    _emit({"error": type(exc).__name__, "detail": str(exc)})
    return EXIT_INPUT


def cmd_validate(path: str) -> int:
    try:
        cfg = _load(path)
    except (ConfigSyntaxError, DomainError) as exc:
        return _input_error(exc)
    report = validate(cfg)
    _emit(report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAILED


def _analyze_one(path: str, reading: str, samples: int, seed: int, tol: float):
    try:
        cfg = _load(path)
    except (ConfigSyntaxError, DomainError) as exc:
        return EXIT_INPUT, {"error": type(exc).__name__, "detail": str(exc)}
    try:
        rep = build_report(cfg, reading=reading, samples=samples, seed=seed, tol=tol)
    except LVMBError as exc:
        return EXIT_FAILED, {"error": type(exc).__name__, "detail": str(exc)}
    return (EXIT_OK if rep.validation.passed else EXIT_FAILED), rep.to_dict()


def cmd_analyze(path: str | None, reading: str = "extended", samples: int = 0, seed: int = 0,
                tol: float = DEFAULT_RESIDUAL_TOL, batch: str | None = None) -> int:
    if batch is None:
        code, doc = _analyze_one(path, reading, samples, seed, tol)
        _emit(doc)
        return code
    files = sorted(str(p) for p in Path(batch).glob("*.json"))
    if not files:
        return _input_error(ConfigSyntaxError(f"no *.json files in {batch}"))
    with ProcessPoolExecutor() as pool:
        futures = [pool.submit(_analyze_one, f, reading, samples, seed, tol) for f in files]
        results = [f.result() for f in futures]
    _emit({f: {"exit": code, "report": doc} for f, (code, doc) in zip(files, results)})
    return max(code for code, _ in results)


def cmd_certify(path: str) -> int:
    try:
        cfg = _load(path)
    except (ConfigSyntaxError, DomainError) as exc:
        return _input_error(exc)
    try:
        payload = certificate_payload(cfg)
    except (ValidationFailed, CertificateImpossible) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_FAILED
    _emit(payload)
    return EXIT_OK if payload.get("verified", True) else EXIT_FAILED


def _parse_point(text: str, n: int) -> ProjectivePoint:
    try:
        coords = [complex(s.strip().replace(" ", "")) for s in text.split(",")]
    except ValueError:
        raise ConfigSyntaxError(f"bad point {text!r}; expected comma-separated complex numbers") from None
    if len(coords) != n:
        raise DomainError(f"point has {len(coords)} coordinates, expected {n}")
    try:
        return ProjectivePoint(coords)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def cmd_orbit(path: str, samples: int = 16, seed: int = 0, tol: float = DEFAULT_RESIDUAL_TOL,
              rank_tol: float = DEFAULT_RANK_TOL, points: list[str] | None = None) -> int:
    try:
        cfg = _load(path)
        pts = [_parse_point(p, cfg.n) for p in points or []]
    except (ConfigSyntaxError, DomainError) as exc:
        return _input_error(exc)
    outside = [sorted(p.zero_support) for p in pts if not point_in_V(cfg, p.zero_support)]
    if outside:
        return _input_error(DomainError(f"points with zero patterns {outside} are not in V"))
    if pts:
        summary = action_summary(cfg, len(pts), seed, tol, rank_tol, points=pts)
    else:
        summary = action_summary(cfg, samples, seed, tol, rank_tol)
    _emit(summary)
    if "error" in summary:
        return EXIT_FAILED
    ok = summary["group_law_pass"] and summary["zero_pattern_preserved"]
    return EXIT_OK if ok else EXIT_FAILED


def cmd_gen(family: str, n: int, m: int = 1, k: int = 0, seed: int = 0) -> int:
    try:
        cfg = generate(family, n, m, k, seed)
    except ParamsOutOfRange as exc:
        return _input_error(exc)
    doc = config_to_dict(cfg)
    _emit(doc)
    print(f"# {family}: {ADMISSIBILITY_NOTE}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lvmb", description="Exact analysis of LVMB configurations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run the validity checks")
    p.add_argument("file")

    p = sub.add_parser("analyze", help="full analysis report")
    p.add_argument("file", nargs="?")
    p.add_argument("--samples", type=int, default=0, help="number of action spot-check points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_RESIDUAL_TOL)
    p.add_argument("--reading", choices=READINGS, default="extended")
    p.add_argument("--batch", metavar="DIR", help="analyze every *.json in DIR in parallel")

    p = sub.add_parser("certify", help="certificate or deficiency witness only")
    p.add_argument("file")

    p = sub.add_parser("orbit", help="numerical checks of the action")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_RESIDUAL_TOL)
    p.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL)
    p.add_argument("--point", action="append",
                   help="sample point as comma-separated complex numbers, e.g. '1,2j,1+1j,1'")

    p = sub.add_parser("gen", help="emit an example configuration")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate(args.file)
    if args.command == "analyze":
        if (args.file is None) == (args.batch is None):
            return _input_error(ConfigSyntaxError("give exactly one of FILE or --batch DIR"))
        return cmd_analyze(args.file, args.reading, args.samples, args.seed, args.tol, args.batch)
    if args.command == "certify":
        return cmd_certify(args.file)
    if args.command == "orbit":
        return cmd_orbit(args.file, args.samples, args.seed, args.tol, args.rank_tol, args.point)
    return cmd_gen(args.family, args.n, args.m, args.k, args.seed)


if __name__ == "__main__":
    sys.exit(main())
