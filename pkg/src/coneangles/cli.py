"""Command-line interface: ``coneangles <subcommand> ...``.

Exit codes: 0 success (all checks passed), 1 a check failed, 2 usage or
input error.  JSON goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import theorems as th
from .angles import cos_dixmier_exact, cos_dixmier_iterative, cos_dixmier_oracle, cos_friedrichs
from .cone import (
    ConeSpec,
    PolyhedralCone,
    cone_from_generators,
    cone_sum,
    dual,
    dumps_json,
    full_space,
    orthogonal_complement,
    polar,
)
from .linalg import EPS
from .projection import project
from .random_cones import RandomConeParams, gen_random_cone

SUITES = ("basic", "subspace_bound", "nested", "hundal", "difference", "kkm", "solmon", "kmperp", "cor_rn")


class InputError(Exception):
    """Bad user input; reported with exit code 2."""


def parse_cone_file(path) -> ConeSpec:
    """Read and validate a cone JSON file ``{"dim": n, "generators": [[...], ...]}``."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read file ({exc.strerror or exc})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
    try:
        return ConeSpec.from_dict(data)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load(path, tol) -> PolyhedralCone:
    spec = parse_cone_file(path)
    try:
        return cone_from_generators(spec, tol)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_vector(text: str, dim: int) -> np.ndarray:
    try:
        vals = [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise InputError(f"cannot parse vector {text!r}") from None
    if len(vals) != dim:
        raise InputError(f"vector has {len(vals)} entries, expected {dim}")
    if not all(np.isfinite(vals)):
        raise InputError("vector has a non-finite entry")
    return np.array(vals)


def _cone_payload(k: PolyhedralCone) -> dict:
    return {
        "dim": k.dim,
        "generators": k.generators.tolist(),
        "halfspaces": k.halfspaces.tolist(),
        "lineality_basis": k.lineality_basis.tolist(),
    }


# ---------------------------------------------------------------------------
# subcommands


def cmd_angle(args) -> tuple[int, dict]:
    k1, k2 = _load(args.a, args.tolerance), _load(args.b, args.tolerance)
    if k1.dim != k2.dim:
        raise InputError(f"dimension mismatch: {k1.dim} vs {k2.dim}")
    if args.kind == "friedrichs":
        if args.method != "exact":
            raise InputError("the Friedrichs angle is only available with --method exact")
        res = cos_friedrichs(k1, k2, args.tolerance)
    elif args.method == "exact":
        res = cos_dixmier_exact(k1, k2, args.tolerance)
    elif args.method == "iterative":
        res, _ = cos_dixmier_iterative(k1, k2)
    else:
        if k1.dim > 4:
            raise InputError("the oracle method supports dimension <= 4")
        res = cos_dixmier_oracle(k1, k2, samples=args.samples)
    out = {"kind": args.kind, **res.to_dict(), "tolerance": args.tolerance}
    return 0, out


def _cmd_transform(args, op) -> tuple[int, dict]:
    k = op(_load(args.a, args.tolerance))
    if args.emit:
        return 0, k.to_spec().to_dict()
    return 0, {**_cone_payload(k), "tolerance": args.tolerance}


def cmd_project(args) -> tuple[int, dict]:
    k = _load(args.a, args.tolerance)
    x = _parse_vector(args.x, k.dim)
    r = project(k, x, args.tolerance)
    q = project(polar(k), x, args.tolerance).point
    return 0, {
        "point": r.point.tolist(),
        "residual": r.residual.tolist(),
        "inner": r.inner,
        "polar_point": q.tolist(),
        "tolerance": args.tolerance,
    }


def _random_pair(dim: int, seed: int, trial: int, pointed: bool = False):
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))
    cones = []
    for _ in range(2):
        p = RandomConeParams(
            dim,
            int(rng.integers(1, min(dim + 2, 5))),
            int(rng.integers(0, 2**63)),
            lineality_dim=0 if pointed else None,
            lattice=bool(rng.random() < 0.3),
        )
        cones.append(gen_random_cone(p))
    return cones[0], cones[1]


def _perp_cone(b: PolyhedralCone, rng: np.random.Generator) -> PolyhedralCone:
    """A random cone inside ``span(B)^perp``."""
    perp = orthogonal_complement(b)
    basis = perp.lineality_basis
    if basis.shape[0] == 0:
        return cone_from_generators([], dim=b.dim)
    gens = rng.standard_normal((int(rng.integers(1, 4)), basis.shape[0])) @ basis
    return cone_from_generators(gens, dim=b.dim)


def run_suite(name: str, k1: PolyhedralCone, k2: PolyhedralCone, rng: np.random.Generator) -> list:
    if name == "basic":
        return th.check_basic_facts(k1, k2, samples=200, seed=int(rng.integers(0, 2**32)))
    if name == "subspace_bound":
        m = gen_random_cone(RandomConeParams(k1.dim, 1, int(rng.integers(0, 2**63)), subspace_mode=True))
        return [th.check_subspace_bound(k1, m, samples=200, seed=int(rng.integers(0, 2**32)))]
    if name == "nested":
        return [th.check_nested(k1, cone_sum(k1, k2))]
    if name == "hundal":
        return [th.check_hundal_extension(k1, k2), th.check_hundal_extension(k1, k2, full_space(k1.dim))]
    if name == "difference":
        return [th.check_difference_lemma(k1, k2)]
    if name == "kkm":
        return [th.check_kkm_conical(k1, k2)]
    if name == "solmon":
        return [th.check_theorem_cEQ(k1, k2)]
    if name == "kmperp":
        return [th.check_lemma_KMperp(_perp_cone(k2, rng), k2)]
    if name == "cor_rn":
        return [th.check_cor_Rn(k1, k2)]
    raise InputError(f"unknown suite {name!r}")


def cmd_verify(args) -> tuple[int, dict]:
    suites = SUITES if args.suite == "all" else (args.suite,)
    reports = []
    if args.a or args.b:
        if not (args.a and args.b):
            raise InputError("--a and --b must be given together")
        k1, k2 = _load(args.a, args.tolerance), _load(args.b, args.tolerance)
        if k1.dim != k2.dim:
            raise InputError(f"dimension mismatch: {k1.dim} vs {k2.dim}")
        rng = np.random.default_rng(args.seed)
        for s in suites:
            reports += [(None, r) for r in run_suite(s, k1, k2, rng)]
    else:
        if not 2 <= args.dim <= 8:
            raise InputError("--dim must be in [2, 8]")
        for t in range(args.trials):
            rng = np.random.default_rng(np.random.SeedSequence(args.seed, spawn_key=(t, 1)))
            for s in suites:
                k1, k2 = _random_pair(args.dim, args.seed, t, pointed=(s == "hundal"))
                reports += [(t, r) for r in run_suite(s, k1, k2, rng)]
    failed = [r for _, r in reports if r.conclusion is False]
    summary = {
        "total": len(reports),
        "passed": sum(r.conclusion is True for _, r in reports),
        "not_applicable": sum(r.conclusion is None for _, r in reports),
        "failed": len(failed),
        "result": "pass" if not failed else "fail",
    }
    shown = reports if not args.summary_only else [(t, r) for t, r in reports if r.conclusion is False]
    out = {
        "suite": args.suite,
        "tolerance": args.tolerance,
        "reports": [{"trial": t, **r.to_dict()} for t, r in shown],
        "summary": summary,
    }
    return (1 if failed else 0), out


def cmd_explore(args) -> tuple[int, dict]:
    if not 2 <= args.dim <= 8:
        raise InputError("--dim must be in [2, 8]")
    if args.trials < 0:
        raise InputError("--trials must be nonnegative")
    return 0, th.explore_open_question(args.dim, args.trials, args.seed)


# ---------------------------------------------------------------------------


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(e, (int, float)) for e in v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.loads(dumps_json(v))}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coneangles", description="Angles between polyhedral convex cones.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=EPS, help="activity/membership tolerance (default 1e-9)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("angle", parents=[common], help="Dixmier or Friedrichs cosine of two cones")
    p.add_argument("--a", required=True, help="first cone JSON file")
    p.add_argument("--b", required=True, help="second cone JSON file")
    p.add_argument("--kind", choices=("dixmier", "friedrichs"), default="dixmier")
    p.add_argument("--method", choices=("exact", "iterative", "oracle"), default="exact")
    p.add_argument("--samples", type=int, default=200_000, help="grid size for --method oracle")
    p.set_defaults(func=cmd_angle)

    for name, op, text in (("polar", polar, "polar cone"), ("dual", dual, "dual cone")):
        p = sub.add_parser(name, parents=[common], help=f"{text} of a cone")
        p.add_argument("--a", required=True, help="cone JSON file")
        p.add_argument("--emit", action="store_true", help="print a cone file instead of a description")
        p.set_defaults(func=lambda args, op=op: _cmd_transform(args, op))

    p = sub.add_parser("project", parents=[common], help="project a point onto a cone and its polar")
    p.add_argument("--a", required=True, help="cone JSON file")
    p.add_argument("--x", required=True, help="comma-separated coordinates")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verify", parents=[common], help="run theorem checks on given or random cones")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--a", help="first cone JSON file")
    p.add_argument("--b", help="second cone JSON file")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--summary-only", action="store_true", help="only print failed reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", parents=[common], help="random search for nonlinear pairs meeting the conical Solmon hypotheses")
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_explore)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.tolerance > 0:
        parser.error("--tolerance must be positive")
    try:
        code, out = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "text":
        print(_text(out))
    else:
        print(dumps_json(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
