"""Command-line front end.

Subcommands:

* ``star eval``  -- evaluate one of the three star products at points.
* ``verify``     -- run the registered verification suites and emit a
  JSON report (byte-identical for a fixed seed unless --timing is on).
* ``rigidity``   -- run an invariance / obstruction experiment from a
  JSON spec file (or one of the bundled named specs).

Exit codes: 0 success / all checks pass, 1 check failures, 2 input or
domain errors, 3 non-convergence, 4 internal errors.  All inputs and
outputs are UTF-8 JSON; complex numbers serialize as [re, im] pairs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from .errors import ConvergenceError, DomainError, WickstarError
from .functions import BiPoly, entire_from_json
from .peschl_minda import ComposedP, ComposedQ, PolyDisk
from .rigidity import (InvarianceExperiment, elliptic_invariant_indices,
                       fpq_on_g, invariant_dimension, obstruction_check)
from .sampling import rng_for, sample_gpoints, sample_omega_points
from .sphere import MoebiusMap
from .star import StarConfig, star_annulus, star_disk, star_punctured
from .suites import SUITES, run_suites

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_NONCONVERGED = 3
EXIT_INTERNAL = 4


def _cpair(x) -> list:
    x = complex(x)
    return [x.real, x.imag]


def _parse_complex(text: str) -> complex:
    v = json.loads(text)
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2:
        return complex(v[0], v[1])
    raise DomainError(f"cannot parse complex number from {text!r}; "
                      "expected a number or [re, im]")


def disk_function_from_json(obj: dict):
    """{"type":"bipoly","coeffs":[[i,j,[re,im]],...]} or a composed form
    {"type":"composed-p"|"composed-q","g":{entire-function}}."""
    kind = obj.get("type")
    if kind == "bipoly":
        d = {}
        for i, j, pair in obj["coeffs"]:
            d[(int(i), int(j))] = complex(pair[0], pair[1])
        return PolyDisk(BiPoly(d))
    if kind == "composed-p":
        return ComposedP(entire_from_json(obj["g"]))
    if kind == "composed-q":
        return ComposedQ(entire_from_json(obj["g"]))
    raise DomainError(f"unknown disk function type {kind!r}")


def _threads_from_env() -> int:
    raw = os.environ.get("WICKSTAR_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"WICKSTAR_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise DomainError("WICKSTAR_THREADS must be >= 1")
    return n


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def cmd_star_eval(args) -> int:
    cfg = StarConfig(max_terms=args.max_terms, tol=args.tol, mode=args.mode)
    h = _parse_complex(args.hbar)
    points = [_parse_complex(p) for p in args.point]
    results = []
    if args.surface == "disk":
        f = disk_function_from_json(json.loads(args.f))
        g = disk_function_from_json(json.loads(args.g))
        for z in points:
            results.append((z, star_disk(f, g, h, z, cfg)))
    else:
        f = entire_from_json(json.loads(args.f))
        g = entire_from_json(json.loads(args.g))
        for w in points:
            if args.surface == "annulus":
                results.append((w, star_annulus(f, g, h, w, cfg)))
            else:
                results.append((w, star_punctured(
                    f, g, h, w, cfg, weight_variant=args.weight_variant)))
    body = {"surface": args.surface, "results": [
        {"point": _cpair(p), "value": _cpair(r.value),
         "terms_used": r.terms_used, "tail_estimate": float(r.tail_estimate),
         "converged": bool(r.converged)} for p, r in results]}
    print(json.dumps(body, indent=2))
    if any(not r.converged for _, r in results):
        return EXIT_NONCONVERGED
    return EXIT_OK


def cmd_verify(args) -> int:
    threads = _threads_from_env()
    names = args.suite if args.suite else None
    report = run_suites(names=names, seed=args.seed, tol=args.tol,
                        mode=args.mode, timing=args.timing,
                        inject_bug=args.inject_bug)
    report["metadata"]["threads"] = threads
    print(json.dumps(report, indent=2))
    if all(c["status"] == "pass" for c in report["checks"]):
        return EXIT_OK
    return EXIT_CHECK_FAILED


def _load_experiment_spec(name_or_path: str) -> dict:
    if os.path.exists(name_or_path):
        with open(name_or_path, encoding="utf-8") as fh:
            return json.load(fh)
    try:
        ref = resources.files("wickstar").joinpath("specs", f"{name_or_path}.json")
        return json.loads(ref.read_text(encoding="utf-8"))
    except (FileNotFoundError, ModuleNotFoundError):
        raise DomainError(f"experiment spec {name_or_path!r} is neither a "
                          "file nor a bundled spec name")


def _two_hyperbolic_generators():
    g1 = MoebiusMap.scaling(2.0)
    shift = MoebiusMap.translation(1.0)
    g2 = shift.compose(g1).compose(shift.inverse())
    return [g1, g2]


def _well_conditioned_gpoints(rng, n, basis, generators, cap=1e3):
    """Sample GPoints on which every basis function (and its moves) stays
    moderate, so rank deficits reflect invariance rather than blow-ups."""
    from .sphere import gamma_hat
    out = []
    while len(out) < n:
        for p in sample_gpoints(rng, 8, spread=1.5, min_sep=0.4):
            try:
                vals = [abs(f(p)) for f in basis]
                for gen in generators:
                    moved = gamma_hat(gen, p)
                    vals += [abs(f(moved)) for f in basis]
            except (DomainError, ZeroDivisionError):
                continue
            if max(vals) <= cap:
                out.append(p)
            if len(out) >= n:
                break
    return out


def cmd_rigidity(args) -> int:
    spec = _load_experiment_spec(args.spec)
    kind = spec.get("experiment")
    if kind == "invariant-dimension":
        if spec.get("generators") != "two-hyperbolic":
            raise DomainError("only the 'two-hyperbolic' generator set is "
                              "bundled in this version")
        generators = _two_hyperbolic_generators()
        d = int(spec.get("degree", 3))
        basis = [fpq_on_g(p, q) for p in range(d + 1) for q in range(d + 1)]
        rng = rng_for(int(spec.get("seed", 0)))
        samples = _well_conditioned_gpoints(
            rng, int(spec.get("samples", 240)), basis, generators)
        exp = InvarianceExperiment(generators, basis, samples,
                                   svd_tol=float(spec.get("svd_tol", 1e-8)))
        dim, svals = invariant_dimension(exp)
        body = {"experiment": kind, "dimension": dim,
                "basis_size": len(basis), "samples": len(samples),
                "singular_values": svals}
        if args.csv:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write("index,singular_value\n")
                for i, s in enumerate(svals):
                    fh.write(f"{i},{s!r}\n")
    elif kind == "elliptic-indices":
        rng = rng_for(int(spec.get("seed", 0)))
        pts = sample_omega_points(rng, int(spec.get("samples", 40)))
        kept = elliptic_invariant_indices(int(spec["n_fold"]),
                                          int(spec.get("degree", 2)), pts,
                                          tol=float(spec.get("tol", 1e-9)))
        body = {"experiment": kind, "n_fold": int(spec["n_fold"]),
                "invariant_indices": [list(k) for k in kept]}
    elif kind == "obstruction":
        hs = [complex(a, b) for a, b in spec["hbar_grid"]]
        rep = obstruction_check(float(spec["R"]), hs, int(spec["degree"]))
        body = {"experiment": kind, "alpha": _cpair(rep.alpha),
                "beta": _cpair(rep.beta), "residuals": rep.residuals,
                "verdict": rep.verdict}
    else:
        raise DomainError(f"unknown experiment kind {kind!r}")
    print(json.dumps(body, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wickstar",
        description="Star products on the disk, annuli and the punctured "
                    "disk: evaluation, verification and rigidity experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_star = sub.add_parser("star", help="star-product operations")
    star_sub = p_star.add_subparsers(dest="star_command", required=True)
    p_eval = star_sub.add_parser("eval", help="evaluate a product at points")
    p_eval.add_argument("--surface", required=True,
                        choices=["disk", "annulus", "punctured"])
    p_eval.add_argument("--f", required=True, help="first operand, JSON")
    p_eval.add_argument("--g", required=True, help="second operand, JSON")
    p_eval.add_argument("--hbar", required=True,
                        help="deformation parameter, number or [re, im]")
    p_eval.add_argument("--point", required=True, action="append",
                        help="evaluation point (repeatable), number or [re, im]")
    p_eval.add_argument("--max-terms", type=int, default=64)
    p_eval.add_argument("--tol", type=float, default=1e-12)
    p_eval.add_argument("--mode", default="truncated",
                        choices=["exact-finite", "truncated"])
    p_eval.add_argument("--weight-variant", default="derived",
                        choices=["derived", "printed"])
    p_eval.set_defaults(func=cmd_star_eval)

    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_verify.add_argument("--suite", action="append",
                          help=f"suite name (repeatable); available: "
                               f"{', '.join(sorted(SUITES))}")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", type=float, default=1e-12)
    p_verify.add_argument("--mode", default="exact", choices=["exact", "float"])
    p_verify.add_argument("--timing", action="store_true",
                          help="record wall-clock times (breaks byte-identical "
                               "reports on purpose)")
    p_verify.add_argument("--inject-bug", default=None,
                          choices=["printed-weight"],
                          help="test fixture: deliberately mis-weight the "
                               "punctured product to show the checks catch it")
    p_verify.set_defaults(func=cmd_verify)

    p_rig = sub.add_parser("rigidity", help="run a rigidity experiment")
    p_rig.add_argument("--spec", required=True,
                       help="experiment spec file, or a bundled name: "
                            "two-hyperbolic-d3, elliptic-N2-d2, "
                            "annulus-punctured-obstruction")
    p_rig.add_argument("--csv", default=None,
                       help="write the singular-value spectrum as CSV")
    p_rig.set_defaults(func=cmd_rigidity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(json.dumps({"error": str(exc), "kind": "non-convergence"}))
        return EXIT_NONCONVERGED
    except (DomainError, ValueError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": str(exc), "kind": "domain"}))
        return EXIT_DOMAIN
    except WickstarError as exc:
        print(json.dumps({"error": str(exc), "kind": "internal"}))
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - the CLI boundary
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}",
                          "kind": "internal"}))
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
