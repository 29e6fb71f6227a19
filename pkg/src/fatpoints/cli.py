"""Command line front end.

Exit codes: 0 success (or "unexpected" for the ``unexpected`` command),
1 a check failed (or the system is not unexpected), 2 invalid invocation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__
from .constructions import (
    CONE_PAIRS,
    CoincidentPoints,
    ConstructionResult,
    DegeneratePoint,
    cone_J,
    curve_QP,
    multiplicity_at,
    quartic_QR,
    quartic_QRP,
    qr_derivative_identities,
)
from .fermat import (
    Configuration,
    GeneratorKind,
    UnsupportedParameters,
    build_configuration,
    generators,
    rewrite_identity_check,
    verify_vanishing,
)
from .field import CYCLOTOMIC, MODULAR, FieldError, FieldSpec, PrimeField, default_primes, make_field
from .interpolation import (
    DegenerateSamplingExhausted,
    ResourceGuard,
    child_seeds,
    conditions_count_sweep,
    empty_configuration,
    is_nondegenerate,
    sample_general_points,
    stacked_conditions,
    symbolic_interpolation_matrix,
    unexpectedness_for,
    verify_generation,
    vanishing_space,
)
from .linalg import symbolic_rank
from .poly import ProjPoint
from .tables import compare_tables, reference_table

ENV_BACKEND = "FATPOINTS_BACKEND"
MAX_N = 9
MAX_POINTS = 100_000


class UsageError(Exception):
    """Bad parameters detected after argument parsing (exit code 2)."""


def _manifest(command: str, params: dict, seed, backend) -> dict:
    return {
        "command": command,
        "parameters": params,
        "seed": seed,
        "backend": backend,
        "artifact_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _emit(payload: dict, fmt: str, text_lines: list[str]):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _guard(N: int, n: int, force: bool):
    if force:
        return
    if N > MAX_N:
        raise UsageError(f"N={N} exceeds the resource guard N <= {MAX_N} (use --force)")
    if n**N > MAX_POINTS:
        raise UsageError(f"n^N = {n**N} exceeds {MAX_POINTS} points (use --force)")


def _backend(args) -> str:
    return args.backend or os.environ.get(ENV_BACKEND) or "auto"


def _config_field(backend: str, n: int, N: int):
    if backend == "auto":
        backend = CYCLOTOMIC if N <= 5 else MODULAR
    if backend == CYCLOTOMIC:
        return make_field(FieldSpec(CYCLOTOMIC, n))
    if backend == MODULAR:
        return PrimeField(default_primes(n, 1)[0], n)
    raise UsageError(f"unknown backend {backend!r}")


def _parse_point(text: str, field) -> ProjPoint:
    try:
        vals = [Fraction(s.strip()) for s in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from None
    if not any(vals):
        raise UsageError("all coordinates are zero")
    return ProjPoint(tuple(field(v) for v in vals))


def _parse_ints(text: str) -> list[int]:
    try:
        vals = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise UsageError("multiplicities must be positive integers")
    return vals


# -- points --------------------------------------------------------------------


def cmd_points(args) -> int:
    if args.N < 1 or args.n < 1:
        raise UsageError("N and n must be positive")
    _guard(args.N, args.n, args.force)
    backend = _backend(args)
    field = _config_field(backend, args.n, args.N)
    config = build_configuration(args.N, args.n, field)
    payload = {
        "manifest": _manifest("points", {"N": args.N, "n": args.n}, None, field.spec.to_dict()),
        "count": len(config),
        "fermat_points": len(config.fermat_points),
        "coordinate_points": len(config.coordinate_points),
        "points": [[str(c) for c in p] for p in config.points],
    }
    lines = [f"W_{{{args.N},{args.n}}} over {field}: {len(config)} points "
             f"({len(config.fermat_points)} Fermat + {len(config.coordinate_points)} coordinate)"]
    if args.list:
        lines += [str(p) for p in config.points]
    _emit(payload, args.format, lines)
    return 0


# -- verify --------------------------------------------------------------------


def _verify_generation(args, field_backend):
    if args.max_degree is None:
        raise UsageError("--max-degree is required")
    _guard(args.N, args.n, args.force)
    field = None
    if field_backend == CYCLOTOMIC:
        field = make_field(FieldSpec(CYCLOTOMIC, args.n))
    try:
        res = verify_generation(args.N, args.n, args.max_degree, field)
    except UnsupportedParameters as exc:
        raise UsageError(str(exc)) from None
    lines = [f"{'d':>3} {'monomials':>10} {'kernel':>8} {'span':>8}  equal"]
    lines += [f"{r.degree:>3} {r.monomials:>10} {r.kernel_dim:>8} {r.span_dim:>8}  {r.equal}" for r in res.rows]
    witness = None if res.ok else {"degrees": [r.degree for r in res.rows if not r.equal]}
    return res.ok, {"table": res.table(), "field": res.backend}, lines, witness


def _verify_vanishing(args, field_backend):
    _guard(args.N, args.n, args.force)
    field = _config_field(field_backend, args.n, args.N)
    kind = GeneratorKind(args.kind) if args.kind else (
        GeneratorKind.FERMAT_P2 if args.N == 2 else GeneratorKind.FERMAT_PN
    )
    try:
        gens = generators(kind, args.N, args.n, field)
    except UnsupportedParameters as exc:
        raise UsageError(str(exc)) from None
    config = build_configuration(args.N, args.n, field)
    ok, wit = verify_vanishing(gens, config)
    witness = None if ok else {"generator": str(gens[wit[0]]), "point": [str(c) for c in wit[1]]}
    lines = [f"{len(gens)} generators ({kind.value}) on {len(config)} points: {'all vanish' if ok else 'FAIL'}"]
    return ok, {"generators": len(gens), "points": len(config)}, lines, witness


def _verify_identities(args, field_backend):
    if args.N < 3:
        raise UsageError("identity check needs N >= 3")
    ok = rewrite_identity_check(args.N)
    return ok, {"N": args.N}, [f"rewriting identities for N={args.N}: {'hold' if ok else 'FAIL'}"], (
        None if ok else {"N": args.N}
    )


def _verify_tables(args, field_backend):
    if args.N not in (3, 5):
        raise UsageError("tables exist for N = 3 and N = 5")
    computed = symbolic_interpolation_matrix(args.N)
    expected = reference_table(args.N)
    diff = compare_tables(computed, expected)
    cert = symbolic_rank(computed, certificate=True)
    if args.dump_matrix:
        with open(args.dump_matrix, "w") as fh:
            fh.write(computed.to_csv(var="a"))
    ok = not diff
    lines = [
        f"interpolation matrix {computed.nrows}x{computed.ncols}; rows differing from the printed table: {diff or 'none'}",
        f"generic rank {cert.rank} (dimension {computed.ncols - cert.rank})",
    ]
    data = {"rows": computed.nrows, "cols": computed.ncols, "diff": diff, "generic_rank": cert.rank}
    if args.N == 3:
        ids = qr_derivative_identities()
        ok = ok and all(ids.values())
        data["derivative_identities"] = ids
        lines.append("derivative identities of Q_R: " + ", ".join(f"{k} {'holds' if v else 'FAILS'}" for k, v in ids.items()))
    return ok, data, lines, None if ok else {"rows": diff}


def _verify_propositions(args, field_backend):
    ks = args.k or [2]
    for k in ks:
        if k < 2:
            raise UsageError("k must be >= 2")
        if 2 * k + 1 > MAX_N and not args.force:
            raise UsageError(f"k={k} gives N={2 * k + 1} > {MAX_N} (use --force)")
    try:
        rows = conditions_count_sweep(ks, args.trials, args.seed, backend=field_backend,
                                      max_k=100 if args.force else 4)
    except ResourceGuard as exc:
        raise UsageError(str(exc)) from None
    lines, data = [], []
    for r in rows:
        lines.append(
            f"k={r.k} N={r.N}: dim V = {r.dim_triple} (expected {r.expected_dim_triple}); "
            f"dims {r.dims}; increments {r.increments} (expected {r.expected_increments}); "
            f"total {r.total_conditions} (expected {r.expected_total}) -> {'ok' if r.ok else 'FAIL'}"
        )
        data.append({
            "k": r.k, "N": r.N, "dim_triple": r.dim_triple, "expected_dim_triple": r.expected_dim_triple,
            "dims": r.dims, "increments": r.increments, "expected_increments": r.expected_increments,
            "total": r.total_conditions, "expected_total": r.expected_total, "primes": r.primes,
            "agree": r.agree, "ok": r.ok,
        })
    lines.append("status: verified with random points only (no theoretical proof known)")
    ok = all(r.ok for r in rows)
    return ok, {"sweep": data}, lines, None if ok else {"failing_k": [r.k for r in rows if not r.ok]}


VERIFY_TARGETS = {
    "generation": _verify_generation,
    "vanishing": _verify_vanishing,
    "identities": _verify_identities,
    "tables": _verify_tables,
    "propositions": _verify_propositions,
}


def cmd_verify(args) -> int:
    backend = _backend(args)
    ok, data, lines, witness = VERIFY_TARGETS[args.target](args, backend)
    params = {k: v for k, v in vars(args).items() if k not in ("func", "format", "command")}
    payload = {"manifest": _manifest(f"verify {args.target}", params, args.seed, backend),
               "passed": ok, "result": data}
    if not ok:
        payload["witness"] = witness
    _emit(payload, args.format, lines + [f"{'PASS' if ok else 'FAIL'}"])
    if not ok and args.format != "json":
        print(json.dumps({"witness": witness}, sort_keys=True))
    return 0 if ok else 1


# -- construct -----------------------------------------------------------------


def cmd_construct(args) -> int:
    kind = args.kind
    n = args.n if kind == "qp" else 3
    if kind == "qp" and n < 3:
        raise UsageError("qp needs --n >= 3")
    field = make_field(FieldSpec(CYCLOTOMIC, n))
    dim = {"qp": 2, "qr": 3, "qrp": 5, "cone": 5}[kind]
    count = 2 if kind == "qrp" else 1
    if args.random:
        rng = np.random.default_rng(child_seeds(args.seed, 1)[0])
        pts = sample_general_points(Configuration(dim, n, field, (), ()), count, rng)
    else:
        given = args.point or []
        if len(given) != count:
            raise UsageError(f"{kind} needs {count} --point argument(s) or --random")
        pts = [_parse_point(t, field) for t in given]
        for p in pts:
            if len(p) != dim + 1:
                raise UsageError(f"{kind} needs points with {dim + 1} coordinates")
            if not is_nondegenerate(p, n):
                raise UsageError(f"degenerate point {p}: zero coordinate or repeated {n}-th powers")
    try:
        if kind == "qp":
            res = curve_QP(n, pts[0], field)
        elif kind == "qr":
            res = quartic_QR(pts[0], field)
        elif kind == "qrp":
            res = quartic_QRP(pts[0], pts[1], field)
        else:
            if (args.i, args.j) not in CONE_PAIRS:
                raise UsageError("cone needs 0 <= --i < --j <= 3")
            poly = cone_J(args.i, args.j, pts[0], field)
            config = build_configuration(5, 3, field)
            vanish = sum(1 for q in config.points if not poly.evaluate(q))
            mult = multiplicity_at(poly, pts[0])
            res = ConstructionResult(poly, config, [(pts[0], 3)], vanish == len(config) and mult >= 3,
                                     [mult], (vanish, len(config)))
    except (DegeneratePoint, CoincidentPoints) as exc:
        raise UsageError(str(exc)) from None
    params = {"kind": kind, "n": n, "points": [[str(c) for c in p] for p in pts], "random": args.random}
    payload = {"manifest": _manifest(f"construct {kind}", params, args.seed if args.random else None,
                                     field.spec.to_dict()),
               "result": res.to_dict()}
    lines = [res.poly.to_str(), f"base vanishing: {res.base_vanishing[0]}/{res.base_vanishing[1]}"]
    for (p, m), got in zip(res.claimed_multiplicities, res.measured_multiplicities):
        lines.append(f"multiplicity at {p}: {got} (claimed {m})")
    lines += res.notes
    lines.append(f"verified: {res.verified}")
    _emit(payload, args.format, lines)
    return 0 if res.verified else 1


# -- unexpected ----------------------------------------------------------------


def cmd_unexpected(args) -> int:
    mults = _parse_ints(args.mults)
    if args.degree < 1:
        raise UsageError("degree must be positive")
    if args.trials < 1:
        raise UsageError("trials must be positive")
    _guard(args.N, args.n, args.force)
    backend = _backend(args)
    if backend not in ("auto", CYCLOTOMIC, MODULAR):
        raise UsageError(f"unknown backend {backend!r}")
    try:
        rep = unexpectedness_for(args.N, args.n, args.degree, mults, args.trials, args.seed,
                                 backend=backend, empty=args.empty)
    except DegenerateSamplingExhausted as exc:
        raise UsageError(str(exc)) from None
    if args.dump_matrix:
        _dump_conditions(args, mults, backend)
    params = {"N": args.N, "n": args.n, "degree": args.degree, "mults": mults, "trials": args.trials,
              "empty": args.empty}
    payload = {"manifest": _manifest("unexpected", params, args.seed, rep.backend), "report": rep.to_dict()}
    lines = [
        f"base_dim {rep.base_dim}, conditions expected {rep.conditions_expected}, "
        f"virtual {rep.virtual_dim}, expected {rep.expected_dim}, actual {rep.actual_dim}",
        f"conditions per point: {rep.rank_per_point}; trial dims {rep.trial_dims}; seeds {rep.seeds}",
        f"verdict: {'unexpected' if rep.verdict else 'not unexpected'}",
    ]
    _emit(payload, args.format, lines)
    return 0 if rep.verdict else 1


def _dump_conditions(args, mults, backend):
    field = _config_field(backend, args.n, args.N)
    config = empty_configuration(args.N, field) if args.empty else build_configuration(args.N, args.n, field)
    basis = vanishing_space(config, args.degree)
    seed = child_seeds(args.seed, args.trials)[0]
    sampler = Configuration(args.N, max(config.n, 1), field, config.fermat_points, config.coordinate_points)
    pts = sample_general_points(sampler, len(mults), np.random.default_rng(seed))
    with open(args.dump_matrix, "w") as fh:
        fh.write(stacked_conditions(basis, list(zip(pts, mults))).to_csv())


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fatpoints", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--backend", choices=("auto", CYCLOTOMIC, MODULAR), default=None,
                        help=f"field backend (default: ${ENV_BACKEND} or auto)")
        sp.add_argument("--force", action="store_true", help="override resource guards")
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("points", help="list a Fermat-type configuration W_{N,n}")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--list", action="store_true", help="print every point in text mode")
    common(sp, seed=False)
    sp.set_defaults(func=cmd_points)

    sp = sub.add_parser("verify", help="run a verification")
    sp.add_argument("target", choices=sorted(VERIFY_TARGETS))
    sp.add_argument("--N", type=int, default=3)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--k", type=int, action="append")
    sp.add_argument("--kind", choices=[k.value for k in GeneratorKind])
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--dump-matrix", metavar="PATH")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="build and verify a closed-form hypersurface")
    sp.add_argument("kind", choices=("qp", "qr", "qrp", "cone"))
    sp.add_argument("--point", action="append", help="comma separated coordinates (twice for qrp)")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--i", type=int, default=0)
    sp.add_argument("--j", type=int, default=1)
    sp.add_argument("--random", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("unexpected", help="decide unexpectedness of general fat points")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--mults", required=True, help="comma separated multiplicities")
    sp.add_argument("--trials", type=int, default=3)
    sp.add_argument("--empty", action="store_true", help="use the empty base set")
    sp.add_argument("--dump-matrix", metavar="PATH")
    common(sp)
    sp.set_defaults(func=cmd_unexpected)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FieldError, UnsupportedParameters) as exc:
        print(f"fatpoints: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
