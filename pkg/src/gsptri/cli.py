"""Batch command line producing deterministic JSON reports.

Commands: ``weyl``, ``refinements``, ``check``, ``verify-saturation``,
``dims``.  Every report carries the same envelope (command, echoed canonical
inputs, results, tool_version, duration_ms) and, apart from duration_ms, is
byte-identical across invocations with identical arguments.

Exit codes: 0 pass, 1 certified failure (a false verdict or a failed
certificate), 2 usage or precondition error, 3 data-integrity error.
``GSPTRI_MAX_N`` overrides every size bound (Weyl rank, GL size, GSp rank).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .characters import (
    LocallyAlgebraicCharacter,
    PadicFieldShape,
    ext_saturated_check,
    h_surjectivity_check,
    is_regular,
    is_regular_parameter,
)
from .errors import DataIntegrityError, PreconditionError, ResourceLimitError
from .phimodules import (
    GROUP_GL,
    GROUP_GSP,
    Refinement,
    SymplecticPhiData,
    enumerate_symplectic_refinements,
    identity_refinement,
    is_benign,
    is_noncritical,
    is_phi_generic,
    is_regular_ht,
    phi_module_from_json,
    refinement_parameter,
)
from .saturation import DEFAULT_MAX_M_GL, DEFAULT_MAX_N_GSP, verify_span_gl, verify_span_gsp
from .weyl import DEFAULT_MAX_N, weyl_group_closure

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DATA = 3


def _max_bound(default: int) -> int:
    value = os.environ.get("GSPTRI_MAX_N")
    if value is None:
        return default
    try:
        return int(value)
    except ValueError as exc:
        raise PreconditionError(f"GSPTRI_MAX_N must be an integer, got {value!r}") from exc


def _report(command: str, inputs, results, started: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "tool_version": __version__,
        "duration_ms": int((time.monotonic() - started) * 1000),
    }


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise PreconditionError(f"cannot read JSON input {path}: {exc}") from exc


def _parse_weights_flag(text: str, m: int):
    """CSV weight sequences, one per embedding separated by ';' (broadcast if one)."""
    groups = [part for part in text.split(";") if part.strip()]
    seqs = []
    for part in groups:
        seq = tuple(int(x) for x in part.split(","))
        if len(seq) != m:
            raise PreconditionError(f"each weight sequence needs {m} entries")
        seqs.append(seq)
    if len(seqs) == 1:
        return seqs[0]
    return {f"tau{i}": seq for i, seq in enumerate(seqs)}


def _characters_from_json(items, shape: PadicFieldShape):
    out = []
    for item in items:
        ch = LocallyAlgebraicCharacter.from_json(item)
        if len(ch.weights) != shape.degree:
            raise PreconditionError("character weight length does not match the field shape")
        out.append(ch)
    return out


# -- commands -------------------------------------------------------------------


def cmd_weyl(args) -> int:
    started = time.monotonic()
    bound = _max_bound(DEFAULT_MAX_N)
    if args.n < 1 or args.n > bound:
        raise PreconditionError(f"--n must be in [1, {bound}]")
    elements, rounds = weyl_group_closure(args.n, max_n=bound)
    inputs = {"n": args.n, "format": args.format}
    if args.format == "table":
        print(f"W(GSp_{2 * args.n}, T): {len(elements)} elements, closure rounds {rounds}")
        for el in elements:
            sigma = ",".join(map(str, el.sigma))
            signs = ",".join(f"{s:+d}" for s in el.signs)
            print(f"  [{sigma}]  signs [{signs}]  sim {el.similitude_sign:+d}")
        return EXIT_PASS
    results = {
        "size": len(elements),
        "closure_rounds": rounds,
        "elements": [el.to_json() for el in elements],
    }
    _emit(_report("weyl", inputs, results, started))
    return EXIT_PASS


def cmd_refinements(args) -> int:
    started = time.monotonic()
    raw = _load_json(args.input)
    try:
        data = phi_module_from_json(raw)
    except DataIntegrityError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"malformed input: {exc}") from exc
    shape = data.shape if isinstance(data, SymplecticPhiData) else data.shape
    base = data.base if isinstance(data, SymplecticPhiData) else data
    group = GROUP_GSP if isinstance(data, SymplecticPhiData) else GROUP_GL
    if isinstance(data, SymplecticPhiData):
        refinements = enumerate_symplectic_refinements(data)
    else:
        from .phimodules import _all_orderings

        ident = {tau: tuple(range(1, base.rank + 1)) for tau in shape.labels}
        refinements = [Refinement(sigma, ident) for sigma in _all_orderings(base.rank)]
    regular_ht = is_regular_ht(base)
    listed = []
    for ref in refinements:
        deltas = refinement_parameter(base, ref)
        entry = {
            "eigenvalue_order": list(ref.eigenvalue_order),
            "parameter": [d.to_json() for d in deltas],
            "regular_parameter": is_regular_parameter(deltas, shape),
            "noncritical": is_noncritical(data, ref, group) if regular_ht else None,
        }
        listed.append(entry)
    results = {"count": len(refinements), "group": group, "refinements": listed}
    _emit(_report("refinements", {"input": _canonical(raw)}, results, started))
    return EXIT_PASS


def _canonical(obj):
    return json.loads(json.dumps(obj, sort_keys=True))


def _first_violation(checks) -> dict:
    for name, ok in checks:
        if not ok:
            return {"verdict": False, "violated": name}
    return {"verdict": True, "violated": None}


def cmd_check(args) -> int:
    started = time.monotonic()
    raw = _load_json(args.input)
    kind = args.kind
    try:
        results = _run_check(kind, raw)
    except DataIntegrityError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (PreconditionError, ResourceLimitError)):
            raise
        raise PreconditionError(f"input does not match the {kind} schema: {exc}") from exc
    _emit(_report("check", {"kind": kind, "input": _canonical(raw)}, results, started))
    return EXIT_PASS if results["verdict"] else EXIT_FAIL


def _run_check(kind: str, raw) -> dict:
    if kind == "regular":
        shape = PadicFieldShape.from_json(raw)
        chars = _characters_from_json(raw["characters"], shape)
        if len(chars) == 1:
            ok = is_regular(chars[0], shape)
            return _first_violation([("regular_character", ok)])
        ok = is_regular_parameter(chars, shape)
        return _first_violation([("regular_parameter", ok)])
    if kind == "generic":
        data = phi_module_from_json(raw)
        base = data.base if isinstance(data, SymplecticPhiData) else data
        return _first_violation([("phi_generic", is_phi_generic(base))])
    if kind == "noncritical":
        data = phi_module_from_json(raw)
        base = data.base if isinstance(data, SymplecticPhiData) else data
        group = raw.get("group", GROUP_GSP if isinstance(data, SymplecticPhiData) else GROUP_GL)
        if "refinement" in raw:
            ref = Refinement(
                tuple(raw["refinement"]["eigenvalue_order"]),
                {t: tuple(p) for t, p in raw["refinement"]["weight_order"].items()},
            )
        else:
            ref = identity_refinement(base.rank, base.shape.labels)
        return _first_violation([("noncritical", is_noncritical(data, ref, group))])
    if kind == "benign":
        data = phi_module_from_json(raw)
        base = data.base if isinstance(data, SymplecticPhiData) else data
        checks = [("regular_ht", is_regular_ht(base)), ("phi_generic", is_phi_generic(base))]
        if all(ok for _n, ok in checks):
            checks.append(("noncritical", is_benign(data)))
        return _first_violation(checks)
    if kind == "ext-saturated":
        shape = PadicFieldShape.from_json(raw)
        deltas = _characters_from_json(raw["parameter"], shape)
        ok = ext_saturated_check(shape, raw["weights"], deltas)
        return _first_violation([("ext_saturated", ok)])
    if kind == "h-surjectivity":
        shape = PadicFieldShape.from_json(raw)
        deltas = _characters_from_json(raw["parameter"], shape)
        subs = _characters_from_json(raw["sub_parameter"], shape)
        ok = h_surjectivity_check(deltas, subs, shape)
        return _first_violation([("h_surjectivity", ok)])
    raise PreconditionError(f"unknown check kind {kind!r}")


def cmd_verify_saturation(args) -> int:
    started = time.monotonic()
    if args.group == GROUP_GL:
        if args.m is None:
            raise PreconditionError("--m is required for --group gl")
        size = args.m
        weights = _parse_weights_flag(args.weights, size)
        cert = verify_span_gl(
            size,
            args.sigma,
            weights,
            args.seed,
            mode=args.mode,
            max_m=_max_bound(DEFAULT_MAX_M_GL),
        )
    else:
        if args.n is None:
            raise PreconditionError("--n is required for --group gsp")
        size = args.n
        weights = _parse_weights_flag(args.weights, 2 * size)
        cert = verify_span_gsp(
            size, args.sigma, weights, args.seed, max_n=_max_bound(DEFAULT_MAX_N_GSP)
        )
    inputs = {
        "group": args.group,
        "size": size,
        "sigma": args.sigma,
        "weights": args.weights,
        "seed": args.seed,
        "mode": args.mode if args.group == GROUP_GL else "staged",
    }
    _emit(_report("verify-saturation", inputs, cert.to_json(), started))
    return EXIT_PASS if cert.verdict == "pass" else EXIT_FAIL


def cmd_dims(args) -> int:
    started = time.monotonic()
    if args.n < 1 or args.degree < 1:
        raise PreconditionError("--n and --degree must be positive")
    n, degree = args.n, args.degree
    group_dim = 2 * n * n + n + 1
    space_dim = group_dim + degree * (n + 1) * (n + 2) // 2
    weyl_order = (2 ** n) * _factorial(n)
    results = {
        "group_dim": group_dim,
        "space_dim": space_dim,
        "weyl_order": weyl_order,
        "degree": degree,
    }
    _emit(_report("dims", {"n": n, "degree": degree}, results, started))
    return EXIT_PASS


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsptri",
        description="Exact verifiers for symplectic Weyl combinatorics, refinement "
        "parameters, and span/saturation certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weyl", help="enumerate the symplectic Weyl group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(fn=cmd_weyl)

    p = sub.add_parser("refinements", help="list refinements with their parameters")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=cmd_refinements)

    p = sub.add_parser("check", help="run a named predicate on a JSON input")
    p.add_argument(
        "--kind",
        required=True,
        choices=["regular", "generic", "noncritical", "benign", "ext-saturated", "h-surjectivity"],
    )
    p.add_argument("--input", required=True)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("verify-saturation", help="produce a span certificate")
    p.add_argument("--group", required=True, choices=[GROUP_GL, GROUP_GSP])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--sigma", type=int, default=1, help="number of embedding labels")
    p.add_argument("--weights", required=True, help="CSV weights; ';' separates embeddings")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=["full", "transpositions"], default="full")
    p.set_defaults(fn=cmd_verify_saturation)

    p = sub.add_parser("dims", help="dimension arithmetic for the deformation space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, default=1, help="[K:Q_p]")
    p.set_defaults(fn=cmd_dims)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DataIntegrityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (PreconditionError, ResourceLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
