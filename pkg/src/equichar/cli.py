"""Command-line front end: JSON in, JSON (or text) out, deterministic bytes.

Verbs:
    cyclic         decomposition for a Z/p^n-cover from {p, n, genus_base, points}
    semidirect     decomposition for Z/p semidirect Z/c from tame + wild data
    superelliptic  the y^m = f(x) family from (p, m, n); closed form and
                   pipeline are evaluated and compared
    validate       run every applicable identity on an input document
    oracle         seeded self-check of the matrix oracle suites

Exit codes: 0 success, 2 invalid input, 3 formula-domain error (unramified
input, impossible cover data), 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import oracle
from .errors import (
    EquicharError,
    EtaleUnsupported,
    InconsistentLayerData,
    InputValidationError,
    InternalCheckError,
    InvalidCover,
    NegativeMultiplicity,
    NotAnOrbitSum,
    RelationCheckFailed,
)
from .formulas import (
    cyclic_de_rham,
    semidirect_de_rham,
    superelliptic_closed_form,
    superelliptic_data,
    validation_report,
)
from .gmodules import GModuleDecomp, GroupShape
from .ramification import (
    CyclicCoverData,
    SemidirectCoverData,
    TameBranchPoint,
    WildBranchPoint,
    WildOrbit,
    genus_intermediate,
    genus_top,
    underlying_cyclic_data,
)
from .report import CheckReport

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_DOMAIN = 3
EXIT_INTERNAL = 4

MAX_PRIME_POWER = 2**20
MAX_C = 2**16
MAX_POINTS = 10**4

_DOMAIN_ERRORS = (EtaleUnsupported, NegativeMultiplicity, NotAnOrbitSum, InvalidCover)
_INTERNAL_ERRORS = (InternalCheckError, RelationCheckFailed, InconsistentLayerData)


# -- input parsing -------------------------------------------------------------


def _load_body(path: str, expected_mode: str | None) -> tuple[str | None, dict]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise InputValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputValidationError("input document must be a JSON object")
    if "mode" in doc or "body" in doc:
        mode, body = doc.get("mode"), doc.get("body")
        if not isinstance(mode, str) or not isinstance(body, dict):
            raise InputValidationError('wrapped documents need string "mode" and object "body"')
        if expected_mode is not None and mode != expected_mode:
            raise InputValidationError(f'document mode "{mode}" does not match verb')
        return mode, body
    return None, doc


def _require_int(body: dict, key: str, minimum: int | None = None) -> int:
    if key not in body:
        raise InputValidationError(f'missing field "{key}"')
    value = body[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputValidationError(f'field "{key}" must be an integer, got {value!r}')
    if minimum is not None and value < minimum:
        raise InputValidationError(f'field "{key}" must be >= {minimum}, got {value}')
    return value


def _parse_point(entry: Any, index: int, p: int) -> WildBranchPoint:
    if not isinstance(entry, dict):
        raise InputValidationError(f"points[{index}] must be an object")
    keys = [k for k in ("i_seq", "upper_jumps", "lower_jumps") if k in entry]
    if len(keys) != 1:
        raise InputValidationError(
            f"points[{index}] needs exactly one of i_seq, upper_jumps, lower_jumps"
        )
    values = entry[keys[0]]
    if not isinstance(values, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in values
    ):
        raise InputValidationError(f"points[{index}].{keys[0]} must be a list of integers")
    if keys[0] == "i_seq":
        return WildBranchPoint(tuple(values))
    if keys[0] == "upper_jumps":
        return WildBranchPoint.from_upper_jumps(values)
    return WildBranchPoint.from_lower_jumps(values, p)


def _parse_cyclic(body: dict) -> CyclicCoverData:
    p = _require_int(body, "p", 2)
    n = _require_int(body, "n", 0)
    g = _require_int(body, "genus_base", 0)
    if p**n > MAX_PRIME_POWER:
        raise InputValidationError(f"p^n = {p ** n} exceeds the bound {MAX_PRIME_POWER}")
    raw_points = body.get("points", [])
    if not isinstance(raw_points, list):
        raise InputValidationError('"points" must be a list')
    if len(raw_points) > MAX_POINTS:
        raise InputValidationError(f"too many branch points ({len(raw_points)} > {MAX_POINTS})")
    points = [_parse_point(entry, k, p) for k, entry in enumerate(raw_points)]
    return CyclicCoverData(p, n, g, tuple(points))


def _parse_semidirect(body: dict) -> SemidirectCoverData:
    p = _require_int(body, "p", 2)
    c = _require_int(body, "c", 1)
    a = _require_int(body, "chi_exponent", 0)
    g = _require_int(body, "genus_base_Z", 0)
    if c > MAX_C:
        raise InputValidationError(f"c = {c} exceeds the bound {MAX_C}")
    shape = GroupShape(p, 1, c, a)
    raw_tame = body.get("tame", [])
    raw_wild = body.get("wild", [])
    if not isinstance(raw_tame, list) or not isinstance(raw_wild, list):
        raise InputValidationError('"tame" and "wild" must be lists')
    if len(raw_tame) > MAX_POINTS or len(raw_wild) > MAX_POINTS:
        raise InputValidationError(f"too many branch points (> {MAX_POINTS})")
    tame = []
    for k, entry in enumerate(raw_tame):
        if not isinstance(entry, dict):
            raise InputValidationError(f"tame[{k}] must be an object")
        tame.append(
            TameBranchPoint(_require_int(entry, "e", 1), _require_int(entry, "theta_exp"))
        )
    wild = []
    for k, entry in enumerate(raw_wild):
        if not isinstance(entry, dict):
            raise InputValidationError(f"wild[{k}] must be an object")
        anchor = entry.get("anchor", "free")
        if anchor == "free":
            anchor_idx = None
        elif isinstance(anchor, int) and not isinstance(anchor, bool):
            anchor_idx = anchor
        else:
            raise InputValidationError(f'wild[{k}].anchor must be an index or "free"')
        wild.append(WildOrbit(u=_require_int(entry, "u", 1), anchor=anchor_idx))
    return SemidirectCoverData(shape, g, tuple(tame), tuple(wild))


def _parse_superelliptic(body: dict) -> tuple[int, int, int]:
    return (
        _require_int(body, "p", 3),
        _require_int(body, "m", 1),
        _require_int(body, "n", 1),
    )


# -- output --------------------------------------------------------------------


def _decomposition_payload(decomp: GModuleDecomp) -> dict:
    entries = [
        {"socle_char_exponent": l, "length": i, "multiplicity": v}
        for (l, i), v in sorted(decomp.counts.items(), key=lambda kv: (-kv[0][1], kv[0][0]))
    ]
    return {
        "group": {
            "p": decomp.shape.p,
            "n": decomp.shape.n,
            "c": decomp.shape.c,
            "chi_exponent": decomp.shape.a_chi,
        },
        "dimension": decomp.dim(),
        "summands": decomp.summand_count(),
        "decomposition": entries,
        "pretty": decomp.pretty(),
    }


def _checks_payload(report: CheckReport) -> dict:
    return {
        "ok": report.ok,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks
        ],
    }


def _emit(doc: dict, args: argparse.Namespace) -> None:
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    else:
        text = _as_text(doc) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _as_text(doc: dict, prefix: str = "") -> str:
    lines: list[str] = []
    for key in sorted(doc):
        value = doc[key]
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines.append(_as_text(value, prefix + "  "))
        elif isinstance(value, list):
            lines.append(f"{prefix}{key}:")
            for item in value:
                if isinstance(item, dict):
                    flat = ", ".join(f"{k}={item[k]}" for k in sorted(item))
                    lines.append(f"{prefix}  - {flat}")
                else:
                    lines.append(f"{prefix}  - {item}")
        else:
            lines.append(f"{prefix}{key}: {value}")
    return "\n".join(lines)


# -- verbs ---------------------------------------------------------------------


def _cmd_cyclic(args: argparse.Namespace) -> int:
    _, body = _load_body(args.input, "cyclic")
    data = _parse_cyclic(body)
    result = cyclic_de_rham(data)
    doc = {"mode": "cyclic", "genus_base": data.g_base, "genus_top": genus_top(data)}
    doc.update(_decomposition_payload(result))
    _emit(doc, args)
    return EXIT_OK


def _cmd_semidirect(args: argparse.Namespace) -> int:
    _, body = _load_body(args.input, "semidirect")
    data = _parse_semidirect(body)
    result = semidirect_de_rham(data)
    doc = {
        "mode": "semidirect",
        "genus_base_Z": data.g_base,
        "genus_Y": genus_intermediate(data),
        "genus_top": genus_top(underlying_cyclic_data(data)),
    }
    doc.update(_decomposition_payload(result))
    _emit(doc, args)
    return EXIT_OK


def _cmd_superelliptic(args: argparse.Namespace) -> int:
    if args.input:
        _, body = _load_body(args.input, "superelliptic")
        p, m, n = _parse_superelliptic(body)
    elif args.p and args.m and args.n:
        p, m, n = args.p, args.m, args.n
    else:
        raise InputValidationError("superelliptic needs either --input or -p, -m, -n")
    data = superelliptic_data(p, m, n)
    pipeline = semidirect_de_rham(data)
    closed = superelliptic_closed_form(p, m, n)
    if closed.result != pipeline:
        raise InternalCheckError(
            "closed form and generic pipeline disagree on the superelliptic curve"
        )
    doc = {
        "mode": "superelliptic",
        "p": p,
        "m": m,
        "n": n,
        "curve_genus": (p**n - 1) * (m - 1) // 2,
        "closed_form": {
            "alpha": list(closed.alpha),
            "beta": list(closed.beta),
            "gamma": list(closed.gamma),
            "c3": closed.c3,
        },
        "closed_form_matches_pipeline": True,
    }
    doc.update(_decomposition_payload(pipeline))
    _emit(doc, args)
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    mode, body = _load_body(args.input, None)
    mode = args.mode or mode
    if mode is None:
        raise InputValidationError('validate needs --mode or a wrapped {"mode", "body"} document')
    if mode == "cyclic":
        data: CyclicCoverData | SemidirectCoverData = _parse_cyclic(body)
    elif mode == "semidirect":
        data = _parse_semidirect(body)
    elif mode == "superelliptic":
        data = superelliptic_data(*_parse_superelliptic(body))
    else:
        raise InputValidationError(f'unknown mode "{mode}"')
    report = validation_report(data)
    doc = {"mode": "validate", "validated": mode}
    doc.update(_checks_payload(report))
    _emit(doc, args)
    return EXIT_OK if report.ok else EXIT_INTERNAL


def _cmd_oracle(args: argparse.Namespace) -> int:
    budget = args.max_dim or min(60, oracle.max_module_dim())
    report = oracle.self_check(seed=args.seed, dim_budget=budget)
    doc = {
        "mode": "oracle",
        "backend": oracle.active_backend(),
        "seed": args.seed,
        "dim_budget": budget,
    }
    doc.update(_checks_payload(report))
    _emit(doc, args)
    return EXIT_OK if report.ok else EXIT_INTERNAL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equichar",
        description="Equivariant de Rham decompositions from ramification data.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser, needs_input: bool) -> None:
        p.add_argument("--input", required=needs_input, help="path to a JSON input document")
        p.add_argument("--output", help="write the result document here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")

    cyc = sub.add_parser("cyclic", help="Z/p^n-cover decomposition")
    common(cyc, True)
    cyc.set_defaults(func=_cmd_cyclic)

    semi = sub.add_parser("semidirect", help="Z/p semidirect Z/c decomposition")
    common(semi, True)
    semi.set_defaults(func=_cmd_semidirect)

    sup = sub.add_parser("superelliptic", help="the y^m = f(x) family")
    common(sup, False)
    sup.add_argument("-p", type=int, help="odd prime")
    sup.add_argument("-m", type=int, help="exponent of y, prime to p")
    sup.add_argument("-n", type=int, help="log_p of the cardinality of the root space")
    sup.set_defaults(func=_cmd_superelliptic)

    val = sub.add_parser("validate", help="run all applicable identities on an input")
    common(val, True)
    val.add_argument("--mode", choices=("cyclic", "semidirect", "superelliptic"))
    val.set_defaults(func=_cmd_validate)

    orc = sub.add_parser("oracle", help="seeded oracle self-check")
    common(orc, False)
    orc.add_argument("--selfcheck", action="store_true", help="accepted for explicitness")
    orc.add_argument("--seed", type=int, default=0)
    orc.add_argument("--max-dim", type=int, help="dimension budget for random modules")
    orc.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except _DOMAIN_ERRORS as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _INTERNAL_ERRORS as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except EquicharError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
