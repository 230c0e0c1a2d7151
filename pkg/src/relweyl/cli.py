"""Command-line front end.

    relweyl roots --type A3
    relweyl relative --type A3 --J 1,3
    relweyl characters --type A3 --J 1,3 --output json
    relweyl verify --type A2 --J all --primes 2,3,5

Exit codes: 0 ok, 1 a verification failed, 2 usage error, 3 unsupported
type, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import characters as ch
from .errors import TooLarge, UnsupportedType
from .root_system import CartanType, build_root_system
from .theorems import CLAIMS, DEFAULT_PRIMES, DEFAULT_TYPES, SuiteConfig, run_suite, summary_rows
from .weyl_group import (normalizer, parabolic_subgroup, reflection_classification,
                         relative_weyl_group, verify_semidirect, weyl_group)

COMMANDS = ("roots", "weyl", "relative", "characters", "epsilon", "verify")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TYPE, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    types: list  # CartanType strings
    J: object  # "all" or a list of index tuples
    primes: tuple = DEFAULT_PRIMES
    output: str = "json"
    out_path: str | None = None
    claims: tuple = CLAIMS
    jobs: int = 1
    timings: bool = True


def _parse_J(text: str):
    text = text.strip()
    if text.lower() == "all":
        return "all"
    if not text:
        return [()]
    try:
        J = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise UsageError(f"bad --J value {text!r}; expected e.g. 1,3 or all or ''") from None
    return [J]


def _parse_primes(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad --primes value {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relweyl",
        description="Relative Weyl groups and the cohomology of partial flag varieties")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--type", dest="type_spec", default=None,
                       help="Cartan type such as A3 or G2 (verify accepts a comma list)")
        p.add_argument("--J", dest="J_spec", default=None,
                       help="comma-separated simple-root indices, '' for the empty set, or all")
        p.add_argument("--output", choices=("json", "tsv", "pretty"), default="json")
        p.add_argument("--out", dest="out_path", default=None, help="write output to this file")
        if name == "verify":
            p.add_argument("--primes", default=",".join(map(str, DEFAULT_PRIMES)))
            p.add_argument("--claims", default=None,
                           help=f"comma list drawn from {', '.join(CLAIMS)}")
            p.add_argument("--jobs", type=int, default=1)
            p.add_argument("--no-timings", action="store_true")
    return parser


def parse_args(argv) -> CliConfig:
    """Parse and validate; raises UsageError, UnsupportedType or SystemExit(2)."""
    ns = build_parser().parse_args(argv)
    verify = ns.command == "verify"
    if ns.type_spec is None:
        if not verify:
            raise UsageError(f"{ns.command} requires --type")
        types = list(DEFAULT_TYPES)
    else:
        specs = [t for t in ns.type_spec.split(",") if t.strip()] if verify else [ns.type_spec]
        types = [str(CartanType.parse(t)) for t in specs]
    J = _parse_J(ns.J_spec if ns.J_spec is not None else ("all" if verify else ""))
    if J == "all" and not verify:
        raise UsageError("--J all is only meaningful for verify")
    for t in types:
        rank = CartanType.parse(t).rank
        for j in ([] if J == "all" else J):
            if any(i < 1 or i > rank for i in j):
                raise UsageError(f"--J {','.join(map(str, j))} out of range for {t}")
    cfg = CliConfig(ns.command, types, J, output=ns.output, out_path=ns.out_path)
    if verify:
        cfg.primes = _parse_primes(ns.primes)
        if ns.claims:
            claims = tuple(c.strip() for c in ns.claims.split(",") if c.strip())
            unknown = [c for c in claims if c not in CLAIMS]
            if unknown:
                raise UsageError(f"unknown claims {unknown}")
            cfg.claims = claims
        if ns.jobs < 1:
            raise UsageError("--jobs must be positive")
        cfg.jobs = ns.jobs
        cfg.timings = not ns.no_timings
    return cfg


# -- payloads -------------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return ch.rational_str(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_jsonable)


def roots_payload(rs) -> dict:
    return {
        "type": str(rs.cartan_type),
        "rank": rs.rank,
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
        "positive_roots": [list(r) for r in rs.positive_roots],
        "num_positive": rs.num_positive,
        "exponents": list(rs.exponents()),
        "weyl_order": rs.weyl_order(),
    }


def weyl_payload(rs) -> dict:
    W = weyl_group(rs)
    return {
        "type": str(rs.cartan_type),
        "order": len(W),
        "longest_word": list(W.longest.word),
        "longest_length": W.longest.length,
        "length_polynomial": W.length_polynomial(),
        "fundamental_degrees": list(ch.fundamental_degrees(rs)),
    }


def relative_payload(rs, J) -> dict:
    rwg = relative_weyl_group(rs, J)
    semi = verify_semidirect(rs, J)
    refl = reflection_classification(rwg, rs)
    return {
        "type": str(rs.cartan_type),
        "J": list(rwg.parent_J),
        "parabolic_order": len(parabolic_subgroup(rs, J)),
        "normalizer_order": len(normalizer(rs, J)),
        "relative_order": len(rwg),
        "elements": [list(w.word) for w in rwg.elements],
        "length_in_W": [w.length for w in rwg.elements],
        "length_in_relative": list(rwg.word_lengths),
        "generators": [list(rwg.elements[g].word) for g in rwg.generators],
        "semidirect": semi.passed,
        "fixed_dimension": refl.fixed_dimension,
        "reflections": [list(rwg.elements[a].word) for a in refl.reflections],
        "generated_by_reflections": refl.generated_by_reflections,
        "reflection_note": refl.note,
    }


def characters_payload(rs, J) -> dict:
    out = ch.character_json(rs, J)
    out["dims"] = ch.graded_character(rs, J).dims()
    return out


def epsilon_payload(rs, J) -> dict:
    rwg = relative_weyl_group(rs, J)
    eps = ch.epsilon_U(rs, J, rwg)
    return {
        "type": str(rs.cartan_type),
        "J": list(rwg.parent_J),
        "elements": [{"word": list(w.word), "epsilon": ch.rational_str(eps(a))}
                     for a, w in enumerate(rwg.elements)],
    }


PAYLOADS = {"roots": roots_payload, "weyl": weyl_payload, "relative": relative_payload,
            "characters": characters_payload, "epsilon": epsilon_payload}


def _flat_rows(payload: dict) -> list:
    return [[k, dumps(v) if isinstance(v, (list, dict)) else str(v)]
            for k, v in sorted(payload.items())]


def _render_single(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(payload) + "\n"
    if fmt == "tsv":
        return "".join("\t".join(r) + "\n" for r in _flat_rows(payload))
    width = max(len(k) for k in payload)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in _flat_rows(payload))


def _render_reports(reports, fmt: str, timings: bool) -> str:
    if fmt == "json":
        return "".join(dumps(r.to_dict(timings)) + "\n" for r in reports)
    rows = summary_rows(reports)
    if fmt == "tsv":
        return "".join("\t".join(r) + "\n" for r in rows)
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    n_fail = sum(r.status == "fail" for r in reports)
    lines.append(f"{len(reports)} reports, {n_fail} failed")
    return "\n".join(lines) + "\n"


def dispatch(cfg: CliConfig, stdout=None) -> int:
    """Run the command, write its output, and return the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    code = EXIT_OK
    if cfg.command == "verify":
        reports = run_suite(SuiteConfig(types=tuple(cfg.types), J=cfg.J, primes=cfg.primes,
                                        claims=cfg.claims, jobs=cfg.jobs))
        text = _render_reports(reports, cfg.output, cfg.timings)
        if any(r.status == "fail" for r in reports):
            code = EXIT_FAIL
    else:
        rs = build_root_system(cfg.types[0])
        payload = PAYLOADS[cfg.command]
        J = cfg.J[0]
        text = _render_single(payload(rs) if cfg.command in ("roots", "weyl") else payload(rs, J),
                              cfg.output)
    if cfg.out_path:
        try:
            with open(cfg.out_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"relweyl: cannot write {cfg.out_path}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        stdout.write(text)
    return code


def main(argv=None, stdout=None) -> int:
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_USAGE if exc.code else EXIT_OK
    except UsageError as exc:
        print(f"relweyl: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedType as exc:
        print(f"relweyl: {exc}", file=sys.stderr)
        return EXIT_TYPE
    try:
        return dispatch(cfg, stdout)
    except TooLarge as exc:
        print(f"relweyl: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
