"""Command-line front end.

    chainfold <command> --input request.json [--output response.json]

Exit status: 0 when a result was computed (including negative verdicts such
as an unstable splitting type), 1 for domain errors such as an invalid fan,
2 when the input cannot be parsed or does not match the request schema.
"""

from __future__ import annotations

import argparse
import json
import sys
from functools import lru_cache
from importlib import resources
from typing import Callable

import jsonschema

from . import _linalg as la
from . import polyhedral as ph
from . import serialize as io
from .chain_moduli import SplittingType, enumerate_stable, is_stable, moduli_report
from .cox import cox_sequence
from .root_datum import RootDatumError, WeylGroupTooLarge, torus
from .stacky_fan import (
    CompletionError,
    FanError,
    apply_longest,
    classify,
    completion_details,
    is_polar,
    orbit_poset,
    validate,
)
from .vinberg import VinbergLatticeData, abelianization_data, beta_to_A, cox_vinberg_dims

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


class DomainError(Exception):
    def __init__(self, kind: str, message: str, problems=None):
        super().__init__(message)
        self.kind = kind
        self.problems = problems or []


@lru_cache(maxsize=1)
def _schema_defs() -> dict:
    text = resources.files("chainfold").joinpath("schemas/requests.schema.json").read_text()
    return json.loads(text)


def validate_request(command: str, payload) -> None:
    schema = dict(_schema_defs())
    schema["$ref"] = f"#/$defs/{command}"
    jsonschema.Draft202012Validator(schema).validate(payload)


def _fan(payload: dict, require_dominant: bool = True):
    rd = io.group_from_json(payload["group"])
    fan = io.fan_from_json(payload["fan"], rd)
    report = validate(fan, require_dominant)
    if not report.valid:
        raise DomainError("invalid_fan", "the fan violates a stacky-fan invariant", io.validation_to_json(report)["problems"])
    return fan


# --- commands ---------------------------------------------------------------


def cmd_group_define(payload: dict) -> dict:
    return io.group_to_json(io.group_from_json(payload["group"]))


def cmd_fan_validate(payload: dict) -> dict:
    rd = io.group_from_json(payload["group"])
    report = validate(io.fan_from_json(payload["fan"], rd))
    out = io.validation_to_json(report)
    if not report.valid:
        raise DomainError("invalid_fan", "the fan violates a stacky-fan invariant", out["problems"])
    return out


def cmd_fan_classify(payload: dict) -> dict:
    fan = _fan(payload)
    return {
        "classification": io.classification_to_json(classify(fan)),
        "polarity": io.polarity_to_json(is_polar(fan)),
        "orbit_poset": io.orbit_poset_to_json(orbit_poset(apply_longest(fan))),
        "coarse_fan": io.fan_to_json(apply_longest(fan)),
        "summary": moduli_report(fan).summary,
    }


def cmd_fan_complete(payload: dict) -> dict:
    rd = io.group_from_json(payload["group"])
    betas = [tuple(b) for b in payload["cone"]["ray_vectors"]]
    if any(len(b) != rd.rank for b in betas):
        raise DomainError("dimension_mismatch", f"ray vectors must have length {rd.rank}")
    if any(la.is_zero(b) for b in betas):
        raise DomainError("zero_ray_vector", "ray vectors must be nonzero")
    sigma = ph.cone(betas, rd.rank) if betas else ph.zero_cone(rd.rank)
    by_ray = {la.primitive(b): b for b in betas}
    if len(by_ray) != len(betas) or set(by_ray) != set(sigma.rays):
        raise DomainError("not_extreme", "each ray vector must span a distinct extreme ray of the cone")
    return io.completion_to_json(completion_details(sigma, rd, [by_ray[v] for v in sigma.rays]))


def cmd_stability_check(payload: dict) -> dict:
    fan = _fan(payload)
    entries = payload["entries"]
    if any(len(e) != fan.rd.rank for e in entries):
        raise DomainError("dimension_mismatch", f"entries must have length {fan.rd.rank}")
    return io.stability_to_json(is_stable(SplittingType(fan.rd, tuple(map(tuple, entries))), fan))


def cmd_stability_enumerate(payload: dict) -> dict:
    fan = _fan(payload)
    classes = []
    for st in enumerate_stable(fan):
        d = io.splitting_type_to_json(st)
        d["ray_indices"] = [fan.ray_index[e] for e in st.entries]
        classes.append(d)
    return {"count": len(classes), "classes": classes}


def cmd_cox_data(payload: dict) -> dict:
    if "group" in payload:
        rd = io.group_from_json(payload["group"])
    else:
        vectors = payload["fan"]["ray_vectors"]
        rank = payload.get("rank", len(vectors[0]) if vectors else None)
        if rank is None:
            raise DomainError("missing_rank", "an empty fan needs a group or a rank")
        rd = torus(rank)
    fan = io.fan_from_json(payload["fan"], rd)
    report = validate(fan, require_dominant=False)
    if not report.valid:
        raise DomainError("invalid_fan", "the fan violates a fan invariant", io.validation_to_json(report)["problems"])
    out = io.cox_to_json(cox_sequence(fan), fan)
    out["dimensions"] = io.dims_to_json(cox_vinberg_dims(fan))
    return out


def cmd_vinberg_query(payload: dict) -> dict:
    rd = io.group_from_json(payload["group"])
    lam, mu = payload["lambda"], payload["mu"]
    if len(lam) != rd.rank or len(mu) != rd.rank:
        raise DomainError("dimension_mismatch", f"characters must have length {rd.rank}")
    data = VinbergLatticeData(rd, payload.get("dominance", "lambda"))
    out = data.query(lam, mu)
    ab = abelianization_data(rd)
    out["abelianization_dim"] = ab.dimension
    if "beta" in payload:
        out["beta_to_A"] = list(beta_to_A(rd, payload["beta"]))
    return out


def cmd_report_full(payload: dict) -> dict:
    return {
        "group.define": cmd_group_define(payload),
        "fan.classify": cmd_fan_classify(payload),
        "stability.enumerate": cmd_stability_enumerate(payload),
        "cox.data": cmd_cox_data(payload),
    }


COMMANDS: dict[str, Callable[[dict], dict]] = {
    "group.define": cmd_group_define,
    "fan.validate": cmd_fan_validate,
    "fan.classify": cmd_fan_classify,
    "fan.complete": cmd_fan_complete,
    "stability.check": cmd_stability_check,
    "stability.enumerate": cmd_stability_enumerate,
    "cox.data": cmd_cox_data,
    "vinberg.query": cmd_vinberg_query,
    "report.full": cmd_report_full,
}


def run(command: str, text: str) -> tuple[dict, int]:
    """Process one request given as JSON text; returns (response, exit code)."""
    if command not in COMMANDS:
        return {"error": {"kind": "unknown_command", "message": command}}, EXIT_PARSE
    try:
        payload = json.loads(text)
        validate_request(command, payload)
    except json.JSONDecodeError as exc:
        return {"error": {"kind": "parse_error", "message": str(exc)}}, EXIT_PARSE
    except jsonschema.ValidationError as exc:
        where = "/".join(map(str, exc.absolute_path))
        return {"error": {"kind": "schema_error", "message": exc.message, "path": where}}, EXIT_PARSE
    try:
        return COMMANDS[command](payload), EXIT_OK
    except DomainError as exc:
        err = {"kind": exc.kind, "message": str(exc)}
        if exc.problems:
            err["problems"] = exc.problems
        return {"error": err}, EXIT_DOMAIN
    except (RootDatumError, FanError, CompletionError, WeylGroupTooLarge, ph.PolyhedralError) as exc:
        return {"error": {"kind": type(exc).__name__, "message": str(exc)}}, EXIT_DOMAIN
    except ValueError as exc:
        return {"error": {"kind": "domain_error", "message": str(exc)}}, EXIT_DOMAIN


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="chainfold", description=__doc__.split("\n\n")[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--input", "-i", required=True, help="request JSON file, or - for stdin")
    parser.add_argument("--output", "-o", help="write the response here instead of stdout")
    args = parser.parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(io.dumps({"error": {"kind": "io_error", "message": str(exc)}}), file=sys.stderr)
        return EXIT_PARSE
    response, code = run(args.command, text)
    rendered = io.dumps(response) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    else:
        sys.stdout.write(rendered)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
