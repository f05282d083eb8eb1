"""JSON conversion for groups, fans, splitting types and reports.

Rationals are written as "p/q" strings (integers stay integers).  Every
``*_to_json`` function returns plain dicts/lists, sorted where order carries
no meaning, so that dumping with ``sort_keys`` is deterministic.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import _linalg as la
from . import polyhedral as ph
from .chain_moduli import SplittingType, StabilityResult
from .cox import CoxData, all_stabilizers_finite, equivariant_quotient_dims, git_flags, irrelevant_collections, stratum_stabilizer
from .root_datum import (
    RootDatum,
    build_root_datum,
    explicit_root_datum,
    longest_element,
    positive_roots,
    weyl_group,
)
from .stacky_fan import Completion, OrbitPoset, PolarityCertificate, StackClassification, StackyFan, ValidationReport, stacky_fan
from .vinberg import DimensionLedger


def dumps(obj: Any) -> str:
    """Canonical compact JSON; nested sections dump to identical bytes."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def rational(x) -> Any:
    return la.fmt(Fraction(x))


def vector(v) -> list:
    return [rational(a) for a in v]


# --- groups -----------------------------------------------------------------


def group_from_json(obj: dict) -> RootDatum:
    if "series" in obj:
        return build_root_datum(
            obj["series"],
            int(obj.get("rank_of_type", 0)),
            obj.get("isogeny", "adjoint"),
            int(obj.get("central_rank", 0)),
        )
    return explicit_root_datum(int(obj["rank"]), obj.get("simple_roots", []), obj.get("simple_coroots", []), obj.get("label"))


def group_to_json(rd: RootDatum) -> dict:
    w0 = longest_element(rd)
    return {
        "label": rd.label,
        "rank": rd.rank,
        "semisimple_rank": rd.semisimple_rank,
        "central_rank": rd.central_rank,
        "simple_roots": [list(a) for a in rd.simple_roots],
        "simple_coroots": [list(a) for a in rd.simple_coroots],
        "cartan_matrix": [list(row) for row in rd.cartan_matrix],
        "weyl_order": len(weyl_group(rd)),
        "longest_word": list(w0.word),
        "longest_matrix": [list(row) for row in w0.matrix],
        "n_positive_roots": len(positive_roots(rd)),
    }


# --- fans -------------------------------------------------------------------


def fan_from_json(obj: dict, rd: RootDatum) -> StackyFan:
    return stacky_fan(rd, obj["ray_vectors"], obj.get("maximal_cones", []), obj.get("ordering"), obj.get("rays"))


def fan_to_json(fan: StackyFan) -> dict:
    out = {
        "ray_vectors": [list(b) for b in fan.ray_vectors],
        "maximal_cones": [list(c) for c in fan.maximal_cones if c],
        "ordering": list(fan.ordering),
    }
    if any(la.primitive(b) != v for b, v in zip(fan.ray_vectors, fan.rays)):
        out["rays"] = [list(v) for v in fan.rays]
    return out


def validation_to_json(report: ValidationReport) -> dict:
    return {
        "valid": report.valid,
        "problems": [
            {"kind": p.kind, "detail": p.detail, "cones": [list(c) for c in p.cones], "rays": list(p.rays)}
            for p in report.problems
        ],
    }


def cone_key(c) -> str:
    return ",".join(map(str, c))


def polarity_to_json(cert: PolarityCertificate) -> dict:
    out = {"polar": cert.polar}
    if cert.polar:
        out["margin"] = rational(cert.margin)
        out["support_function"] = {cone_key(k): vector(v) for k, v in cert.support_function.items()}
    else:
        out["reason"] = cert.reason
    return out


def orbit_poset_to_json(poset: OrbitPoset) -> dict:
    return {
        "size": poset.size,
        "counts_by_dim": {str(k): v for k, v in poset.counts_by_dim.items()},
        "orbits": [{"cone": list(c), "dim": d} for c, d in zip(poset.cones, poset.dims)],
        "covers": [[list(a), list(b)] for a, b in poset.covers],
    }


def classification_to_json(cls: StackClassification) -> dict:
    return cls.as_dict()


def completion_to_json(c: Completion) -> dict:
    return {
        "fan": fan_to_json(c.fan),
        "sigma": list(c.sigma_indices),
        "v_bar": vector(c.v_bar),
        "epsilon": rational(c.epsilon),
        "full_cone_rays": [vector(v) for v in c.full_cone.rays],
        "nonprimitive_input_rays": [list(b) for b in c.nonprimitive_input_rays],
        "polyhedron": polyhedron_to_json(c.polyhedron),
    }


def polyhedron_to_json(p: ph.PolyhedronQ) -> dict:
    return {"inequalities": [{"normal": vector(u), "bound": rational(b)} for u, b in p.inequalities]}


def cone_from_json(obj: dict, rank: int, space: str = ph.COCHARACTER) -> ph.ConeQ:
    gens = [[la.parse_rational(a) for a in g] for g in obj["generators"]]
    return ph.cone(gens, rank, space)


# --- chains -----------------------------------------------------------------


def splitting_type_from_json(obj: dict, rd: RootDatum) -> SplittingType:
    return SplittingType(rd, tuple(tuple(e) for e in obj["entries"]))


def splitting_type_to_json(st: SplittingType) -> dict:
    return {"entries": [list(e) for e in st.entries]}


def stability_to_json(res: StabilityResult) -> dict:
    if not res.stable:
        return {"stable": False, "reason": res.reason}
    w = res.witness
    return {
        "stable": True,
        "witness": {"word": list(w.w.word), "cone": w.cone, "ray_indices": list(w.ray_indices)},
    }


# --- cox / vinberg ----------------------------------------------------------


def cox_to_json(cox: CoxData, fan: StackyFan) -> dict:
    dims = equivariant_quotient_dims(cox)
    flags = git_flags(fan)
    return {
        "n_rays": cox.n_rays,
        "rank": cox.rank,
        "matrix": [list(row) for row in cox.matrix],
        "matrix_rank": cox.matrix_rank,
        "free_rank": cox.free_rank,
        "invariant_factors": list(cox.invariant_factors),
        "kernel_basis": [list(v) for v in cox.kernel_basis],
        "exact_at_T": cox.exact_at_T,
        "irrelevant_collections": [list(s) for s in irrelevant_collections(fan)],
        "stabilizers": [
            {"vanishing_set": list(mc), "free_rank": fr, "invariant_factors": list(tf)}
            for mc in fan.maximal_cones
            for fr, tf in [stratum_stabilizer(cox, fan, mc)]
        ],
        "all_stabilizers_finite": all_stabilizers_finite(cox, fan),
        "quotient": {
            "affine_dim": dims.affine_dim,
            "torus_dim": dims.torus_dim,
            "group_dim": dims.group_dim,
            "quotient_dim": dims.quotient_dim,
            "classical_applies": dims.classical_applies,
            "classical_quotient_dim": dims.classical_quotient_dim,
        },
        "git": {"applicable": flags.applicable, "semistable_equals_stable": flags.semistable_equals_stable},
    }


def dims_to_json(d: DimensionLedger) -> dict:
    return {
        "dim_G": d.dim_G,
        "n_positive_roots": d.n_positive_roots,
        "dim_G_enh": d.dim_G_enh,
        "dim_S_G": d.dim_S_G,
        "dim_A": d.dim_A,
        "n_rays": d.n_rays,
        "dim_S_G_beta": d.dim_S_G_beta,
        "stack_dim": d.stack_dim,
    }

