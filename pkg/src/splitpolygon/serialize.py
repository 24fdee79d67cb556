"""Canonical JSON for arrangements, plinths and certificates.

Field elements are lists of rational strings over the tower basis; towers
use ``nfield.tower_to_json``.  ``dumps`` sorts keys so equal values give
equal bytes.
"""

from __future__ import annotations

import json

from .combinat import Arrangement, LineCombinatorics, compute_combinatorics
from .nfield import FieldTower, UniPoly, element_from_json, tower_from_json, tower_to_json
from .plinth import Plinth
from .projgeom import ProjLine
from .splitpoly import MultiSplitCertificate, SplitCertificate, multi_split, split


class FormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _elem(x):
    return x.to_json()


def arrangement_to_json(a: Arrangement, presets=None) -> dict:
    out = {"lines": list(a.labels), "tower": tower_to_json(a.tower),
           "coefficients": [[_elem(x) for x in l.coords] for l in a.lines]}
    if presets:
        out["presets"] = {name: preset_to_json(p) for name, p in sorted(presets.items())}
    return out


def preset_to_json(p) -> dict:
    out = {"support": list(p.support), "pivots": [list(x) for x in p.pivots]}
    if p.base is not None:
        out["base"] = [[str(x) if isinstance(x, int) else _elem(x) for x in v] for v in p.base]
    return out


def arrangement_from_json(data) -> Arrangement:
    try:
        t = tower_from_json(data.get("tower", []))
        lines = [ProjLine([element_from_json(t, x) for x in row]) for row in data["coefficients"]]
        return Arrangement(lines, data.get("lines"), t)
    except (KeyError, TypeError, AttributeError) as ex:
        raise FormatError(f"malformed arrangement: {ex}") from ex


def base_from_json(t: FieldTower, data):
    if data is None:
        return None
    if len(data) != 2 or any(len(v) != 3 for v in data):
        raise FormatError("parameter base needs two coordinate triples")
    return tuple(tuple(element_from_json(t, x) for x in v) for v in data)


def base_to_json(base):
    return [[_elem(x) for x in v] for v in base]


def plinth_from_json(c: LineCombinatorics, data) -> Plinth:
    try:
        return Plinth.from_labels(c, data["support"], data["pivots"])
    except (KeyError, TypeError) as ex:
        raise FormatError(f"malformed plinth: {ex}") from ex


def poly_to_json(p: UniPoly) -> list:
    return [_elem(x) for x in p.coeffs]


def certificate_to_json(ct: SplitCertificate) -> dict:
    a = ct.base_arrangement
    c = compute_combinatorics(a)
    n = len(a)
    return {
        "kind": "split",
        "base_arrangement": arrangement_to_json(a),
        "plinth": ct.plinth.to_json(c),
        "param_base": base_to_json(ct.param_base),
        "edge_labels": next((list(x.labels[n:]) for x in ct.arrangements if x is not None), []),
        "base_field": tower_to_json(ct.base_field),
        "delta": poly_to_json(ct.delta),
        "delta_irreducible": ct.delta_irreducible,
        "result_field": tower_to_json(ct.result_field),
        "lambdas": [_elem(x) for x in ct.lambdas],
        "arrangements": [arrangement_to_json(x) if x is not None else None for x in ct.arrangements],
        "checks": [ch.to_json() for ch in ct.checks],
        "equivalent": ct.equivalent,
        "verdict": ct.verdict,
        "components_claimed": ct.components_claimed,
        "rigidity": ct.rigidity,
        "notes": list(ct.notes),
    }


def multi_certificate_to_json(mc: MultiSplitCertificate) -> dict:
    return {
        "kind": "multi-split",
        "certificates": [certificate_to_json(ct) for ct in mc.certificates],
        "deltas_consistent": mc.deltas_consistent,
        "cross_equivalent": mc.cross_equivalent,
        "verdict": mc.verdict,
        "components_claimed": mc.components_claimed,
    }


def _rerun_split(data) -> SplitCertificate:
    a = arrangement_from_json(data["base_arrangement"])
    c = compute_combinatorics(a)
    p = plinth_from_json(c, data["plinth"])
    base = base_from_json(a.tower, data.get("param_base"))
    labels = data.get("edge_labels") or None
    return split(a, p, base, lattice=c, labels=labels)


def _diff(old, new, path="") -> list[str]:
    if isinstance(old, dict) and isinstance(new, dict):
        out = []
        for k in sorted(set(old) | set(new)):
            if k not in old or k not in new:
                out.append(f"{path}/{k}: present on one side only")
            else:
                out += _diff(old[k], new[k], f"{path}/{k}")
        return out
    if isinstance(old, list) and isinstance(new, list):
        if len(old) != len(new):
            return [f"{path}: length {len(old)} != {len(new)}"]
        out = []
        for i, (x, y) in enumerate(zip(old, new)):
            out += _diff(x, y, f"{path}/{i}")
        return out
    return [] if old == new else [f"{path}: {old!r} != {new!r}"]


def verify_certificate(data) -> list[str]:
    """Replay a serialized certificate from its embedded inputs.

    Returns the list of fields whose recomputed value differs (empty when
    the certificate is reproduced exactly).
    """
    try:
        kind = data["kind"]
        if kind == "split":
            fresh = certificate_to_json(_rerun_split(data))
            return _diff(data, fresh)
        if kind == "multi-split":
            reps = []
            for sub in data["certificates"]:
                a = arrangement_from_json(sub["base_arrangement"])
                c = compute_combinatorics(a)
                reps.append((a, plinth_from_json(c, sub["plinth"]),
                             base_from_json(a.tower, sub.get("param_base"))))
            labels = data["certificates"][0].get("edge_labels") or None
            fresh = multi_certificate_to_json(multi_split(reps, labels=labels))
            return _diff(data, fresh)
    except (KeyError, TypeError, ValueError) as ex:
        return [f"certificate cannot be replayed: {ex}"]
    return [f"unknown certificate kind {data.get('kind')!r}"]
