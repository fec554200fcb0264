"""The algebra file format: JSON with rationals written as "p/q" strings."""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import jsonschema

from . import homspace as H
from . import liealg as L
from . import linalg as la
from .errors import (DimensionMismatch, GeoOrbitError, IsotropyNotCompactType, JacobiViolation,
                     MetricNotInvariant, SchemaError)
from .homspace import MetricReductiveSpace
from .report import canonical_json


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("geoorbit").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _rational(s: str, path: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(path, f"invalid rational {s!r}") from exc


def _vectors(rows, dim: int, path: str) -> list:
    out = []
    for a, row in enumerate(rows):
        if len(row) != dim:
            raise SchemaError(f"{path}[{a}]", f"expected {dim} entries, got {len(row)}")
        out.append(tuple(_rational(x, f"{path}[{a}][{b}]") for b, x in enumerate(row)))
    return out


def _square(rows, path: str) -> la.Matrix:
    mat = _vectors(rows, len(rows), path)
    return tuple(mat)


def _with_path(exc: GeoOrbitError, path: str) -> GeoOrbitError:
    exc.path = path
    exc.args = (f"{path}: {exc}",)
    return exc


def parse_algebra_file(data: bytes | str) -> MetricReductiveSpace:
    """Validate against the schema and build a fully checked space."""
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise SchemaError("$", f"not valid JSON: {exc}") from exc
    validator = jsonschema.Draft202012Validator(load_schema("algebra_file"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(_path(err.absolute_path), err.message)

    dim = doc["dimension"]
    names = doc["basis"]
    if len(names) != dim:
        raise SchemaError("$.basis", f"expected {dim} names, got {len(names)}")
    struct = {}
    for a, br in enumerate(doc["brackets"]):
        i, j = br["i"], br["j"]
        if not i < j < dim:
            raise SchemaError(f"$.brackets[{a}]", "indices must satisfy i < j < dimension")
        if (i, j) in struct:
            raise SchemaError(f"$.brackets[{a}]", f"duplicate bracket ({i}, {j})")
        terms = {}
        for b, t in enumerate(br["terms"]):
            p = f"$.brackets[{a}].terms[{b}]"
            if t["k"] >= dim or t["k"] in terms:
                raise SchemaError(f"{p}.k", "index out of range or repeated")
            terms[t["k"]] = _rational(t["c"], f"{p}.c")
        struct[(i, j)] = terms
    try:
        g = L.validate_algebra(dim, struct, names, max_dim=max(dim, L.DEFAULT_MAX_DIM))
    except JacobiViolation as exc:
        raise _with_path(exc, "$.brackets") from None

    h = _vectors(doc["isotropy"], dim, "$.isotropy")
    met = doc["metric"]
    if met["type"] == "killing_multiple":
        metric = H.MetricSpec.killing_multiple(_rational(met["factor"], "$.metric.factor"))
    elif met["type"] == "ambient":
        metric = H.MetricSpec.ambient(_square(met["matrix"], "$.metric.matrix"))
    else:
        metric = H.MetricSpec.explicit(_square(met["matrix"], "$.metric.matrix"))

    comp = doc.get("complement", {"strategy": "killing_orthogonal"})
    kwargs = {}
    if "m" in comp:
        kwargs["m"] = _vectors(comp["m"], dim, "$.complement.m")
    if "levi" in comp:
        kwargs["levi"] = _vectors(comp["levi"], dim, "$.complement.levi")
    if "form" in comp:
        kwargs["form"] = _square(comp["form"], "$.complement.form")
    try:
        return H.build_reductive(g, h, metric, comp["strategy"], label=doc["name"], **kwargs)
    except MetricNotInvariant as exc:
        raise _with_path(exc, "$.metric") from None
    except IsotropyNotCompactType as exc:
        raise _with_path(exc, "$.isotropy") from None
    except (DimensionMismatch, ValueError) as exc:
        raise SchemaError("$.complement" if "complement" in doc else "$.metric", str(exc)) from None


def _q(x) -> str:
    return str(Fraction(x))


def space_to_document(space: MetricReductiveSpace, name: str | None = None) -> dict:
    """The file form of a space: complement and metric written out explicitly."""
    g = space.g
    brackets = [{"i": i, "j": j, "terms": [{"k": k, "c": _q(c)} for k, c in sorted(terms)]}
                for (i, j), terms in sorted(g.structure.items())]
    return {
        "name": name if name is not None else space.label,
        "dimension": g.dim,
        "basis": list(g.basis_names),
        "brackets": brackets,
        "isotropy": [[_q(x) for x in row] for row in space.h.rows],
        "metric": {"type": "explicit", "matrix": [[_q(x) for x in row] for row in space.ip]},
        "complement": {"strategy": "explicit", "m": [[_q(x) for x in row] for row in space.m.rows]},
    }


def dump_algebra_file(space: MetricReductiveSpace, name: str | None = None) -> bytes:
    return (canonical_json(space_to_document(space, name)) + "\n").encode("utf-8")
