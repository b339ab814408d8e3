"""JSON ingestion and emission for spaces, measures, submeasures,
correspondences, and signed families.

Validation errors carry the JSON path of the offending element.  Weights
dictionaries default omitted labels to 0.
"""

from __future__ import annotations

import json

import numpy as np

from .correspondence import Correspondence, EndoCorrespondence
from .errors import SchemaError
from .intersection import SignedFamily
from .measures import SignedMeasure, StrongSubmeasure
from .space import FiniteSpace, FunctionVector


def _require(doc, key, path, kind=None, optional=False, default=None):
    if not isinstance(doc, dict):
        raise SchemaError(path, f"expected an object, got {type(doc).__name__}")
    if key not in doc:
        if optional:
            return default
        raise SchemaError(f"{path}.{key}", "missing required field")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SchemaError(f"{path}.{key}", f"expected {names}, got {type(value).__name__}")
    return value


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a number, got {type(value).__name__}")
    return float(value)


def load_space(doc, path="$"):
    points = _require(doc, "points", path, list)
    if not points:
        raise SchemaError(f"{path}.points", "space needs at least one point")
    for k, p in enumerate(points):
        if not isinstance(p, str):
            raise SchemaError(f"{path}.points[{k}]", "labels must be strings")
    subsets = _require(doc, "subsets", path, dict, optional=True, default={})
    metric = _require(doc, "metric", path, list, optional=True)
    for name, labels in subsets.items():
        if not isinstance(labels, list):
            raise SchemaError(f"{path}.subsets.{name}", "expected a list of labels")
        for lab in labels:
            if lab not in points:
                raise SchemaError(f"{path}.subsets.{name}", f"unknown label {lab!r}")
    return FiniteSpace(points, metric=metric, named_subsets=subsets)


def _load_weight_map(doc, space, key, path):
    weights = _require(doc, key, path, dict)
    w = np.zeros(len(space))
    for label, value in weights.items():
        if label not in space._index:
            raise SchemaError(f"{path}.{key}.{label}", "unknown point label")
        w[space.index(label)] = _number(value, f"{path}.{key}.{label}")
    return w


def load_measure(doc, space, path="$"):
    return SignedMeasure(space, _load_weight_map(doc, space, "weights", path))


def load_function(doc, space, path="$"):
    return FunctionVector(space, _load_weight_map(doc, space, "values", path))


def load_submeasure(doc, space, path="$"):
    gens = _require(doc, "generators", path, list)
    if not gens:
        raise SchemaError(f"{path}.generators", "submeasure needs at least one generator")
    measures = [load_measure(g, space, f"{path}.generators[{k}]") for k, g in enumerate(gens)]
    return StrongSubmeasure(space, measures)


def load_correspondence(doc, path="$"):
    source = load_space(_require(doc, "source", path, dict), f"{path}.source")
    target = load_space(_require(doc, "target", path, dict), f"{path}.target")
    raw_edges = _require(doc, "edges", path, list)
    edges = []
    for k, e in enumerate(raw_edges):
        if not (isinstance(e, list) and len(e) == 3):
            raise SchemaError(f"{path}.edges[{k}]", "expected [source, target, multiplicity]")
        x, y, m = e
        if x not in source._index:
            raise SchemaError(f"{path}.edges[{k}][0]", f"unknown source label {x!r}")
        if y not in target._index:
            raise SchemaError(f"{path}.edges[{k}][1]", f"unknown target label {y!r}")
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise SchemaError(f"{path}.edges[{k}][2]", "multiplicity must be a positive integer")
        edges.append((x, y, m))
    indeterminacy = _require(doc, "indeterminacy", path, list, optional=True, default=[])
    for k, x in enumerate(indeterminacy):
        if x not in source._index:
            raise SchemaError(f"{path}.indeterminacy[{k}]", f"unknown source label {x!r}")
    degree = _require(doc, "generic_degree", path, int, optional=True, default=1)
    raw_limits = _require(doc, "limit_fibers", path, dict, optional=True, default={})
    limit_fibers = {}
    for y, pairs in raw_limits.items():
        if y not in target._index:
            raise SchemaError(f"{path}.limit_fibers.{y}", "unknown target label")
        if not isinstance(pairs, list):
            raise SchemaError(f"{path}.limit_fibers.{y}", "expected a list of [source, weight]")
        entries = []
        for k, pair in enumerate(pairs):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise SchemaError(f"{path}.limit_fibers.{y}[{k}]", "expected [source, weight]")
            x, w = pair
            if x not in source._index:
                raise SchemaError(f"{path}.limit_fibers.{y}[{k}][0]", f"unknown source label {x!r}")
            entries.append((x, _number(w, f"{path}.limit_fibers.{y}[{k}][1]")))
        limit_fibers[y] = entries
    same_dimension = _require(doc, "same_dimension", path, bool, optional=True, default=True)
    if source == target:
        return EndoCorrespondence(source, edges, indeterminacy, degree,
                                  limit_fibers or None, same_dimension)
    return Correspondence(source, target, edges, indeterminacy, degree,
                          limit_fibers or None, same_dimension)


def load_family(doc, path="$"):
    space = load_space(_require(doc, "space", path, dict), f"{path}.space")
    members = [
        load_measure(m, space, f"{path}.members[{k}]")
        for k, m in enumerate(_require(doc, "members", path, list))
    ]
    limits = [
        load_measure(m, space, f"{path}.declared_limits[{k}]")
        for k, m in enumerate(
            _require(doc, "declared_limits", path, list, optional=True, default=[])
        )
    ]
    number = _require(doc, "intersection_number", path, (int, float), optional=True)
    return SignedFamily(space, members, limits,
                        None if number is None else float(number))


# -- emission ----------------------------------------------------------


def dump_space(space):
    doc = {"points": list(space.points)}
    if space.named_subsets:
        doc["subsets"] = {
            name: [space.points[i] for i in sorted(idx)]
            for name, idx in sorted(space.named_subsets.items())
        }
    if space.metric is not None:
        doc["metric"] = space.metric.tolist()
    return doc


def dump_measure(measure):
    return {
        "weights": {
            measure.space.points[i]: float(w)
            for i, w in enumerate(measure.weights)
            if w != 0
        }
    }


def dump_submeasure(mu):
    return {"generators": [dump_measure(g) for g in mu.generators]}


def dump_correspondence(corr):
    doc = {
        "source": dump_space(corr.source),
        "target": dump_space(corr.target),
        "edges": [
            [corr.source.points[i], corr.target.points[j], m]
            for i, j, m in corr.edges
        ],
        "indeterminacy": sorted(corr.source.points[i] for i in corr.indeterminacy),
        "generic_degree": corr.generic_degree,
        "same_dimension": corr.same_dimension,
    }
    if corr.limit_fibers:
        doc["limit_fibers"] = {
            corr.target.points[j]: [[corr.source.points[i], w] for i, w in entries]
            for j, entries in sorted(corr.limit_fibers.items())
        }
    return doc


def dump_family(family):
    return {
        "space": dump_space(family.space),
        "members": [dump_measure(m) for m in family.members],
        "declared_limits": [dump_measure(m) for m in family.declared_limits],
        "intersection_number": family.intersection_number,
    }


def canonical_json(doc):
    """Deterministic byte encoding used for reports and digests."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    except OSError as exc:
        raise SchemaError(str(path), f"cannot read file: {exc.strerror}") from exc
