"""Plane sets, geodesic distances, F-derivatives and completeness checks.

Structured results come back from the native module as JSON text and are
decoded here into plain dicts.
"""

import json

from ._planefn import (
    DomainError,
    FunctionExpr,
    ParameterError,
    PlaneSet,
    PolyPath,
    PreconditionError,
    UnreachableError,
    cantor_function,
    gallery_names,
    geodesic_length,
    path_integral,
    raster_geodesic,
    star_centre,
    suite_names,
    zpow_bound,
    zpow_direct_quotient,
)
from . import _planefn

__all__ = [
    "DomainError",
    "FunctionExpr",
    "ParameterError",
    "PlaneSet",
    "PolyPath",
    "PreconditionError",
    "UnreachableError",
    "cantor_function",
    "completeness_report",
    "ftc_check",
    "gallery",
    "gallery_names",
    "geodesic",
    "geodesic_length",
    "load_set",
    "path_integral",
    "raster_geodesic",
    "regularity",
    "run_suite",
    "star_centre",
    "suite_names",
    "zpow_bound",
    "zpow_direct_quotient",
]


def gallery(kind, depth, **params):
    """Materialize a gallery set; keyword params use the JSON parameter names."""
    return _planefn.materialize(kind, depth, json.dumps(params) if params else "")


def load_set(source):
    """Build a PlaneSet from a dict, a JSON string or a path to a JSON file."""
    if isinstance(source, dict):
        return PlaneSet.from_json(json.dumps(source))
    text = str(source)
    if not text.lstrip().startswith("{"):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    return PlaneSet.from_json(text)


def geodesic(plane_set, z, w):
    return json.loads(_planefn.geodesic_json(plane_set, complex(z), complex(w)))


def regularity(plane_set, z, witnesses):
    return json.loads(_planefn.regularity_json(plane_set, complex(z), [complex(p) for p in witnesses]))


def ftc_check(f, fprime, path, tol=1e-9):
    return json.loads(_planefn.ftc_json(f, fprime, path, tol))


def completeness_report(plane_set, probes):
    return json.loads(_planefn.completeness_json(plane_set, [complex(p) for p in probes]))


def run_suite(name, seed=0, depth=None):
    return json.loads(_planefn.run_suite_json(name, seed, depth))
