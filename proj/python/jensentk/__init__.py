"""Numerical checks of body-vs-boundary mean inequalities for convex functions.

The core question, for a convex body X and convex function f: is the mean of
f over X always at most its mean over the boundary of X?  This package
computes both means with certified error bounds, reports per-function
verdicts, checks the cone and insphere upper bounds, and searches for
violating max-affine functions.

Shapes and functions are opaque handles built by the factory functions below;
structured results come back as plain dictionaries mirroring the JSON report
format of the command line tool.
"""

import json as _json

from ._core import (
    ConvexFn,
    Shape,
    affine,
    affine_worst_case,
    ball,
    body_centroid,
    boundary_centroid,
    cone,
    coordproj,
    describe,
    describe_shape,
    expaffine,
    maxaffine,
    parallelotope,
    pnorm,
    polytope,
    quadform,
    report_csv,
    shape_from_json,
    shape_to_json,
    standard_suite,
    surface,
    volume,
    zoo,
    zoo_catalog,
)
from . import _core as _c

__all__ = [
    "ConvexFn",
    "Shape",
    "affine",
    "affine_worst_case",
    "ball",
    "body_centroid",
    "boundary_centroid",
    "centroid_report",
    "chebyshev_center",
    "cone",
    "cone_bound",
    "coordproj",
    "describe",
    "describe_shape",
    "expaffine",
    "functions_from_json",
    "functions_to_json",
    "insphere_bound",
    "jensen_gap",
    "jensen_verdict",
    "maxaffine",
    "maxaffine_search",
    "mean_over_body",
    "mean_over_boundary",
    "parallelotope",
    "pnorm",
    "polytope",
    "quadform",
    "report_csv",
    "shape_from_json",
    "shape_to_json",
    "standard_suite",
    "surface",
    "volume",
    "zoo",
    "zoo_catalog",
]


def functions_from_json(text):
    """Parse a JSON array of function objects into ConvexFn handles."""
    return _c.functions_from_json(text)


def functions_to_json(fns):
    """Serialize a list of ConvexFn handles to a JSON array string."""
    return _c.functions_to_json(fns)


def centroid_report(shape):
    """Body and boundary centroids with their euclidean gap."""
    return _json.loads(_c.centroid_report_json(shape))


def chebyshev_center(shape):
    """Largest inscribed ball of a polytope-backed shape, with tangency info."""
    return _json.loads(_c.chebyshev_center_json(shape))


def mean_over_body(shape, fn, eps=1e-6, mc_eps=1e-4, seed=0):
    """Mean of fn over the solid shape, with a certified error bound."""
    return _json.loads(_c.mean_over_body_json(shape, fn, eps, mc_eps, seed))


def mean_over_boundary(shape, fn, eps=1e-6, mc_eps=1e-4, seed=0):
    """Mean of fn over the boundary surface, with a certified error bound."""
    return _json.loads(_c.mean_over_boundary_json(shape, fn, eps, mc_eps, seed))


def jensen_gap(shape, fn, eps=1e-6, mc_eps=1e-4, seed=0):
    """Boundary mean minus body mean with verdict holds|violated|inconclusive."""
    return _json.loads(_c.jensen_gap_json(shape, fn, eps, mc_eps, seed))


def jensen_verdict(shape, suite, eps=1e-6, mc_eps=1e-4, seed=0):
    """Full report over a function suite: per-function gaps plus diagnostics."""
    return _json.loads(_c.jensen_verdict_json(shape, suite, eps, mc_eps, seed))


def cone_bound(shape, fn, eps=1e-6, mc_eps=1e-4, seed=0):
    """Cone mean versus its base/apex upper bound."""
    return _json.loads(_c.cone_bound_json(shape, fn, eps, mc_eps, seed))


def insphere_bound(shape, fn, eps=1e-6, mc_eps=1e-4, seed=0):
    """Body mean versus the insphere upper bounds (tangent polytopes only)."""
    return _json.loads(_c.insphere_bound_json(shape, fn, eps, mc_eps, seed))


def maxaffine_search(shape, pieces=2, restarts=8, budget=10000, seed=0):
    """Pattern search for a violating max-affine function; returns the trace."""
    return _json.loads(_c.maxaffine_search_json(shape, pieces, restarts, budget, seed))
