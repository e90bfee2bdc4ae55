"""End-to-end analysis of a built operator: metric, determinant factors,
closure verdict, gauge exponents, curvature summary."""

from __future__ import annotations

from fractions import Fraction

from .errors import DegenerateMetric
from .geometry import (
    closure_check,
    curvature,
    default_gauge_candidates,
    harvest_factors,
    invert_metric,
    solve_gauge,
)
from .hamiltonian import HamiltonianForm, extract_metric, laplace_decompose
from .serialize import frac_str, poly_to_json, ratfunc_to_json


def analyze_hamiltonian(H: HamiltonianForm, with_curvature=True):
    """Returns (analysis dict, objects dict); the dict is JSON-ready, the
    objects carry the exact intermediates for further computation."""
    g = extract_metric(H)
    M = invert_metric(g)
    V, U = laplace_decompose(g, H)
    omega, closed = closure_check(M, V)
    gauge = solve_gauge(omega, metric=M) if closed else None
    det_factors = harvest_factors([M.det_contra])
    report = {
        "schema": "qes/1",
        "metric": [[poly_to_json(g[i][j]) for j in range(3)] for i in range(3)],
        "det_contra": ratfunc_to_json(M.det_contra),
        "det_factors": [str(f) for f in det_factors],
        "potential": str(U),
        "vector_field": [str(v) for v in V],
        "closure": bool(closed),
        "gauge": None,
        "curvature": None,
    }
    objs = {"metric": g, "metric_data": M, "V": V, "U": U, "omega": omega, "gauge": gauge}
    if gauge is not None:
        report["gauge"] = {
            "lambda_exponents": [[str(f), frac_str(c)] for f, c in gauge.terms],
            "mu_exponents": [[str(f), frac_str(c)] for f, c in gauge.mu_exponents],
        }
    if with_curvature:
        rep = curvature(M)
        objs["curvature"] = rep
        nonzero = {"".join("xyz"[i] for i in key): str(v) for key, v in rep.riemann.items()}
        report["curvature"] = {
            "is_flat": rep.is_flat,
            "scalar": str(rep.scalar),
            "nonzero_lowered_components": nonzero,
            "convention": rep.convention,
        }
    return report, objs
