"""Python front end for the p-power Moreau envelope toolkit.

Problems are plain dicts matching the CLI spec format:

    {"space": {"dim": 1, "norm": "euclidean"},
     "fn": {"fn": "one_norm"}, "p": 2.0, "eps": 1.0, "u": [3.0]}
"""

import json

from . import _core
from ._core import SchemaError, SolverFailure

__all__ = [
    "SchemaError",
    "SolverFailure",
    "norm",
    "dual_norm",
    "duality_map",
    "prox",
    "envelope_value",
    "eps_derivative",
    "sweep_eps",
    "envelope_conjugate",
    "minimizing_movement",
    "lax_oleinik",
    "verify",
]


def norm(space, v):
    return _core.norm(json.dumps(space), list(v))


def dual_norm(space, xi):
    return _core.dual_norm(json.dumps(space), list(xi))


def duality_map(space, p, v):
    return _core.duality_map(json.dumps(space), float(p), list(v))


def prox(problem):
    """Proximal point, envelope value, derivative and certified gap."""
    return json.loads(_core.prox(json.dumps(problem)))


def envelope_value(problem):
    return _core.envelope_value(json.dumps(problem))


def eps_derivative(problem):
    return _core.eps_derivative(json.dumps(problem))


def sweep_eps(problem, eps_list):
    """Convergence profile over a strictly decreasing eps list."""
    return json.loads(_core.sweep_eps(json.dumps(problem), list(eps_list)))


def envelope_conjugate(problem, xi, lo=-20.0, hi=20.0, points_per_axis=2001):
    """(analytic, numeric) conjugate of the envelope at xi."""
    return _core.envelope_conjugate(json.dumps(problem), list(xi), lo, hi, points_per_axis)


def minimizing_movement(problem, steps):
    """Implicit-Euler trajectory; eps is the time step, u the initial state."""
    return json.loads(_core.minimizing_movement(json.dumps(problem), int(steps)))


def lax_oleinik(problem, lo, hi, points_per_axis, t_values):
    """Space-time value field u(t, x); includes the PDE residual when
    three or more uniformly spaced times are given."""
    return json.loads(
        _core.lax_oleinik(json.dumps(problem), lo, hi, points_per_axis, list(t_values))
    )


def verify(seed=42):
    """Full invariant suite; deterministic for a fixed seed."""
    return json.loads(_core.verify(seed))
