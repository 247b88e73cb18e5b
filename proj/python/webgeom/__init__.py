"""Chern connections of planar 3-webs, heavenly equations, and their checks.

Every function mirrors a CLI subcommand and returns the same JSON report as a
plain dict.  Problem documents may be passed as dicts or as JSON text.
"""

import json

from . import _core

COMMANDS = (
    "verify-web",
    "heavenly-residual",
    "eq1-check",
    "lax-check",
    "ode-invariants",
    "gauge-residual",
    "biham-check",
    "solve",
)


def run(command, spec, *, points=10, tol=1e-9, seed=12345, t_samples=(),
        degree=6, ttilde="", timing=False):
    """Run one subcommand on a problem document and return the report dict."""
    if not isinstance(spec, str):
        spec = json.dumps(spec)
    text = _core.run_json(command, spec, points=points, tol=tol, seed=seed,
                          t_samples=[str(t) for t in t_samples], degree=degree,
                          ttilde=ttilde, timing=timing)
    return json.loads(text)


def solve(theta, degree=6):
    """Solve the planar heavenly equation degree by degree from a cubic seed."""
    return json.loads(_core.solve_json(theta, degree=degree))


def certify(solution):
    """Re-check a solution document; returns the certificate dict."""
    if not isinstance(solution, str):
        solution = json.dumps(solution)
    return json.loads(_core.certify_json(solution))


def simplify(expr):
    """Parse and simplify an expression string."""
    return _core.simplify(expr)
