"""Sampling-based certificates for composite convex problems.

Thin wrapper over the compiled extension: estimation and audit results come
back as dicts decoded from the library's canonical JSON rendering.
"""

import json as _json

from ._proxcert import (
    Error,
    GenerationError,
    InputError,
    ModelError,
    NumericalError,
    Problem,
    SamplingError,
    families,
    load_problem,
    make,
    problem_from_json,
    save_problem,
    solve,
)
from . import _proxcert as _core

__all__ = [
    "Error",
    "GenerationError",
    "InputError",
    "ModelError",
    "NumericalError",
    "Problem",
    "SamplingError",
    "estimate",
    "families",
    "load_problem",
    "make",
    "problem_from_json",
    "save_problem",
    "solve",
    "verify",
]


def estimate(problem, property, variant="auto", gamma=None, omega=None,
             samples=10000, seed=0):
    """Estimate a property constant by sampling; returns the result dict."""
    return _json.loads(_core.estimate(problem, property, variant=variant,
                                      gamma=gamma, omega=omega,
                                      samples=samples, seed=seed))


def verify(problem, suite, gamma=None, omega=None, samples=10000, iters=500,
           tol=0.0, seed=0, x0=None):
    """Run an audit suite; returns the report dict."""
    return _json.loads(_core.verify(problem, suite, gamma=gamma, omega=omega,
                                    samples=samples, iters=iters, tol=tol,
                                    seed=seed, x0=x0))
