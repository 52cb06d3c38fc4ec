"""Exact conformal-algebra kernel. Structured results are decoded from JSON."""

import json as _json

from . import _core
from ._core import (
    DescriptorError,
    UnknownCheck,
    lambda_product,
    list_checks,
    n_product,
    poly,
    poly_mul,
    substitute,
)

__version__ = _core.__version__


def run(checks="*", deg_bound=4, solver_deg=6, samples=200, seed=0):
    return _json.loads(_core.run(checks, deg_bound, solver_deg, samples, seed))


def cocycle_check(case, bound=3):
    return _json.loads(_core.cocycle_check(case, bound))


def obstruction_check(case, bound=3):
    return _json.loads(_core.obstruction_check(case, bound))


def coboundary_solve(case, deg_bound=4, solver_deg=6):
    return _json.loads(_core.coboundary_solve(case, deg_bound, solver_deg))


def verify_relations(n):
    return _json.loads(_core.verify_relations(n))


def independence_check(n, s_max, t_max):
    return _json.loads(_core.independence_check(n, s_max, t_max))
