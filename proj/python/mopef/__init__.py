"""Proper-efficiency certificates, scalarizations and transform audits.

Instances, specs, grids, schedules and transforms use the same JSON shapes as
the command-line tool; pass them as dicts. Infinite values come back as the
strings "+inf" / "-inf".
"""

import json

from . import _core
from ._core import MopefError, cone_membership, evaluate

__all__ = [
    "MopefError",
    "certify",
    "solve",
    "check_param_validity",
    "validate",
    "sweep",
    "cover_conic",
    "divergence_study",
    "check_unbounded",
    "apply_transform",
    "compare_proper_sets",
    "check_jacobian_conditions",
    "zarepisheh_conditions",
    "cone_membership",
    "evaluate",
    "run_cli",
]


def _s(obj):
    return json.dumps(obj)


def certify(instance, label, method="all"):
    return json.loads(_core.certify(_s(instance), label, method))


def solve(instance, spec):
    return json.loads(_core.solve(_s(instance), _s(spec)))


def check_param_validity(spec, instance=None):
    return json.loads(_core.check_param_validity(_s(spec), None if instance is None else _s(instance)))


def validate(instance):
    return json.loads(_core.validate(_s(instance)))


def sweep(instance, grid):
    return json.loads(_core.sweep(_s(instance), _s(grid)))


def cover_conic(instance, delta_cap=1e3):
    return json.loads(_core.cover_conic(_s(instance), delta_cap))


def divergence_study(analytic, anchors, schedule):
    return json.loads(_core.divergence_study(_s(analytic), _s(anchors), _s(schedule)))


def check_unbounded(analytic, spec, schedule):
    return json.loads(_core.check_unbounded(_s(analytic), _s(spec), _s(schedule)))


def apply_transform(transform, instance):
    return json.loads(_core.apply_transform(_s(transform), _s(instance)))


def compare_proper_sets(instance, transform, schedule=None, anchors=None):
    """Finite instance when `schedule` is None, otherwise an analytic instance."""
    if schedule is None:
        return json.loads(_core.compare_discrete(_s(instance), _s(transform)))
    return json.loads(_core.compare_analytic(_s(instance), _s(transform), _s(schedule), _s(anchors or [])))


def check_jacobian_conditions(transform, density=11, inverse=False):
    return json.loads(_core.check_jacobian_conditions(_s(transform), density, inverse))


def zarepisheh_conditions(transform, instance, grid=201):
    return json.loads(_core.zarepisheh_conditions(_s(transform), _s(instance), grid))


def run_cli(args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli(list(args))
