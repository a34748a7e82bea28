"""Python interface to the hopflab core library."""

import json as _json

from . import _core
from ._core import (
    DEFAULT_SEED,
    HopflabError,
    Spec,
    flow,
    invariant_dimension,
    kodaira_dimension,
    plurigenus,
    potential,
    verify_real_part,
)

__version__ = _core.__version__

__all__ = [
    "DEFAULT_SEED",
    "HopflabError",
    "Spec",
    "analyze",
    "flow",
    "invariant_dimension",
    "invariants",
    "kodaira",
    "kodaira_dimension",
    "load_spec",
    "plurigenus",
    "potential",
    "potential_report",
    "relation_lattice",
    "verify_lee",
    "verify_real_part",
]


def load_spec(spec):
    """Builds a Spec from a dict, a JSON string or an existing Spec."""
    if isinstance(spec, Spec):
        return spec
    if isinstance(spec, dict):
        spec = _json.dumps(spec)
    return Spec.from_json(spec)


def relation_lattice(spec, tolerance=None):
    return _json.loads(_core.relation_lattice(load_spec(spec), tolerance))


def analyze(spec, invariants=((1, 1),), lam=None, samples=8, seed=DEFAULT_SEED, tolerance=None):
    return _json.loads(
        _core.analyze_report(load_spec(spec), [tuple(p) for p in invariants], lam, samples, seed, tolerance)
    )


def invariants(spec, k, l, list=False, tolerance=None):
    return _json.loads(_core.invariants_report(load_spec(spec), k, l, list, tolerance))


def potential_report(spec, lam, at=None, samples=20, psd_threshold=False, seed=DEFAULT_SEED):
    return _json.loads(_core.potential_report(load_spec(spec), lam, at, samples, psd_threshold, seed))


def verify_lee(spec, field, at=None):
    if not isinstance(field, str):
        field = _json.dumps(field)
    return _json.loads(_core.verify_lee_report(load_spec(spec), field, at))


def kodaira(spec, max_k=10, verify_degree=20):
    return _json.loads(_core.kodaira_report(load_spec(spec), max_k, verify_degree))
