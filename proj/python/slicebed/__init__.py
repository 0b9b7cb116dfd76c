"""Trust-aware multi-operator slice embedding: thin wrappers over the C++ core."""

import json

from . import _slicebed
from ._slicebed import InputError

__all__ = ["InputError", "run_cli", "generate", "solve", "check", "simulate"]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def run_cli(*args):
    """Runs the command line in process; returns (exit_code, stdout, stderr)."""
    return _slicebed.run_cli([str(a) for a in args])


def generate(seed, operators=3, nodes_per_operator=10, utilization=0.6):
    return json.loads(_slicebed.generate(seed, operators, nodes_per_operator, utilization))


def solve(scenario, request, engine="pl", k_paths=8, pricing="static"):
    return json.loads(_slicebed.solve(_text(scenario), _text(request), engine, k_paths, pricing))


def check(scenario, request, embedding):
    """Violations of `embedding` on an idle network; empty when feasible."""
    return _slicebed.check(_text(scenario), _text(request), _text(embedding))


def simulate(scenario, engine="pl", pricing="static", k_paths=8, seed=1, horizon=0.0):
    return json.loads(_slicebed.simulate(_text(scenario), engine, pricing, k_paths, seed, horizon))
