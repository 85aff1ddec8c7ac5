"""Python bindings for the recomp redistricting engine."""

import json as _json

from ._recomp import (  # noqa: F401
    ConfigError,
    DataError,
    InfeasibleError,
    __version__,
    band_count,
    band_requirement,
    efficiency_gap_simplified,
    eg_swing_profile,
    mean_median,
    opt2_score,
    prescribed_seats,
    seats,
)
from . import _recomp


def synth_grid(**spec):
    """Grid graph document (a dict) from grid-spec keywords."""
    return _json.loads(_recomp.synth_grid(_json.dumps(spec)))


def enumerate_count(graph, k, epsilon):
    return _recomp.enumerate_count(_json.dumps(graph), k, epsilon)


def run_chain(graph, **config):
    """Neutral chain records (list of dicts) for a graph document."""
    return _recomp.run_chain(_json.dumps(graph), _json.dumps(config))


def run(manifest):
    """Execute a run manifest dict; returns the progress log."""
    return _recomp.run(_json.dumps(manifest))
