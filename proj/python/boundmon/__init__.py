"""Safety monitoring of uncertain linear systems from sparse logs."""

import json

from ._boundmon import (
    Config,
    ConfigError,
    DimensionError,
    Log,
    LogError,
    System,
    Trace,
    Zonotope,
    intersects,
)
from ._boundmon import _offline_json, _online_json

__all__ = [
    "Config",
    "ConfigError",
    "DimensionError",
    "Log",
    "LogError",
    "System",
    "Trace",
    "Zonotope",
    "intersects",
    "monitor_offline",
    "monitor_online",
]


def monitor_offline(config, log, threads=1):
    """Verdict document for a recorded log, as a dict."""
    return json.loads(_offline_json(config, log, threads))


def monitor_online(config, trace, horizon=None):
    """Online report for a trace observed through the config's sensor radius."""
    return json.loads(_online_json(config, trace, trace.horizon if horizon is None else horizon))
