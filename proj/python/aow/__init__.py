"""Open world simulator, evaluation harness and adaptation metrics.

Settings are passed as a ``{key: value}`` dict using the same keys as the
``aow`` config file (see ``aow.config_text()`` for the full list).
"""

from ._core import (
    AdaptationReport,
    ConfigError,
    ContractViolation,
    EpisodeResult,
    InsufficientData,
    IoError,
    ProtocolError,
    adaptation_report,
    alpha_beta,
    audit_live_trace,
    config_text,
    gamma,
    merge,
    rate_curve,
    replay,
    run_episode,
    world_hash,
)

__all__ = [
    "AdaptationReport",
    "ConfigError",
    "ContractViolation",
    "EpisodeResult",
    "InsufficientData",
    "IoError",
    "ProtocolError",
    "adaptation_report",
    "alpha_beta",
    "audit_live_trace",
    "config_text",
    "gamma",
    "merge",
    "rate_curve",
    "replay",
    "run_episode",
    "world_hash",
]
