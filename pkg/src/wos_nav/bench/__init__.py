"""Experiment harness: scene/spec configs, runners, CSV/SVG artifacts."""

from .config import ConfigError, Scene, build_scene, parse_config
from .experiments import (EXPERIMENT_NAMES, ExperimentSpec, RunRecord,
                          emit_plot, fit_loglog_slope, load_record,
                          run_experiment, spec_from_config)

__all__ = [
    "ConfigError",
    "EXPERIMENT_NAMES",
    "ExperimentSpec",
    "RunRecord",
    "Scene",
    "build_scene",
    "emit_plot",
    "fit_loglog_slope",
    "load_record",
    "parse_config",
    "run_experiment",
    "spec_from_config",
]
