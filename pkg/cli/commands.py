"""Run orchestration for the command line: execute a config and write every artifact."""

import logging
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Union

from harness import (
    ExperimentConfig,
    ReplicationResult,
    SummaryStats,
    curves_frame,
    epsilon_grid_best,
    replication_seed,
    run_experiment,
    sensitivity_sweep,
)
from harness.constants import STEP_COLUMNS, SUMMARY_COLUMNS, CURVE_COLUMNS
from environments import TRAJECTORY_COLUMNS
from observability import update_trace_context
from policies.constants import PARAM_TARGETS
from .config_parser import ConfigError, emit_config, parse_config
from .writers import CsvAppender, OutputError, RunManifest, emit_csv, write_manifest, write_text

logger = logging.getLogger(__name__)

__version__ = "0.1.0"

STEPS_FILE = "steps.csv"
SUMMARY_FILE = "summary.csv"
CURVES_FILE = "curves.csv"
TRAJECTORIES_FILE = "trajectories.csv"
MANIFEST_FILE = "manifest.json"
CONFIG_FILE = "config.txt"


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read and parse an experiment file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e.strerror or e}") from None
    return parse_config(text)


class _Sinks:
    """Per-replication writers for the step log and, once per replication, the trajectory."""

    def __init__(self, out_dir: Path, config: ExperimentConfig):
        self.every = config.steps_every
        self.steps = CsvAppender(out_dir / STEPS_FILE, STEP_COLUMNS) if self.every > 0 else None
        self.trajectories = (
            CsvAppender(out_dir / TRAJECTORIES_FILE, TRAJECTORY_COLUMNS) if config.export_trajectories else None
        )
        self._trajectory_reps = set()

    def __call__(self, result: ReplicationResult) -> None:
        if self.steps is not None:
            self.steps.append(result.to_frame(self.every))
        if self.trajectories is not None and result.rep not in self._trajectory_reps:
            self.trajectories.append(result.trajectory.to_frame(result.rep))
            self._trajectory_reps.add(result.rep)

    def entries(self):
        return [w.entry() for w in (self.steps, self.trajectories) if w is not None]


def run_all(config: ExperimentConfig, sink=None) -> List[SummaryStats]:
    """
    Every summary a config asks for: sweep variants, the remaining policies
    once, and the best grid epsilon-Greedy when a grid is set.
    """
    summaries: List[SummaryStats] = []
    if config.sweeps:
        swept = set()
        for sweep in config.sweeps:
            summaries += sensitivity_sweep(config, sweep.parameter, sweep.values, include_baselines=False, step_sink=sink)
            swept.update(PARAM_TARGETS[sweep.parameter])
        rest = [p for p in config.policies if p.name not in swept]
        if rest:
            summaries += run_experiment(config.with_policies(rest), step_sink=sink)
    else:
        summaries += run_experiment(config, step_sink=sink)

    if config.epsilon_grid:
        _, best = epsilon_grid_best(config, config.epsilon_grid, step_sink=sink)
        summaries.append(best)
    return summaries


def execute(config: ExperimentConfig, out_dir: Union[str, Path], preset_name: Optional[str] = None) -> RunManifest:
    """
    Run a config and write steps, summary, curves, optional trajectories,
    the config echo and the manifest into out_dir.

    Raises:
        OutputError: output directory or a file could not be written
    """
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.error(f"Failed to create output directory {out}: {e}")
        raise OutputError(out, str(e)) from e

    update_trace_context(
        name=f"driftbandit:{preset_name or 'config'}",
        tags=[preset_name] if preset_name else None,
        metadata={"out_dir": str(out)},
    )
    started_at = datetime.now(timezone.utc).isoformat()
    started = time.perf_counter()
    config_text = emit_config(config)

    sinks = _Sinks(out, config)
    summaries = run_all(config, sinks)

    outputs = sinks.entries()
    outputs.append(emit_csv(summaries, out / SUMMARY_FILE, SUMMARY_COLUMNS))
    outputs.append(emit_csv(curves_frame(summaries), out / CURVES_FILE, CURVE_COLUMNS))
    outputs.append(write_text(config_text, out / CONFIG_FILE))

    manifest = RunManifest(
        version=__version__,
        preset=preset_name,
        config=config_text,
        master_seed=config.seed,
        replication_seeds=[replication_seed(config.seed, rep) for rep in range(config.replications)],
        started_at=started_at,
        duration_seconds=round(time.perf_counter() - started, 3),
        outputs=outputs,
    )
    write_manifest(manifest, out / MANIFEST_FILE)
    logger.info(f"Run complete: {len(summaries)} summaries in {out}")
    return manifest
