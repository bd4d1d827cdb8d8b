"""Replication loop: one shared trajectory, every configured policy, Bernoulli feedback."""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional

import numpy as np
import pandas as pd

from environments import TrajectoryLog, generate_trajectory, reward_matrix, sample_reward
from observability import traced, update_trace_context
from policies import Oracle, Policy, build_policy
from .config import ExperimentConfig, HarnessConfig, PolicySpec
from .constants import STEP_COLUMNS, STREAM_TRAJECTORY, STREAM_REWARDS, STREAM_DECISIONS, STREAM_COMMON_REWARDS
from .seeding import stream
from .summary import SummaryAccumulator, SummaryStats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StepRecord:
    """One decision of one policy."""

    rep: int
    policy: str
    t: int
    arm: int
    reward: int
    mu_chosen: float
    mu_opt: float
    regret_inst: float
    regret_cum: float
    correct: bool


@dataclass
class PolicyRun:
    """Per-step arrays of one policy over one replication (index t - 1)."""

    label: str
    policy_name: str
    arms: np.ndarray
    rewards: np.ndarray
    mu_chosen: np.ndarray
    mu_opt: np.ndarray

    @property
    def regret_inst(self) -> np.ndarray:
        return self.mu_opt - self.mu_chosen

    @property
    def regret_cum(self) -> np.ndarray:
        return np.cumsum(self.regret_inst)

    @property
    def correct(self) -> np.ndarray:
        return self.mu_chosen == self.mu_opt

    @property
    def total_regret(self) -> float:
        return float(self.regret_inst.sum())


@dataclass
class ReplicationResult:
    rep: int
    trajectory: TrajectoryLog
    runs: Dict[str, PolicyRun] = field(default_factory=dict)

    def records(self, label: Optional[str] = None) -> Iterator[StepRecord]:
        """StepRecords in configuration order (arms 0-based)."""
        labels = [label] if label is not None else list(self.runs)
        for name in labels:
            run = self.runs[name]
            inst, cum, correct = run.regret_inst, run.regret_cum, run.correct
            for i in range(len(run.arms)):
                yield StepRecord(
                    rep=self.rep,
                    policy=run.label,
                    t=i + 1,
                    arm=int(run.arms[i]),
                    reward=int(run.rewards[i]),
                    mu_chosen=float(run.mu_chosen[i]),
                    mu_opt=float(run.mu_opt[i]),
                    regret_inst=float(inst[i]),
                    regret_cum=float(cum[i]),
                    correct=bool(correct[i]),
                )

    def to_frame(self, every: int = 1) -> pd.DataFrame:
        """Step log in CSV layout (arms 1-based), keeping every `every`-th step."""
        frames = []
        for run in self.runs.values():
            horizon = len(run.arms)
            keep = np.arange(every - 1, horizon, every) if every > 1 else slice(None)
            frames.append(pd.DataFrame({
                "rep": self.rep,
                "policy": run.label,
                "t": np.arange(1, horizon + 1)[keep],
                "arm": run.arms[keep] + 1,
                "reward": run.rewards[keep],
                "mu_chosen": run.mu_chosen[keep],
                "mu_opt": run.mu_opt[keep],
                "regret_inst": run.regret_inst[keep],
                "regret_cum": run.regret_cum[keep],
                "correct": run.correct[keep].astype(np.int8),
            }, columns=STEP_COLUMNS))
        if not frames:
            return pd.DataFrame(columns=STEP_COLUMNS)
        return pd.concat(frames, ignore_index=True)


def run_policy(
    policy: Policy,
    spec: PolicySpec,
    trajectory: TrajectoryLog,
    reward_rng: np.random.Generator,
    rewards: Optional[np.ndarray] = None,
) -> PolicyRun:
    """
    Drive one policy through the whole horizon.

    Rewards come from `rewards[t - 1, arm]` when a common table is given and
    from a Bernoulli draw on `reward_rng` otherwise.
    """
    horizon, num_arms = trajectory.means.shape
    arms = np.empty(horizon, dtype=np.int64)
    ys = np.empty(horizon, dtype=np.int8)
    for t in range(1, horizon + 1):
        arm = policy.choose(t)
        if not 0 <= arm < num_arms:
            raise RuntimeError(f"policy '{spec.label}' chose arm {arm} outside [0, {num_arms - 1}] at t={t}")
        if rewards is not None:
            y = int(rewards[t - 1, arm])
        else:
            y = sample_reward(trajectory.means[t - 1, arm], reward_rng)
        policy.feed(arm, y, t)
        arms[t - 1] = arm
        ys[t - 1] = y
    steps = np.arange(horizon)
    return PolicyRun(
        label=spec.label,
        policy_name=spec.name,
        arms=arms,
        rewards=ys,
        mu_chosen=trajectory.means[steps, arms],
        mu_opt=trajectory.optimal_means,
    )


def run_replication(config: ExperimentConfig, rep_id: int) -> ReplicationResult:
    """
    Run every configured policy on one freshly generated trajectory.

    Raises:
        ValueError: horizon shorter than the longest burn-in
    """
    num_arms = config.num_arms
    longest = max(spec.burn_in for spec in config.policies)
    if config.horizon < num_arms * longest:
        raise ValueError(f"horizon {config.horizon} is shorter than the burn-in of {num_arms * longest} steps")

    trajectory = generate_trajectory(
        config.env.build(), config.horizon, stream(config.seed, rep_id, STREAM_TRAJECTORY)
    )
    rewards = None
    if config.common_random_numbers:
        rewards = reward_matrix(trajectory, stream(config.seed, rep_id, STREAM_COMMON_REWARDS))

    result = ReplicationResult(rep=rep_id, trajectory=trajectory)
    for spec in config.policies:
        policy = build_policy(
            spec.name,
            spec.params,
            num_arms,
            stream(config.seed, rep_id, STREAM_DECISIONS, spec.seed_key),
            horizon=config.horizon,
            switch_points=trajectory.switch_points,
        )
        if isinstance(policy, Oracle):
            policy.bind(trajectory.optimal)
        result.runs[spec.label] = run_policy(
            policy, spec, trajectory, stream(config.seed, rep_id, STREAM_REWARDS, spec.seed_key), rewards
        )
    return result


@traced("run_experiment")
def run_experiment(
    config: ExperimentConfig,
    step_sink: Optional[Callable[[ReplicationResult], None]] = None,
    max_workers: Optional[int] = None,
) -> List[SummaryStats]:
    """
    Run all replications and summarize each policy.

    Replications execute concurrently, but results are reduced (and passed to
    `step_sink`) strictly in replication order, so outputs depend only on the
    config and master seed.
    """
    workers = max(1, min(max_workers or HarnessConfig.THREADS, config.replications))
    update_trace_context(metadata={
        "env": config.env.model,
        "horizon": config.horizon,
        "replications": config.replications,
        "seed": config.seed,
        "policies": [p.label for p in config.policies],
    })
    logger.info(
        f"Running {config.replications} replications of {config.env.model} "
        f"(T={config.horizon}, arms={config.num_arms}, policies={len(config.policies)}, workers={workers})"
    )
    started = time.perf_counter()
    accumulators = {spec.label: SummaryAccumulator(spec.label, spec.name, config.horizon) for spec in config.policies}

    def _run(rep_id: int) -> ReplicationResult:
        return run_replication(config, rep_id)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        for done, result in enumerate(executor.map(_run, range(config.replications)), start=1):
            for label, run in result.runs.items():
                accumulators[label].add(run)
            if step_sink is not None:
                step_sink(result)
            if done % 10 == 0 or done == config.replications:
                logger.info(f"Completed {done}/{config.replications} replications")

    elapsed = time.perf_counter() - started
    logger.info(f"Experiment finished in {elapsed:.1f}s")
    return [acc.finalize() for acc in accumulators.values()]
