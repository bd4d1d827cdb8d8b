"""Expected-reward models, trajectories and reward sampling."""

from .models import (
    EnvModel,
    FixedMeans,
    SmallChange,
    ExponentialClock,
    ReflectingWalk,
    LogisticWalk,
    reflect,
    step_mean,
    build_model,
    cycle_arm_params,
)
from .trajectory import TrajectoryLog, generate_trajectory, count_switch_points, TRAJECTORY_COLUMNS
from .sampling import sample_reward, reward_matrix

__all__ = [
    "EnvModel",
    "FixedMeans",
    "SmallChange",
    "ExponentialClock",
    "ReflectingWalk",
    "LogisticWalk",
    "reflect",
    "step_mean",
    "build_model",
    "cycle_arm_params",
    "TrajectoryLog",
    "generate_trajectory",
    "count_switch_points",
    "TRAJECTORY_COLUMNS",
    "sample_reward",
    "reward_matrix",
]
