"""Process settings and validated experiment descriptions."""

import os
from typing import Any, Dict, List, Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from environments import EnvModel, build_model
from environments.constants import MODEL_NAMES, ASSIGNMENT_CYCLIC
from policies import resolve_params, burn_in_pulls
from policies.constants import (
    POLICY_FIXED_ARM,
    POLICY_AFF_D_GREEDY,
    PARAM_ARM,
    PARAM_D,
    PARAM_ETA,
    PARAM_ETA_MODE,
    PARAM_TARGETS,
    ETA_MODE_ADAPTIVE,
    ETA_MODE_FIXED,
)
from .constants import DEFAULT_HORIZON, DEFAULT_REPLICATIONS, DEFAULT_SEED, SWEEP_PARAMETERS

load_dotenv()


def format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


class HarnessConfig:
    """Centralized process-level configuration."""

    THREADS = max(1, int(os.getenv("DRIFTBANDIT_THREADS", os.cpu_count() or 1)))
    OUTPUT_DIR = os.getenv("DRIFTBANDIT_OUTPUT_DIR", "results")
    LOG_LEVEL = os.getenv("DRIFTBANDIT_LOG_LEVEL", "INFO").upper()
    TRACING = os.getenv("DRIFTBANDIT_TRACING", "false").strip().lower() in ("1", "true", "yes")


class EnvSpec(BaseModel):
    """Reward-mean model and its per-arm parameters (repeated cyclically)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    model: str
    num_arms: Optional[int] = Field(default=None, ge=1)
    means: Optional[List[float]] = None
    theta: Optional[List[float]] = None
    r_low: Optional[List[float]] = None
    r_high: Optional[List[float]] = None
    sigma2: Optional[List[float]] = None
    assignment: str = ASSIGNMENT_CYCLIC

    @field_validator("model")
    @classmethod
    def _known_model(cls, value: str) -> str:
        if value not in MODEL_NAMES:
            raise ValueError(f"unknown environment model '{value}'; expected one of {', '.join(MODEL_NAMES)}")
        return value

    @field_validator("assignment")
    @classmethod
    def _known_assignment(cls, value: str) -> str:
        if value != ASSIGNMENT_CYCLIC:
            raise ValueError(f"only '{ASSIGNMENT_CYCLIC}' per-arm assignment is supported, got '{value}'")
        return value

    @model_validator(mode="after")
    def _buildable(self) -> "EnvSpec":
        self.build()
        return self

    def build(self) -> EnvModel:
        """Fresh, uninitialized model instance."""
        return build_model(
            self.model,
            self.num_arms,
            means=self.means,
            theta=self.theta,
            r_low=self.r_low,
            r_high=self.r_high,
            sigma2=self.sigma2,
        )

    @property
    def arms(self) -> int:
        return self.build().num_arms


class PolicySpec(BaseModel):
    """One configured policy; parameters are resolved with defaults on construction."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    label: str = ""
    params: Dict[str, Any] = Field(default_factory=dict)
    # Seed key for reward/decision streams; sweep variants share their source policy's streams
    stream_label: Optional[str] = None

    @model_validator(mode="before")
    @classmethod
    def _resolve(cls, data: Any) -> Any:
        if isinstance(data, dict):
            data = dict(data)
            data["params"] = resolve_params(data.get("name"), data.get("params"))
            if not data.get("label"):
                data["label"] = data.get("name")
        return data

    @property
    def seed_key(self) -> str:
        return self.stream_label or self.label

    @property
    def burn_in(self) -> int:
        return burn_in_pulls(self.name, self.params)

    def with_value(self, parameter: str, value: Union[float, str]) -> "PolicySpec":
        """Variant of this policy with one parameter replaced, sharing its random streams."""
        params = dict(self.params)
        if parameter == PARAM_ETA:
            if isinstance(value, str) and value.strip().lower() == ETA_MODE_ADAPTIVE:
                params.pop(PARAM_ETA_MODE, None)
            else:
                params[PARAM_ETA_MODE] = ETA_MODE_FIXED
            # d tracks eta unless it was set to something else
            if self.name == POLICY_AFF_D_GREEDY and params.get(PARAM_D) == self.params.get(PARAM_ETA):
                params.pop(PARAM_D)
        params[parameter] = value
        return PolicySpec(
            name=self.name,
            label=f"{self.label}[{parameter}={format_value(value)}]",
            params=params,
            stream_label=self.seed_key,
        )


class SweepSpec(BaseModel):
    """Sensitivity sweep over one policy parameter."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    parameter: str
    values: List[Union[float, str]] = Field(min_length=1)

    @field_validator("parameter")
    @classmethod
    def _known_parameter(cls, value: str) -> str:
        if value not in SWEEP_PARAMETERS:
            raise ValueError(f"sweep parameter must be one of {', '.join(SWEEP_PARAMETERS)}, got '{value}'")
        return value


class ExperimentConfig(BaseModel):
    """Complete description of a replicated experiment."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    env: EnvSpec
    policies: List[PolicySpec] = Field(min_length=1)
    horizon: int = Field(default=DEFAULT_HORIZON, ge=1)
    replications: int = Field(default=DEFAULT_REPLICATIONS, ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0)
    steps_every: int = Field(default=1, ge=0)
    common_random_numbers: bool = False
    export_trajectories: bool = False
    epsilon_grid: Optional[List[float]] = None
    sweeps: List[SweepSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _consistent(self) -> "ExperimentConfig":
        labels = [p.label for p in self.policies]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise ValueError(f"duplicate policy labels: {', '.join(duplicates)}")

        num_arms = self.env.arms
        longest = max(p.burn_in for p in self.policies)
        if self.horizon < num_arms * longest:
            raise ValueError(
                f"horizon {self.horizon} is shorter than the burn-in of {num_arms * longest} steps"
            )
        for p in self.policies:
            if p.name == POLICY_FIXED_ARM and p.params[PARAM_ARM] >= num_arms:
                raise ValueError(f"policy '{p.label}': arm {p.params[PARAM_ARM]} out of range for {num_arms} arms")

        if self.epsilon_grid is not None:
            if not self.epsilon_grid:
                raise ValueError("epsilon grid is empty")
            if any(not 0.0 <= e <= 1.0 for e in self.epsilon_grid):
                raise ValueError(f"epsilon grid values must lie in [0, 1], got {self.epsilon_grid}")

        for sweep in self.sweeps:
            targets = [p for p in self.policies if p.name in PARAM_TARGETS[sweep.parameter]]
            if not targets:
                raise ValueError(f"no configured policy takes sweep parameter '{sweep.parameter}'")
            for spec in targets:
                for value in sweep.values:
                    spec.with_value(sweep.parameter, value)
        return self

    @property
    def num_arms(self) -> int:
        return self.env.arms

    def with_policies(self, policies: List[PolicySpec]) -> "ExperimentConfig":
        """Copy of this config running a different policy list, without grids or sweeps."""
        data = self.model_dump()
        data["policies"] = [p.model_dump() for p in policies]
        data["epsilon_grid"] = None
        data["sweeps"] = []
        return ExperimentConfig.model_validate(data)
