"""
Flat key-value experiment files.

    # comment
    env.model = exponential_clock
    env.theta = 0.001, 0.01        # per arm, repeated cyclically
    horizon = 10000
    policy.name = aff_ots          # each policy.name opens a new block
    policy.eta = 0.001

`env = <model>` and `policies = a, b, c` are accepted as shorthands.
"""

import logging
import re
from typing import Any, Dict, List, Optional, Tuple

from pydantic import ValidationError

from harness import EnvSpec, ExperimentConfig, PolicySpec, SweepSpec

logger = logging.getLogger(__name__)

ENV_LIST_KEYS = ("means", "theta", "r_low", "r_high", "sigma2")
INT_KEYS = ("horizon", "replications", "seed", "steps_every")
BOOL_KEYS = ("common_random_numbers", "export_trajectories")
TRUE_VALUES = ("true", "yes", "1", "on")
FALSE_VALUES = ("false", "no", "0", "off")


class ConfigError(ValueError):
    """Invalid experiment file, with the offending line and field when known."""

    def __init__(self, reason: str, line: Optional[int] = None, field: Optional[str] = None):
        self.reason = reason
        self.line = line
        self.field = field
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field is not None:
            prefix += f"field '{field}': "
        super().__init__(prefix + reason)


def _scalar(text: str) -> Any:
    for convert in (int, float):
        try:
            return convert(text)
        except ValueError:
            continue
    return text.strip().lower()


def _numbers(text: str, line: int, field: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ConfigError(f"expected a comma-separated list of numbers, got '{text}'", line, field) from None


def _sweep_values(text: str) -> List[Any]:
    values = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        try:
            values.append(float(part))
        except ValueError:
            values.append(part.lower())
    return values


def _reason(err: Exception) -> str:
    if isinstance(err, ValidationError):
        first = err.errors()[0]
        return first["msg"].removeprefix("Value error, ")
    return str(err)


def _field_from(reason: str, prefix: str, lines: Dict[str, int], fallback: Tuple[int, str]) -> Tuple[int, str]:
    """Best-effort mapping of a validation message to the line of the field it names."""
    match = re.search(r"parameter '(\w+)'", reason)
    if match:
        key = f"{prefix}{match.group(1)}"
        if key in lines:
            return lines[key], key
    return fallback


class _PolicyBlock:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.label: Optional[str] = None
        self.params: Dict[str, Any] = {}
        self.lines: Dict[str, int] = {"policy.name": line}


def parse_config(text: str) -> ExperimentConfig:
    """
    Parse and validate an experiment file, applying defaults.

    Raises:
        ConfigError: syntax error, unknown key, unknown policy, missing env
            spec or out-of-range value; carries the line and field
    """
    env: Dict[str, Any] = {}
    top: Dict[str, Any] = {}
    lines: Dict[str, int] = {}
    blocks: List[_PolicyBlock] = []
    sweeps: List[Dict[str, Any]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"expected 'key = value', got '{content}'", number)
        key, value = (part.strip() for part in content.split("=", 1))
        if not value:
            raise ConfigError("missing value", number, key)

        if key in ("env", "env.model"):
            env["model"] = value.lower()
            lines["env.model"] = number
        elif key == "env.arms":
            try:
                env["num_arms"] = int(value)
            except ValueError:
                raise ConfigError(f"expected an integer, got '{value}'", number, key) from None
            lines[key] = number
        elif key == "env.assignment":
            env["assignment"] = value.lower()
            lines[key] = number
        elif key.startswith("env.") and key[4:] in ENV_LIST_KEYS:
            env[key[4:]] = _numbers(value, number, key)
            lines[key] = number
        elif key in INT_KEYS:
            try:
                top[key] = int(value)
            except ValueError:
                raise ConfigError(f"expected an integer, got '{value}'", number, key) from None
            lines[key] = number
        elif key in BOOL_KEYS:
            flag = value.lower()
            if flag not in TRUE_VALUES + FALSE_VALUES:
                raise ConfigError(f"expected true or false, got '{value}'", number, key)
            top[key] = flag in TRUE_VALUES
            lines[key] = number
        elif key == "epsilon_grid":
            top[key] = _numbers(value, number, key)
            lines[key] = number
        elif key == "sweep.parameter":
            sweeps.append({"parameter": value, "line": number})
        elif key == "sweep.values":
            if not sweeps or "values" in sweeps[-1]:
                raise ConfigError("sweep.values must follow a sweep.parameter line", number, key)
            sweeps[-1]["values"] = _sweep_values(value)
        elif key == "policies":
            for name in (n.strip().lower() for n in value.split(",")):
                if name:
                    blocks.append(_PolicyBlock(name, number))
        elif key == "policy.name":
            blocks.append(_PolicyBlock(value.lower(), number))
        elif key.startswith("policy."):
            if not blocks:
                raise ConfigError("policy parameter before any policy.name line", number, key)
            block = blocks[-1]
            if key == "policy.label":
                block.label = value
            else:
                block.params[key[7:]] = _scalar(value)
            block.lines[key] = number
        else:
            raise ConfigError("unknown key", number, key)

    if "model" not in env:
        raise ConfigError("missing environment model", field="env.model")
    if not blocks:
        raise ConfigError("no policies configured", field="policy.name")

    try:
        env_spec = EnvSpec(**env)
    except (ValidationError, ValueError) as e:
        reason = _reason(e)
        field = next((f"env.{k}" for k in ENV_LIST_KEYS if f"env.{k}" in lines and k in reason), "env.model")
        raise ConfigError(reason, lines.get(field), field) from None

    policies: List[PolicySpec] = []
    seen: Dict[str, int] = {}
    for block in blocks:
        label = block.label or block.name
        seen[label] = seen.get(label, 0) + 1
        if seen[label] > 1:
            label = f"{label}-{seen[label]}"
        try:
            policies.append(PolicySpec(name=block.name, label=label, params=block.params))
        except (ValidationError, ValueError) as e:
            reason = _reason(e)
            line, field = _field_from(reason, "policy.", block.lines, (block.line, "policy.name"))
            raise ConfigError(reason, line, field) from None

    sweep_specs: List[SweepSpec] = []
    for sweep in sweeps:
        try:
            sweep_specs.append(SweepSpec(parameter=sweep["parameter"], values=sweep.get("values", [])))
        except ValidationError as e:
            raise ConfigError(_reason(e), sweep["line"], "sweep.parameter") from None

    try:
        config = ExperimentConfig(env=env_spec, policies=policies, sweeps=sweep_specs, **top)
    except ValidationError as e:
        first = e.errors()[0]
        reason = _reason(e)
        if first["loc"]:
            field = str(first["loc"][0])
        else:
            field = next((k for k in INT_KEYS + BOOL_KEYS + ("epsilon_grid",) if k in lines and k in reason), None)
        raise ConfigError(reason, lines.get(field), field) from None
    logger.debug(f"Parsed config: {config.env.model}, {len(config.policies)} policies")
    return config


def _format(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(_format(v) for v in value)
    return str(value)


def emit_config(config: ExperimentConfig) -> str:
    """Render a config in the file format; parse_config(emit_config(c)) == c."""
    out = [f"env.model = {config.env.model}"]
    if config.env.num_arms is not None:
        out.append(f"env.arms = {config.env.num_arms}")
    for key in ENV_LIST_KEYS:
        values = getattr(config.env, key)
        if values is not None:
            out.append(f"env.{key} = {_format(values)}")
    out.append(f"env.assignment = {config.env.assignment}")
    for key in INT_KEYS + BOOL_KEYS:
        out.append(f"{key} = {_format(getattr(config, key))}")
    if config.epsilon_grid is not None:
        out.append(f"epsilon_grid = {_format(config.epsilon_grid)}")
    for sweep in config.sweeps:
        out.append(f"sweep.parameter = {sweep.parameter}")
        out.append(f"sweep.values = {_format(sweep.values)}")
    for spec in config.policies:
        out.append("")
        out.append(f"policy.name = {spec.name}")
        out.append(f"policy.label = {spec.label}")
        for key, value in spec.params.items():
            out.append(f"policy.{key} = {_format(value)}")
    return "\n".join(out) + "\n"
