"""Command-line surface: config files, presets, CSV and manifest output."""

from .config_parser import ConfigError, parse_config, emit_config
from .presets import preset, case_env, PRESET_NAMES
from .writers import OutputError, OutputEntry, RunManifest, emit_csv, records_frame, CsvAppender, write_manifest, write_text
from .commands import load_config, run_all, execute, __version__

__all__ = [
    "ConfigError",
    "parse_config",
    "emit_config",
    "preset",
    "case_env",
    "PRESET_NAMES",
    "OutputError",
    "OutputEntry",
    "RunManifest",
    "emit_csv",
    "records_frame",
    "CsvAppender",
    "write_manifest",
    "write_text",
    "load_config",
    "run_all",
    "execute",
    "__version__",
]
