"""CSV and manifest output with bit-stable float formatting."""

import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import pandas as pd
from pydantic import BaseModel, Field

from harness import StepRecord, SummaryStats, summary_frame
from harness.constants import STEP_COLUMNS

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


class OutputError(OSError):
    """Failure writing an output file."""

    def __init__(self, path: Union[str, Path], reason: str):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = str(path)


class OutputEntry(BaseModel):
    path: str
    # data rows for CSV files, lines for text files
    rows: int


class RunManifest(BaseModel):
    """
    Everything needed to reproduce and audit one CLI run.

    `outputs` lists every file the run wrote except the manifest itself.
    """

    version: str
    preset: Optional[str] = None
    config: str
    master_seed: int
    replication_seeds: List[int]
    started_at: str
    duration_seconds: float
    outputs: List[OutputEntry] = Field(default_factory=list)


def records_frame(records: Iterable[StepRecord]) -> pd.DataFrame:
    """Step records in CSV layout (1-based arms, 0/1 correct flag)."""
    rows = [
        [r.rep, r.policy, r.t, r.arm + 1, r.reward, r.mu_chosen, r.mu_opt, r.regret_inst, r.regret_cum, int(r.correct)]
        for r in records
    ]
    return pd.DataFrame(rows, columns=STEP_COLUMNS)


def _as_frame(data, columns: Optional[Sequence[str]]) -> pd.DataFrame:
    if isinstance(data, pd.DataFrame):
        return data if columns is None else data.reindex(columns=list(columns))
    items = list(data)
    if items and isinstance(items[0], SummaryStats):
        return summary_frame(items)
    if not items:
        return pd.DataFrame(columns=list(columns or STEP_COLUMNS))
    return records_frame(items)


def emit_csv(data, path: Union[str, Path], columns: Optional[Sequence[str]] = None) -> OutputEntry:
    """
    Write step records, summaries or a ready DataFrame to CSV.

    An empty input produces a header-only file (step columns unless `columns`
    is given). Returns the manifest entry with the data row count.

    Raises:
        OutputError: the file could not be written
    """
    frame = _as_frame(data, columns)
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise OutputError(path, str(e)) from e
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return OutputEntry(path=str(path), rows=len(frame))


class CsvAppender:
    """Streams frames into one CSV, writing the header once."""

    def __init__(self, path: Union[str, Path], columns: Sequence[str]):
        self.path = Path(path)
        self.columns = list(columns)
        self.rows = 0
        try:
            pd.DataFrame(columns=self.columns).to_csv(self.path, index=False)
        except OSError as e:
            logger.error(f"Failed to create {self.path}: {e}")
            raise OutputError(self.path, str(e)) from e

    def append(self, frame: pd.DataFrame) -> None:
        try:
            frame.to_csv(self.path, mode="a", header=False, index=False, float_format=FLOAT_FORMAT)
        except OSError as e:
            logger.error(f"Failed to append to {self.path}: {e}")
            raise OutputError(self.path, str(e)) from e
        self.rows += len(frame)

    def entry(self) -> OutputEntry:
        logger.info(f"Wrote {self.rows} rows to {self.path}")
        return OutputEntry(path=str(self.path), rows=self.rows)


def write_text(text: str, path: Union[str, Path]) -> OutputEntry:
    """Write a text artifact and return its manifest entry (row count = lines)."""
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as e:
        logger.error(f"Failed to write {path}: {e}")
        raise OutputError(path, str(e)) from e
    return OutputEntry(path=str(path), rows=len(text.splitlines()))


def write_manifest(manifest: RunManifest, path: Union[str, Path]) -> None:
    try:
        Path(path).write_text(manifest.model_dump_json(indent=2), encoding="utf-8")
    except OSError as e:
        logger.error(f"Failed to write manifest {path}: {e}")
        raise OutputError(path, str(e)) from e
    logger.info(f"Wrote manifest to {path}")
