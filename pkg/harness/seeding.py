"""
Deterministic random streams.

Every generator is derived from the master seed through a `SeedSequence`
spawn key (replication, stream id[, crc32 of the policy seed label]). Streams
never depend on execution order or on other policies in the configuration,
so a replication can be re-run in isolation and changing one policy leaves the
draws of every other policy untouched.
"""

import zlib
from typing import Optional

import numpy as np


def label_key(label: str) -> int:
    return zlib.crc32(label.encode("utf-8"))


def replication_sequence(master_seed: int, rep: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(master_seed, spawn_key=(rep,))


def replication_seed(master_seed: int, rep: int) -> int:
    """Integer fingerprint of a replication's seed, recorded in run manifests."""
    return int(replication_sequence(master_seed, rep).generate_state(1, dtype=np.uint64)[0])


def stream(master_seed: int, rep: int, stream_id: int, label: Optional[str] = None) -> np.random.Generator:
    """Generator for one stream of one replication, optionally keyed by a policy label."""
    key = (rep, stream_id) if label is None else (rep, stream_id, label_key(label))
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=key))
