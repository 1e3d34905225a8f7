"""Lazily sampled random oracle with programming, query extraction and forking.

Inputs must start with one of the registered ASCII domain tags.  Every
definition (first query or program) gets a sequence number; a snapshot taken
at sequence ``i`` keeps exactly the points defined before ``i``, and
``resume`` builds an oracle that replays those answers and samples fresh ones
afterwards.  That is all the classical forking extractor needs.

Superposition queries are out of scope: callers are classical.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import AlreadyDefined

DIGEST_BYTES = 32
DOMAIN_TAGS = (b"FS/", b"UROM/", b"SOK/")


def check_domain(data: bytes) -> None:
    if not data.startswith(DOMAIN_TAGS):
        raise ValueError(f"oracle input lacks a domain tag: {data[:12]!r}")


@dataclass
class _Entry:
    digest: bytes
    seq: int
    programmed: bool
    replayed: bool = False


@dataclass(frozen=True)
class OracleSnapshot:
    entries: tuple
    log: tuple
    seq: int


class Oracle:
    """Random oracle over byte strings.

    With ``key`` set, unqueried points are answered by SHA-256(key || input)
    instead of fresh randomness, so independent processes agree on answers.
    """

    def __init__(self, rng: np.random.Generator | int | None = None, key: bytes | None = None):
        self.rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
        self.key = key
        self._table: dict[bytes, _Entry] = {}
        self.query_log: list[tuple[int, bytes]] = []
        self._seq = 0

    def _sample(self, data: bytes) -> bytes:
        if self.key is not None:
            return hashlib.sha256(self.key + data).digest()
        return self.rng.bytes(DIGEST_BYTES)

    def _define(self, data: bytes, digest: bytes, programmed: bool) -> None:
        self._table[data] = _Entry(digest, self._seq, programmed)

    def query(self, data: bytes) -> bytes:
        check_domain(data)
        entry = self._table.get(data)
        if entry is None:
            self._define(data, self._sample(data), programmed=False)
            entry = self._table[data]
        self.query_log.append((self._seq, data))
        self._seq += 1
        return entry.digest

    def program(self, data: bytes, digest: bytes) -> None:
        check_domain(data)
        if len(digest) != DIGEST_BYTES:
            raise ValueError("digest must be 32 bytes")
        entry = self._table.get(data)
        if entry is not None:
            # a rerun after a fork re-programs the same points with the same values
            if entry.replayed and entry.programmed and entry.digest == digest:
                entry.replayed = False
                return
            raise AlreadyDefined(data[:24].hex())
        self._define(data, digest, programmed=True)
        self._seq += 1

    def is_defined(self, data: bytes) -> bool:
        return data in self._table

    def is_programmed(self, data: bytes) -> bool:
        entry = self._table.get(data)
        return entry is not None and entry.programmed

    def extract_queries(self) -> list[bytes]:
        return [data for _, data in self.query_log]

    def last_query_seq(self, data: bytes) -> int | None:
        for seq, d in reversed(self.query_log):
            if d == data:
                return seq
        return None

    def defined_seq(self, data: bytes) -> int | None:
        entry = self._table.get(data)
        return None if entry is None else entry.seq

    def snapshot(self, upto: int | None = None) -> OracleSnapshot:
        """Freeze every point defined strictly before sequence number ``upto``."""
        upto = self._seq if upto is None else upto
        entries = tuple(
            (data, e.digest, e.seq, e.programmed)
            for data, e in self._table.items() if e.seq < upto
        )
        log = tuple((s, d) for s, d in self.query_log if s < upto)
        return OracleSnapshot(entries=entries, log=log, seq=upto)


def resume(snapshot: OracleSnapshot, rng: np.random.Generator | int | None = None) -> Oracle:
    """Oracle agreeing with the snapshot on its points, fresh everywhere else."""
    oracle = Oracle(rng)
    for data, digest, _seq, programmed in snapshot.entries:
        # replayed points count as defined before anything in the new run
        oracle._table[data] = _Entry(digest, -1, programmed, replayed=True)
    return oracle


def extract_queries(oracle: Oracle) -> list[bytes]:
    return oracle.extract_queries()


def snapshot(oracle: Oracle, upto: int | None = None) -> OracleSnapshot:
    return oracle.snapshot(upto)
