"""Parallel record scan: the n at which P(n) first beats all smaller moduli.

Work is cut into fixed blocks of consecutive n; workers pull blocks
dynamically but the merge walks blocks in index order, so the final table
is byte-identical no matter how many workers ran.  Progress checkpoints
are written atomically (write-new-then-rename) and a resumed scan loads
them back instead of recomputing.
"""

from __future__ import annotations

import datetime
import json
import math
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from ._version import __version__
from .pmax import CounterOverflowError, pmax_dp
from .trajectory import DomainError, steps_count

CSV_HEADER = "n,pmax,argmax,pmax_over_log_n,pmax_over_cuberoot_n"
DEFAULT_BLOCK = 2048
DEFAULT_CHECKPOINT_EVERY = 32


class CheckpointError(RuntimeError):
    """Checkpoint file unusable; message carries the recovery hint."""


@dataclass(frozen=True)
class ScanConfig:
    lo: int
    hi: int
    workers: int = 1
    block: int = DEFAULT_BLOCK
    out: str | None = None  # None renders to stdout
    fmt: str = "csv"
    checkpoint_path: str | None = None
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY

    def __post_init__(self):
        if self.lo < 1 or self.hi < self.lo:
            raise DomainError(f"scan range must satisfy 1 <= from <= to, got [{self.lo}, {self.hi}]")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")
        if self.block < 1 or self.checkpoint_every < 1:
            raise DomainError("block and checkpoint interval must be >= 1")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"scan format must be csv or json, got {self.fmt!r}")


@dataclass(frozen=True)
class RecordTable:
    rows: tuple[tuple[int, int, int], ...]  # (n, pmax, argmax), ascending n
    meta: dict = field(default_factory=dict)

    def check_rows(self) -> None:
        """Structural invariant: rows are exactly a strictly-rising staircase."""
        prev_n = 0
        prev_p = 0
        for n, p, a in self.rows:
            if n <= prev_n or p <= prev_p:
                raise ValueError(f"record rows must rise strictly, offending row ({n}, {p}, {a})")
            prev_n, prev_p = n, p

    def revalidate(self, full: bool = False) -> None:
        """Recompute each row; full additionally reruns the table pass per row."""
        self.check_rows()
        for n, p, a in self.rows:
            if steps_count(a, n) != p:
                raise ValueError(f"row ({n}, {p}, {a}) does not reproduce: P({a},{n}) != {p}")
            if full:
                res = pmax_dp(n)
                if (res.pmax, res.argmax) != (p, a):
                    raise ValueError(
                        f"row ({n}, {p}, {a}) is not the true record: got ({res.pmax}, {res.argmax})"
                    )

    def csv_lines(self) -> list[str]:
        lines = [CSV_HEADER]
        for n, p, a in self.rows:
            over_log = p / math.log(n) if n > 1 else float("inf")
            over_cbrt = p / n ** (1.0 / 3.0)
            lines.append(f"{n},{p},{a},{over_log:.6g},{over_cbrt:.6g}")
        return lines

    def to_csv(self, path: str) -> None:
        _atomic_write(path, "\n".join(self.csv_lines()) + "\n")

    def to_json_dict(self) -> dict:
        return {
            "rows": [
                {"n": n, "pmax": p, "argmax": a}
                for n, p, a in self.rows
            ],
            "metadata": self.meta,
        }

    def to_json(self, path: str) -> None:
        _atomic_write(path, json.dumps(self.to_json_dict(), indent=2) + "\n")

    @classmethod
    def from_csv(cls, path: str) -> "RecordTable":
        with open(path) as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
        if not lines or lines[0] != CSV_HEADER:
            raise ValueError(f"unrecognized record CSV header in {path}")
        rows = []
        for ln in lines[1:]:
            n, p, a = ln.split(",")[:3]
            rows.append((int(n), int(p), int(a)))
        return cls(rows=tuple(rows), meta={"source": path})

    @classmethod
    def from_json(cls, path: str) -> "RecordTable":
        with open(path) as fh:
            doc = json.load(fh)
        rows = tuple((r["n"], r["pmax"], r["argmax"]) for r in doc["rows"])
        return cls(rows=rows, meta=doc.get("metadata", {}))


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def blocks_for(config: ScanConfig) -> list[tuple[int, int]]:
    """The fixed block decomposition of [lo, hi]; independent of workers."""
    out = []
    lo = config.lo
    while lo <= config.hi:
        hi = min(config.hi, lo + config.block - 1)
        out.append((lo, hi))
        lo = hi + 1
    return out


def _scan_block(task: tuple[int, int, int]) -> tuple[int, list[tuple[int, int, int]]]:
    """Compute one block's local record rows (prefix records within the block)."""
    idx, lo, hi = task
    from . import _kernels

    buf = np.zeros(hi + 1, np.uint16)
    out_p = np.empty(hi - lo + 1, np.int64)
    out_a = np.empty(hi - lo + 1, np.int64)
    if _kernels.pmax_range(lo, hi, buf, out_p, out_a) != 0:
        raise CounterOverflowError(f"step count overflow inside scan block [{lo}, {hi}]")
    rows = []
    best = 0
    for i in range(hi - lo + 1):
        p = int(out_p[i])
        if p > best:
            best = p
            rows.append((lo + i, p, int(out_a[i])))
    return idx, rows


def merge_block_rows(block_rows: dict[int, list[tuple[int, int, int]]]) -> tuple[tuple[int, int, int], ...]:
    """Merge per-block prefix records into global records, in block order."""
    rows = []
    best = 0
    for idx in sorted(block_rows):
        for n, p, a in block_rows[idx]:
            if p > best:
                best = p
                rows.append((n, p, a))
    return tuple(rows)


def _checkpoint_doc(config: ScanConfig, done: dict[int, list]) -> dict:
    return {
        "version": __version__,
        "from": config.lo,
        "to": config.hi,
        "block": config.block,
        "done": {str(i): rows for i, rows in done.items()},
    }


def _load_checkpoint(config: ScanConfig) -> dict[int, list]:
    path = config.checkpoint_path
    if path is None or not os.path.exists(path):
        return {}
    try:
        with open(path) as fh:
            doc = json.load(fh)
        if (doc["from"], doc["to"], doc["block"]) != (config.lo, config.hi, config.block):
            raise CheckpointError(
                f"checkpoint {path} was written for range [{doc['from']}, {doc['to']}] "
                f"block {doc['block']}; delete it or rerun with matching parameters"
            )
        return {int(i): [tuple(r) for r in rows] for i, rows in doc["done"].items()}
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise CheckpointError(
            f"checkpoint {path} is corrupt ({exc}); delete it to restart from scratch"
        ) from exc


def scan_records(config: ScanConfig, resume: bool = True) -> RecordTable:
    """Run the scan, checkpointing as configured, and return the merged table."""
    all_blocks = blocks_for(config)
    done: dict[int, list] = _load_checkpoint(config) if resume else {}
    done = {i: rows for i, rows in done.items() if i < len(all_blocks)}
    pending = [
        (i, lo, hi) for i, (lo, hi) in enumerate(all_blocks) if i not in done
    ]
    completed = 0

    def note(idx, rows):
        nonlocal completed
        done[idx] = rows
        completed += 1
        if config.checkpoint_path and completed % config.checkpoint_every == 0:
            _atomic_write(config.checkpoint_path, json.dumps(_checkpoint_doc(config, done)))

    if config.workers == 1 or len(pending) <= 1:
        for task in pending:
            idx, rows = _scan_block(task)
            note(idx, rows)
    else:
        import multiprocessing as mp

        # compile the kernel once in the parent so forked workers inherit it
        _scan_block((0, 1, 1))
        with mp.Pool(config.workers) as pool:
            for idx, rows in pool.imap_unordered(_scan_block, pending):
                note(idx, rows)

    if config.checkpoint_path:
        _atomic_write(config.checkpoint_path, json.dumps(_checkpoint_doc(config, done)))

    table = RecordTable(
        rows=merge_block_rows(done),
        meta={
            "range": [config.lo, config.hi],
            "generated": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "version": __version__,
            "workers": config.workers,
            "block": config.block,
        },
    )
    table.check_rows()
    return table
