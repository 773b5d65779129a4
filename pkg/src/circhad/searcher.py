"""Exhaustive search for circulant Hadamard sequences at small orders.

The space of length-L sign sequences is walked as a binary tree with the
first entry fixed to +1; global negations are restored in the report.  Two
optional prunes cut branches:

* row-sum: a circulant Hadamard row sum s satisfies s*s = L, so orders that
  are not perfect squares are rejected without enumeration, and square
  orders constrain the number of -1 entries to (L - s)/2 or (L + s)/2.
* prefix-paf: the settled part of each periodic autocorrelation lag is
  bounded by the number of still-undetermined terms; a branch that cannot
  reach zero at some lag is cut.

Work is partitioned into shards by sequence prefix.  The shard set and each
shard's traversal depend only on the order and the prune selection, never
on the worker count, so reports are identical however the shards are
scheduled.  An optional append-only ledger file records finished shards
(and any sequences they found) so an interrupted search can be resumed.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from math import isqrt
from pathlib import Path
from typing import Callable, Iterator

from .blockform import BlockSequence, TwoBlock
from .seqcore import SignSequence, is_circulant_hadamard

__all__ = [
    "PRUNE_ROW_SUM",
    "PRUNE_PREFIX_PAF",
    "ALL_PRUNES",
    "SearchConfig",
    "SearchReport",
    "search",
    "rowsum_prune_applicable",
    "enumerate_block_sequences",
    "all_block_sequences",
]

PRUNE_ROW_SUM = "row-sum"
PRUNE_PREFIX_PAF = "prefix-paf"
ALL_PRUNES = frozenset({PRUNE_ROW_SUM, PRUNE_PREFIX_PAF})

# shards are the 2^(depth-1) prefixes of this length starting with '+'
_SHARD_DEPTH_CAP = 6
# how often a shard polls the budget deadline, in tree nodes
_DEADLINE_POLL = 4096


@dataclass(frozen=True)
class SearchConfig:
    order: int
    prunes: frozenset[str] = ALL_PRUNES
    workers: int = 1
    canonicalize: bool = False
    budget_seconds: float | None = None
    ledger_path: str | Path | None = None

    def __post_init__(self) -> None:
        if self.order < 4 or self.order % 4 != 0:
            raise ValueError(f"order must be a positive multiple of 4, got {self.order}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        unknown = set(self.prunes) - ALL_PRUNES
        if unknown:
            raise ValueError(f"unknown prunes: {sorted(unknown)}")
        object.__setattr__(self, "prunes", frozenset(self.prunes))
        if self.budget_seconds is not None and self.budget_seconds < 0:
            raise ValueError("budget_seconds must be nonnegative")


@dataclass(frozen=True)
class SearchReport:
    """Search outcome.  Everything except workers and elapsed_seconds is a
    pure function of the configuration, which is what canonical_dict()
    exposes for bit-identical comparison across worker counts."""

    order: int
    prunes: tuple[str, ...]
    canonicalize: bool
    workers: int
    sequences_examined: int
    solutions: tuple[str, ...]
    canonical_classes: tuple[str, ...] | None
    prune_cuts: dict[str, int]
    incomplete: bool
    elapsed_seconds: float

    def canonical_dict(self) -> dict:
        return {
            "order": self.order,
            "prunes": list(self.prunes),
            "canonicalize": self.canonicalize,
            "sequences_examined": self.sequences_examined,
            "solutions": list(self.solutions),
            "canonical_classes": (
                None if self.canonical_classes is None else list(self.canonical_classes)
            ),
            "prune_cuts": dict(self.prune_cuts),
            "incomplete": self.incomplete,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.canonical_dict(), sort_keys=True, separators=(",", ":"))

    def to_dict(self) -> dict:
        doc = self.canonical_dict()
        doc["workers"] = self.workers
        doc["elapsed_seconds"] = self.elapsed_seconds
        return doc


def rowsum_prune_applicable(order: int) -> bool:
    """True when the order is rejected outright: (row sum)^2 = L forces L
    to be a perfect square, so non-squares admit no solutions at all."""
    if order <= 0 or order % 4 != 0:
        raise ValueError(f"order must be a positive multiple of 4, got {order}")
    return isqrt(order) ** 2 != order


def _minus_targets(order: int) -> tuple[int, ...]:
    s = isqrt(order)
    return ((order - s) // 2, (order + s) // 2)


def _shard_prefixes(order: int) -> tuple[str, ...]:
    depth = min(_SHARD_DEPTH_CAP, order)
    return tuple(
        "+" + "".join(tail) for tail in itertools.product("+-", repeat=depth - 1)
    )


@dataclass
class _ShardResult:
    prefix: str
    completed: bool
    examined: int
    cuts: dict[str, int]
    hits: tuple[str, ...]


def _run_shard(
    order: int,
    prefix: str,
    prunes: frozenset[str],
    minus_targets: tuple[int, ...] | None,
    deadline: float | None,
) -> _ShardResult:
    L = order
    half = L // 2
    use_paf = PRUNE_PREFIX_PAF in prunes
    cuts = {name: 0 for name in sorted(prunes)}
    signs = [0] * L
    partial = [0] * (half + 1)
    undet = [L] * (half + 1)
    minus = 0
    examined = 0
    hits: list[str] = []
    aborted = False
    poll = 0

    def apply(p: int, s: int) -> None:
        nonlocal minus
        signs[p] = s
        if s < 0:
            minus += 1
        if use_paf:
            for u in range(1, half + 1):
                if p >= u:
                    partial[u] += signs[p - u] * s
                    undet[u] -= 1
                w = p + u - L
                if w >= 0:
                    partial[u] += s * signs[w]
                    undet[u] -= 1

    def undo(p: int, s: int) -> None:
        nonlocal minus
        if s < 0:
            minus -= 1
        if use_paf:
            for u in range(1, half + 1):
                if p >= u:
                    partial[u] -= signs[p - u] * s
                    undet[u] += 1
                w = p + u - L
                if w >= 0:
                    partial[u] -= s * signs[w]
                    undet[u] += 1

    def violated(p: int) -> str | None:
        # fixed check order keeps cut counts deterministic
        if minus_targets is not None:
            remaining = L - p - 1
            if not any(minus <= t <= minus + remaining for t in minus_targets):
                return PRUNE_ROW_SUM
        if use_paf:
            for u in range(1, half + 1):
                if abs(partial[u]) > undet[u]:
                    return PRUNE_PREFIX_PAF
        return None

    def dfs(p: int) -> None:
        nonlocal examined, aborted, poll
        if p == L:
            examined += 1
            seq = SignSequence(signs)
            if is_circulant_hadamard(seq):
                hits.append(seq.text)
            return
        for s in (1, -1):
            if aborted:
                return
            poll += 1
            if poll >= _DEADLINE_POLL:
                poll = 0
                if deadline is not None and time.monotonic() > deadline:
                    aborted = True
                    return
            apply(p, s)
            verdict = violated(p)
            if verdict is None:
                dfs(p + 1)
            else:
                cuts[verdict] += 1
            undo(p, s)

    if deadline is not None and time.monotonic() > deadline:
        return _ShardResult(prefix, False, 0, cuts, ())
    for p, ch in enumerate(prefix):
        apply(p, 1 if ch == "+" else -1)
        verdict = violated(p)
        if verdict is not None:
            cuts[verdict] += 1
            return _ShardResult(prefix, True, 0, cuts, ())
    dfs(len(prefix))
    return _ShardResult(prefix, not aborted, examined, cuts, tuple(hits))


def _negate_text(text: str) -> str:
    return "".join("-" if ch == "+" else "+" for ch in text)


def _rotations(text: str) -> Iterator[str]:
    for s in range(len(text)):
        yield text[s:] + text[:s]


def _canonical_class(text: str) -> str:
    orbit = itertools.chain(_rotations(text), _rotations(_negate_text(text)))
    return min(orbit)


class _ShardLedger:
    """Append-only record of finished shards, one status line per prefix.

    Lines are '<prefix> hit <sequence>' for each solution found in a shard,
    then '<prefix> done examined=<n> <prune>=<cuts>...' once the shard has
    been fully traversed.  The header pins order and prune selection so a
    ledger cannot silently be reused across configurations.
    """

    def __init__(self, path: Path, header: str) -> None:
        self.path = path
        self.header = header
        self.recorded: dict[str, _ShardResult] = {}
        if path.exists():
            self._load()
        else:
            path.write_text(header + "\n", encoding="utf-8")

    def _load(self) -> None:
        lines = self.path.read_text(encoding="utf-8").splitlines()
        if not lines or lines[0] != self.header:
            raise ValueError(
                f"ledger {self.path} does not match this search configuration"
            )
        pending_hits: dict[str, list[str]] = {}
        for line in lines[1:]:
            tokens = line.split()
            if not tokens:
                continue
            prefix, status = tokens[0], tokens[1]
            if status == "hit":
                pending_hits.setdefault(prefix, []).append(tokens[2])
            elif status == "done":
                counters = dict(tok.split("=", 1) for tok in tokens[2:])
                examined = int(counters.pop("examined"))
                cuts = {k: int(v) for k, v in counters.items()}
                self.recorded[prefix] = _ShardResult(
                    prefix, True, examined, cuts, tuple(pending_hits.get(prefix, ()))
                )
            else:
                raise ValueError(f"ledger {self.path}: unknown status {status!r}")

    def record(self, result: _ShardResult) -> None:
        lines = [f"{result.prefix} hit {text}" for text in result.hits]
        counters = " ".join(f"{k}={v}" for k, v in sorted(result.cuts.items()))
        done = f"{result.prefix} done examined={result.examined}"
        if counters:
            done += " " + counters
        lines.append(done)
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")


def _ledger_header(cfg: SearchConfig) -> str:
    prunes = ",".join(sorted(cfg.prunes)) or "none"
    return f"# circhad shard ledger order={cfg.order} prunes={prunes}"


def _build_report(
    cfg: SearchConfig,
    examined: int,
    hits: list[str],
    cuts: dict[str, int],
    incomplete: bool,
    elapsed: float,
) -> SearchReport:
    solutions = sorted({t for h in hits for t in (h, _negate_text(h))})
    classes = None
    if cfg.canonicalize:
        classes = tuple(sorted({_canonical_class(t) for t in solutions}))
    return SearchReport(
        order=cfg.order,
        prunes=tuple(sorted(cfg.prunes)),
        canonicalize=cfg.canonicalize,
        workers=cfg.workers,
        sequences_examined=examined,
        solutions=tuple(solutions),
        canonical_classes=classes,
        prune_cuts=cuts,
        incomplete=incomplete,
        elapsed_seconds=elapsed,
    )


def search(cfg: SearchConfig) -> SearchReport:
    """Find every circulant Hadamard first row of the configured order.

    The solution set does not depend on the prune selection or the worker
    count; prunes and parallelism only change how much work is done.  With
    a budget, the report may come back flagged incomplete.
    """
    started = time.perf_counter()
    cuts_total = {name: 0 for name in sorted(cfg.prunes)}
    if PRUNE_ROW_SUM in cfg.prunes and rowsum_prune_applicable(cfg.order):
        cuts_total[PRUNE_ROW_SUM] = 1
        elapsed = time.perf_counter() - started
        return _build_report(cfg, 0, [], cuts_total, False, elapsed)

    targets = _minus_targets(cfg.order) if PRUNE_ROW_SUM in cfg.prunes else None
    prefixes = _shard_prefixes(cfg.order)
    ledger = None
    if cfg.ledger_path is not None:
        ledger = _ShardLedger(Path(cfg.ledger_path), _ledger_header(cfg))
    results: dict[str, _ShardResult] = dict(ledger.recorded) if ledger else {}
    pending = [p for p in prefixes if p not in results]
    deadline = None
    if cfg.budget_seconds is not None:
        deadline = time.monotonic() + cfg.budget_seconds

    def run_one(prefix: str) -> _ShardResult:
        return _run_shard(cfg.order, prefix, cfg.prunes, targets, deadline)

    if cfg.workers == 1 or len(pending) <= 1:
        for prefix in pending:
            result = run_one(prefix)
            results[prefix] = result
            if ledger is not None and result.completed:
                ledger.record(result)
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(run_one, prefix) for prefix in pending]
            for future in as_completed(futures):
                result = future.result()
                results[result.prefix] = result
                if ledger is not None and result.completed:
                    ledger.record(result)

    examined = 0
    hits: list[str] = []
    incomplete = False
    for prefix in prefixes:
        result = results[prefix]
        examined += result.examined
        for name, count in result.cuts.items():
            cuts_total[name] = cuts_total.get(name, 0) + count
        hits.extend(result.hits)
        if not result.completed:
            incomplete = True
    cuts_total = {k: v for k, v in cuts_total.items() if k in cfg.prunes}
    elapsed = time.perf_counter() - started
    return _build_report(cfg, examined, hits, cuts_total, incomplete, elapsed)


_BLOCK_ALPHABET = (TwoBlock(1, 1), TwoBlock(1, -1), TwoBlock(-1, 1), TwoBlock(-1, -1))


def all_block_sequences(length: int) -> Iterator[BlockSequence]:
    """Every block sequence of the given even length, in lexicographic
    order with ++ < +- < -+ < --."""
    if length < 2 or length % 2 != 0:
        raise ValueError("length must be even and at least 2")
    for combo in itertools.product(_BLOCK_ALPHABET, repeat=length):
        yield BlockSequence(combo)


def enumerate_block_sequences(
    n: int, predicate: Callable[[BlockSequence], bool] | None = None
) -> Iterator[BlockSequence]:
    """Block sequences of length 2n with exactly n even blocks, in
    lexicographic order, optionally filtered by a predicate.

    n is capped at 6 to keep the 4^(2n) space at desk scale.
    """
    if not 1 <= n <= 6:
        raise ValueError(f"n must be between 1 and 6, got {n}")
    length = 2 * n

    def walk(prefix: tuple[TwoBlock, ...], evens: int) -> Iterator[BlockSequence]:
        pos = len(prefix)
        if pos == length:
            bs = BlockSequence(prefix)
            if predicate is None or predicate(bs):
                yield bs
            return
        remaining = length - pos - 1
        for block in _BLOCK_ALPHABET:
            count = evens + block.is_even
            if count > n or count + remaining < n:
                continue
            yield from walk(prefix + (block,), count)

    yield from walk((), 0)
