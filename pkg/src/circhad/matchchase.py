"""Matching pairs of even 2-blocks and the obligation-chasing procedure.

At a fixed nonzero lag u, each index pair (i, i+u) whose 2-blocks are both
even has a block product equal to +2J or -2J (J the all-ones 2x2 matrix).
Two such pairs match when their products are negatives of each other.  A
lag matching is an involutive, possibly partial pairing of such index
pairs; a matching book holds at most one matching per lag.

The chase starts from an obligation (a, b) where both blocks are even and
block a is even but not symmetric.  It looks up the pair matched with
(a, b) at lag (b - a), say (l, m), and continues with the obligation
(a, m); the first coordinate never changes.  It stops with outcome

* MatchingUnavailable when an obligation has no matched pair in the book,
* Cycle when the next obligation was already visited,
* Degenerate when the next obligation would collapse to (a, a).

The bundled counterexample() instance has three even blocks, none
symmetric, and its chase cycles after two steps: a matching walk can
revisit its starting obligation instead of running out of matchings.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .blockform import BlockSequence, block_product, is_symmetric_even

__all__ = [
    "IndexPair",
    "LagMatching",
    "MatchingBook",
    "ValidationReport",
    "ChaseOutcome",
    "ChaseStep",
    "ChaseTrace",
    "validate_matching",
    "even_pairs_at_lag",
    "find_matching",
    "find_book",
    "chase",
    "counterexample",
    "Counterexample",
    "parse_matching_lines",
    "render_matching_lines",
]


@dataclass(frozen=True, order=True)
class IndexPair:
    """Ordered index pair (first, second), usually (i, (i + u) mod 2n)."""

    first: int
    second: int

    def __post_init__(self) -> None:
        if self.first < 0 or self.second < 0:
            raise ValueError("pair indices must be nonnegative")
        if self.first == self.second:
            raise ValueError("pair indices must differ")

    def lag(self, mod: int) -> int:
        return (self.second - self.first) % mod

    def __str__(self) -> str:
        return f"({self.first},{self.second})"


MatchedPair = tuple[IndexPair, IndexPair]


@dataclass(frozen=True)
class LagMatching:
    """Involutive pairing of index pairs at one lag.

    Stored canonically: each matched 2-set is sorted, the 2-sets themselves
    are sorted, and no index pair appears twice.  May be partial; may be
    empty.
    """

    lag: int
    pairs: tuple[MatchedPair, ...]

    @classmethod
    def of(cls, lag: int, pairs: Iterable[tuple[IndexPair, IndexPair]]) -> "LagMatching":
        canonical = []
        seen: set[IndexPair] = set()
        for p, q in pairs:
            if p == q:
                raise ValueError(f"{p} cannot be matched with itself")
            for member in (p, q):
                if member in seen:
                    raise ValueError(f"index pair {member} is matched more than once")
                seen.add(member)
            canonical.append((min(p, q), max(p, q)))
        return cls(lag, tuple(sorted(canonical)))

    def partner_of(self, pair: IndexPair) -> IndexPair | None:
        for p, q in self.pairs:
            if pair == p:
                return q
            if pair == q:
                return p
        return None

    def index_pairs(self) -> tuple[IndexPair, ...]:
        return tuple(x for two in self.pairs for x in two)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


class MatchingBook:
    """At most one lag matching per lag, all over one block sequence."""

    __slots__ = ("_by_lag",)

    def __init__(self, matchings: Iterable[LagMatching] = ()) -> None:
        by_lag: dict[int, LagMatching] = {}
        for m in matchings:
            if m.lag in by_lag:
                raise ValueError(f"duplicate matching for lag {m.lag}")
            by_lag[m.lag] = m
        self._by_lag = by_lag

    def lags(self) -> tuple[int, ...]:
        return tuple(sorted(self._by_lag))

    def matching_at(self, lag: int) -> LagMatching | None:
        return self._by_lag.get(lag)

    def partner_of(self, pair: IndexPair, mod: int) -> IndexPair | None:
        m = self._by_lag.get(pair.lag(mod))
        return None if m is None else m.partner_of(pair)

    def matchings(self) -> tuple[LagMatching, ...]:
        return tuple(self._by_lag[u] for u in sorted(self._by_lag))

    def __len__(self) -> int:
        return len(self._by_lag)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatchingBook):
            return NotImplemented
        return self._by_lag == other._by_lag


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a matching against a block sequence."""

    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _pair_violations(bs: BlockSequence, u: int, pair: IndexPair) -> list[str]:
    mod = len(bs)
    problems = []
    if pair.first >= mod or pair.second >= mod:
        problems.append(f"{pair}: index out of range for {mod} blocks")
        return problems
    if pair.lag(mod) != u:
        problems.append(f"{pair}: lag is {pair.lag(mod)}, matching is for lag {u}")
    if not bs[pair.first].is_even:
        problems.append(f"{pair}: block {pair.first} is odd")
    if not bs[pair.second].is_even:
        problems.append(f"{pair}: block {pair.second} is odd")
    return problems


def validate_matching(bs: BlockSequence, m: LagMatching) -> ValidationReport:
    """Check every matching invariant against bs; ok means no violations.

    Violations reported: lag zero, indices out of range, lag-inconsistent
    pairs, odd blocks, products that do not negate, and reused pairs (the
    last is structurally impossible for LagMatching.of, but guarded anyway).
    """
    mod = len(bs)
    violations: list[str] = []
    u = m.lag % mod
    if u == 0:
        return ValidationReport((f"lag {m.lag} is zero modulo {mod}",))
    seen: set[IndexPair] = set()
    for p, q in m.pairs:
        for member in (p, q):
            if member in seen:
                violations.append(f"index pair {member} is matched more than once")
            seen.add(member)
        bad = _pair_violations(bs, u, p) + _pair_violations(bs, u, q)
        violations.extend(bad)
        if bad:
            continue
        prod_p = block_product(bs[p.first], bs[p.second])
        prod_q = block_product(bs[q.first], bs[q.second])
        if prod_p != -prod_q:
            violations.append(
                f"{p}~{q}: products {prod_p} and {prod_q} are not negatives"
            )
    return ValidationReport(tuple(violations))


def even_pairs_at_lag(bs: BlockSequence, u: int) -> tuple[IndexPair, ...]:
    """All index pairs (i, i+u) whose blocks are both even, by first index."""
    mod = len(bs)
    u %= mod
    if u == 0:
        raise ValueError("lag must be nonzero modulo the block count")
    return tuple(
        IndexPair(i, (i + u) % mod)
        for i in range(mod)
        if bs[i].is_even and bs[(i + u) % mod].is_even
    )


def find_matching(bs: BlockSequence, u: int) -> LagMatching:
    """Maximal product-negating matching at lag u, built deterministically.

    Even-even index pairs at lag u split by product sign into a +2J list
    and a -2J list, each already ordered by first index; pairing them off
    smallest-first gives the matching.  It is perfect exactly when the two
    lists have equal length, i.e. when the cancellation residual vanishes.
    """
    plus: list[IndexPair] = []
    minus: list[IndexPair] = []
    for pair in even_pairs_at_lag(bs, u):
        sign = bs[pair.first].diag * bs[pair.second].diag
        (plus if sign > 0 else minus).append(pair)
    return LagMatching.of(u % len(bs), zip(plus, minus))


def find_book(bs: BlockSequence) -> MatchingBook:
    """find_matching at every nonzero lag, keeping the nonempty results."""
    found = (find_matching(bs, u) for u in range(1, len(bs)))
    return MatchingBook(m for m in found if m.pairs)


class ChaseOutcome(enum.Enum):
    CYCLE = "Cycle"
    MATCHING_UNAVAILABLE = "MatchingUnavailable"
    DEGENERATE = "Degenerate"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ChaseStep:
    """One visited obligation and the pair matched with it, if any."""

    obligation: IndexPair
    matched: IndexPair | None


@dataclass(frozen=True)
class ChaseTrace:
    """Ordered chase log.  For a Cycle, repeat is the revisited obligation;
    otherwise it is None and the last step tells the story."""

    steps: tuple[ChaseStep, ...]
    outcome: ChaseOutcome
    repeat: IndexPair | None = None

    def successful_steps(self) -> int:
        return sum(1 for s in self.steps if s.matched is not None)


def chase(bs: BlockSequence, book: MatchingBook, start: IndexPair) -> ChaseTrace:
    """Iterate the obligation step rule from start until a terminal outcome.

    Step rule: for the obligation (a, b), find its matched pair (l, m) in
    the book at lag (b - a) mod 2n; the next obligation is (a, m).  The
    start must be an even-even pair whose first block is not symmetric.
    Obligations live in a finite set with fixed first coordinate, so the
    chase always terminates.
    """
    mod = len(bs)
    if start.first >= mod or start.second >= mod:
        raise ValueError(f"start {start} out of range for {mod} blocks")
    for idx in (start.first, start.second):
        if not bs[idx].is_even:
            raise ValueError(f"start {start} touches odd block {idx}")
    if is_symmetric_even(bs, start.first):
        raise ValueError(
            f"block {start.first} is symmetric; the chase premise needs a "
            "non-symmetric even block"
        )
    steps: list[ChaseStep] = []
    seen = {start}
    current = start
    while True:
        partner = book.partner_of(current, mod)
        if partner is None:
            steps.append(ChaseStep(current, None))
            return ChaseTrace(tuple(steps), ChaseOutcome.MATCHING_UNAVAILABLE)
        steps.append(ChaseStep(current, partner))
        if partner.second == start.first:
            return ChaseTrace(tuple(steps), ChaseOutcome.DEGENERATE)
        nxt = IndexPair(start.first, partner.second)
        if nxt in seen:
            return ChaseTrace(tuple(steps), ChaseOutcome.CYCLE, repeat=nxt)
        seen.add(nxt)
        current = nxt


class Counterexample(NamedTuple):
    blocks: BlockSequence
    book: MatchingBook
    start: IndexPair


def counterexample() -> Counterexample:
    """The bundled six-block instance whose chase cycles.

    Blocks ++,+-,--,+-,--,+- have even blocks 0, 2 and 4, none of them
    symmetric.  With (0,2)~(2,4) matched at lag 2 and (0,4)~(4,2) at lag 4,
    the chase from (0,2) revisits (0,2) after two steps.
    """
    blocks = BlockSequence.from_text("++,+-,--,+-,--,+-")
    book = MatchingBook(
        [
            LagMatching.of(2, [(IndexPair(0, 2), IndexPair(2, 4))]),
            LagMatching.of(4, [(IndexPair(0, 4), IndexPair(4, 2))]),
        ]
    )
    return Counterexample(blocks, book, IndexPair(0, 2))


_MATCHING_LINE = re.compile(r"^u=(\d+):\((\d+),(\d+)\)~\((\d+),(\d+)\)$")


def parse_matching_lines(lines: Iterable[str]) -> MatchingBook:
    """Parse 'u=<lag>: (i,j)~(l,m)' lines into a matching book.

    Whitespace is ignored everywhere and blank lines are skipped.  Lines
    with the same lag accumulate into one matching.  Raises ValueError with
    the offending line number on any malformed line or reused index pair.
    """
    by_lag: dict[int, list[tuple[IndexPair, IndexPair]]] = {}
    for lineno, raw in enumerate(lines, start=1):
        stripped = re.sub(r"\s+", "", raw)
        if not stripped:
            continue
        match = _MATCHING_LINE.match(stripped)
        if match is None:
            raise ValueError(f"line {lineno}: cannot parse matching {raw.strip()!r}")
        u, i, j, l, m = (int(g) for g in match.groups())
        try:
            entry = (IndexPair(i, j), IndexPair(l, m))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        by_lag.setdefault(u, []).append(entry)
    return MatchingBook(LagMatching.of(u, ps) for u, ps in sorted(by_lag.items()))


def render_matching_lines(book: MatchingBook) -> list[str]:
    return [
        f"u={m.lag}: {p}~{q}"
        for m in book.matchings()
        for p, q in m.pairs
    ]
