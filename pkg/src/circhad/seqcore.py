"""Sign sequences, circulant matrices, and periodic autocorrelation.

A sign sequence is a finite sequence over {+1, -1}, written in text form
over the alphabet '+'/'-' with index 0 leftmost.  It determines a circulant
matrix whose (row r, column c) entry is h[(c - r) mod L]; the toolkit treats
the sequence and the matrix interchangeably.

Sequences are stored packed, one bit per entry, with bit k set meaning
entry k is -1.  The packed form is what the exhaustive search operates on.
All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "SignSequence",
    "PafSpectrum",
    "paf",
    "paf_spectrum",
    "is_circulant_hadamard",
    "circulant_row",
    "circulant_matrix",
]


class SignSequence:
    """Immutable sequence of +1/-1 entries; the first row of a circulant."""

    __slots__ = ("_length", "_bits")

    def __init__(self, entries: Iterable[int]) -> None:
        items = tuple(entries)
        if not items:
            raise ValueError("a sign sequence needs at least one entry")
        bits = 0
        for k, e in enumerate(items):
            if e == -1:
                bits |= 1 << k
            elif e != 1:
                raise ValueError(f"entry {k} is {e!r}; entries must be +1 or -1")
        self._length = len(items)
        self._bits = bits

    @classmethod
    def from_text(cls, text: str) -> "SignSequence":
        """Parse '+'/'-' text such as '-+++'.

        Rejects the empty string and any character outside the alphabet.
        """
        if not text:
            raise ValueError("empty sequence text")
        bits = 0
        for k, ch in enumerate(text):
            if ch == "-":
                bits |= 1 << k
            elif ch != "+":
                raise ValueError(
                    f"invalid character {ch!r} at position {k}; expected '+' or '-'"
                )
        return cls._make(len(text), bits)

    @classmethod
    def from_bits(cls, length: int, bits: int) -> "SignSequence":
        """Build from the packed form (bit k set means entry k is -1)."""
        if length < 1:
            raise ValueError("length must be positive")
        if bits < 0 or bits >> length:
            raise ValueError("bits outside the sequence length")
        return cls._make(length, bits)

    @classmethod
    def _make(cls, length: int, bits: int) -> "SignSequence":
        seq = cls.__new__(cls)
        seq._length = length
        seq._bits = bits
        return seq

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def text(self) -> str:
        return "".join("-" if self._bits >> k & 1 else "+" for k in range(self._length))

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(-1 if self._bits >> k & 1 else 1 for k in range(self._length))

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, k: int) -> int:
        # index arithmetic is cyclic: any integer index is reduced mod L
        return -1 if self._bits >> (k % self._length) & 1 else 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignSequence):
            return NotImplemented
        return self._length == other._length and self._bits == other._bits

    def __hash__(self) -> int:
        return hash((self._length, self._bits))

    def __repr__(self) -> str:
        return f"SignSequence({self.text!r})"

    def __str__(self) -> str:
        return self.text

    def row_sum(self) -> int:
        return self._length - 2 * self._bits.bit_count()

    def rotate(self, s: int) -> "SignSequence":
        """Cyclic shift: rotate(s)[k] == self[k + s]."""
        L = self._length
        s %= L
        if s == 0:
            return self
        mask = (1 << L) - 1
        return SignSequence._make(L, ((self._bits >> s) | (self._bits << (L - s))) & mask)

    def negate(self) -> "SignSequence":
        mask = (1 << self._length) - 1
        return SignSequence._make(self._length, self._bits ^ mask)


@dataclass(frozen=True)
class PafSpectrum:
    """Periodic autocorrelation at every lag, values[u] = paf(h, u)."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        L = len(self.values)
        if L == 0:
            raise ValueError("empty spectrum")
        if self.values[0] != L:
            raise ValueError("peak value must equal the sequence length")
        for u in range(1, L):
            if self.values[u] != self.values[L - u]:
                raise ValueError("spectrum must be symmetric about the half length")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, u: int) -> int:
        return self.values[u % len(self.values)]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def off_peak_zero(self) -> bool:
        return all(v == 0 for v in self.values[1:])


def _rotated_bits(bits: int, u: int, L: int) -> int:
    mask = (1 << L) - 1
    return ((bits >> u) | (bits << (L - u))) & mask if u else bits


def paf(h: SignSequence, u: int) -> int:
    """Periodic autocorrelation sum(h[k] * h[k + u]) over one period.

    The lag is cyclic, so any integer u is reduced mod len(h); in particular
    negative lags fold to their positive counterparts.
    """
    L = len(h)
    u %= L
    disagreements = (h.bits ^ _rotated_bits(h.bits, u, L)).bit_count()
    return L - 2 * disagreements


def paf_spectrum(h: SignSequence) -> PafSpectrum:
    """All lags at once: values[u] = paf(h, u) for u in 0..L-1."""
    return PafSpectrum(tuple(paf(h, u) for u in range(len(h))))


def is_circulant_hadamard(h: SignSequence) -> bool:
    """True when the circulant with first row h is a Hadamard matrix.

    Equivalent to H . H^T = L . I for the dense circulant H, which for a
    ±1 circulant means paf(h, u) = 0 at every nonzero lag.  Orders 1 and 2
    are outside the 4n setting and always report False, as does any order
    not divisible by 4.
    """
    L = len(h)
    if L % 4 != 0:
        return False
    # symmetry paf(u) == paf(L - u) makes lags above L/2 redundant
    return all(paf(h, u) == 0 for u in range(1, L // 2 + 1))


def circulant_row(h: SignSequence, r: int) -> SignSequence:
    """Row r of the circulant: entry c is h[(c - r) mod L]."""
    if not 0 <= r < len(h):
        raise ValueError(f"row index {r} out of range for order {len(h)}")
    return h.rotate(-r)


def circulant_matrix(h: SignSequence) -> np.ndarray:
    """The full dense L x L circulant as an integer array."""
    L = len(h)
    entries = np.array(h.entries, dtype=np.int64)
    return np.stack([np.roll(entries, r) for r in range(L)])
