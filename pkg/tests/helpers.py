"""Shared oracles and generators for the test suite.

The dense-matrix oracle here is deliberately independent of the library's
autocorrelation path: it builds the full circulant by index arithmetic and
multiplies it out with numpy integer arithmetic.
"""

from __future__ import annotations

import itertools
import random

import numpy as np


def dense_circulant(text: str) -> np.ndarray:
    entries = [1 if ch == "+" else -1 for ch in text]
    L = len(entries)
    return np.array(
        [[entries[(c - r) % L] for c in range(L)] for r in range(L)], dtype=np.int64
    )


def dense_hadamard_ok(text: str) -> bool:
    """H . H^T == L . I, with orders 1 and 2 excluded as outside the 4n setting."""
    H = dense_circulant(text)
    L = H.shape[0]
    if L in (1, 2):
        return False
    return bool((H @ H.T == L * np.eye(L, dtype=np.int64)).all())


def all_sign_texts(length: int):
    for combo in itertools.product("+-", repeat=length):
        yield "".join(combo)


def random_sign_text(rng: random.Random, length: int) -> str:
    return "".join(rng.choice("+-") for _ in range(length))
