"""Bit-mask utilities shared across the package.

Index convention: a basis index x in [0, 2^n) encodes qubit 0 as the
least-significant bit.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def weight(x: int) -> int:
    """Hamming weight of a bit-mask."""
    return int(x).bit_count()


def bit(x: int, q: int) -> int:
    return (x >> q) & 1


def parity(x) -> "np.ndarray | int":
    """Parity of the set-bit count, elementwise on integer arrays."""
    if isinstance(x, (int, np.integer)):
        return int(x).bit_count() & 1
    return (np.bitwise_count(np.asarray(x, dtype=np.uint64)) & 1).astype(np.int8)


def hamming_weight_table(n: int) -> np.ndarray:
    """Weights of all masks 0..2^n-1 (uint8), built by doubling."""
    w = np.zeros(1, dtype=np.uint8)
    for _ in range(n):
        w = np.concatenate([w, w + 1])
    return w


def bit_columns(values: np.ndarray, n: int) -> np.ndarray:
    """(len(values), n) array of bits; column q is qubit q."""
    v = np.asarray(values, dtype=np.uint64)
    return ((v[:, None] >> np.arange(n, dtype=np.uint64)[None, :]) & 1).astype(np.uint8)


def masks_of_weight(n: int, w: int) -> np.ndarray:
    """All masks of Hamming weight w, in increasing numeric order."""
    if not 0 <= w <= n:
        raise ValueError(f"weight {w} out of range for n={n}")
    vals = [sum(1 << q for q in combo) for combo in combinations(range(n), w)]
    return np.array(sorted(vals), dtype=np.int64)


def masks_up_to_weight(n: int, l: int) -> np.ndarray:
    """Masks with weight <= l, sorted by (weight, numeric value)."""
    if not 0 <= l <= n:
        raise ValueError(f"max weight {l} out of range for n={n}")
    return np.concatenate([masks_of_weight(n, w) for w in range(l + 1)])
