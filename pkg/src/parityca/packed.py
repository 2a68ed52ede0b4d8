"""Bit-parallel kernels over arrays of packed configurations.

Each uint64 element holds one whole configuration, bit i = cell i, which
lets a single bitwise operation process every cell of every configuration
in the array at once. Cyclic-shift based kernels need 2n - 2 < 64, so
they are good up to n = 31; ``batch_step`` only ever shifts by less than
the width and works up to n = 63, wide enough for concatenation lifts.
"""
from __future__ import annotations

import numpy as np

from .rule import RuleTable

_U = np.uint64
_ONE = _U(1)
_WINDOW = _U(0x1FF)


def lut64(rule: RuleTable) -> np.ndarray:
    return np.frombuffer(rule.outputs, dtype=np.uint8).astype(np.uint64)


def mask_of(n: int) -> np.uint64:
    return _U((1 << n) - 1)


def rotl(v: np.ndarray, k: int, n: int) -> np.ndarray:
    """bit i of the result = bit (i + k) mod n of v.

    The left shift may carry bits past position 63; uint64 arithmetic
    drops them and they are all above the n-bit mask anyway.
    """
    k %= n
    if k == 0:
        return v
    return ((v >> _U(k)) | (v << _U(n - k))) & mask_of(n)


def popcount(v: np.ndarray) -> np.ndarray:
    return np.bitwise_count(v)


def parity_bits(v: np.ndarray) -> np.ndarray:
    return np.bitwise_count(v) & np.uint8(1)


def batch_step(lut: np.ndarray, c: np.ndarray, n: int) -> np.ndarray:
    """Apply the rule once to every packed configuration in c.

    The nine-bit window code slides one cell per iteration: shift in the
    next cell, mask to nine bits, gather the outputs.
    """
    code = np.zeros_like(c)
    for j in range(-4, 5):
        code = (code << _ONE) | ((c >> _U(j % n)) & _ONE)
    out = lut[code]
    for i in range(1, n):
        code = ((code << _ONE) & _WINDOW) | ((c >> _U((i + 4) % n)) & _ONE)
        out |= lut[code] << _U(i)
    return out


def match_mask(c: np.ndarray, n: int, pattern: str, offset: int = 0) -> np.ndarray:
    """bit p set iff the '0'/'1' pattern occurs starting at cell p + offset."""
    mask = mask_of(n)
    m = np.full_like(c, mask)
    for j, ch in enumerate(pattern):
        r = rotl(c, offset + j, n)
        m &= r if ch == "1" else ~r
    return m & mask


def box_mask(c: np.ndarray, n: int) -> np.ndarray:
    """bit i set iff cells (i, i+1) form a box (01 after 1, before 00)."""
    return match_mask(c, n, "10100", offset=-1)


def switch_counts(c: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Total switch count per configuration, plus the box start mask."""
    mask = mask_of(n)
    box = box_mask(c, n)
    box_cells = box | rotl(box, -1, n)
    diff = (c ^ rotl(c, 1, n)) & mask
    regular = diff & ~box_cells & ~rotl(box_cells, 1, n)
    s = np.bitwise_count(regular).astype(np.int64) + np.bitwise_count(box).astype(np.int64)
    return s, box


def domain_masks(c: np.ndarray, n: int) -> dict[str, np.ndarray]:
    """Start-position masks for all twelve domain kinds."""
    x = lambda k: rotl(c, k, n)
    out: dict[str, np.ndarray] = {}
    out["D12"] = match_mask(c, n, "11100")
    out["D34"] = match_mask(c, n, "00100")
    d56 = match_mask(c, n, "0110")
    tail56 = x(4) & ~x(5) & ~x(6)
    out["D56b"] = d56 & tail56
    out["D56r"] = d56 & ~tail56
    d78 = match_mask(c, n, "001010")
    out["D78r"] = d78 & x(6)
    out["D78b"] = d78 & ~x(6)
    d910 = match_mask(c, n, "111010")
    out["D910b"] = d910 & ~x(6)
    boxy = ~x(7) & ~x(8)
    out["D910rb"] = d910 & x(6) & boxy
    out["D910r"] = d910 & x(6) & ~boxy
    out["D911"] = match_mask(c, n, "1110111")
    d912 = match_mask(c, n, "1110110")
    tail912 = x(7) & ~x(8) & ~x(9)
    out["D912b"] = d912 & tail912
    out["D912r"] = d912 & ~tail912
    mask = mask_of(n)
    return {k: v & mask for k, v in out.items()}


def merge_mask(c: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    """Sites where the update joins two blocks of 1s (y must be the step of c)."""
    sites = match_mask(c, n, "11100") | match_mask(c, n, "00100")
    return sites & rotl(y, 5, n)


def ordered_block_length_masks(
    c: np.ndarray, n: int, max_length: int
) -> dict[int, np.ndarray]:
    """Start masks of ordered blocks, keyed by even length from 4 upward.

    The pair-run mask R_k is the AND of the no-10-pair mask over k aligned
    pairs; the start, end and follow conditions are applied per length.
    """
    mask = mask_of(n)
    pair10 = c & ~rotl(c, 1, n) & mask
    pair01 = ~c & rotl(c, 1, n) & mask
    pair11 = c & rotl(c, 1, n) & mask
    good = ~pair10 & mask
    out: dict[int, np.ndarray] = {}
    run = good
    for half in range(2, max_length // 2 + 1):
        run = run & rotl(good, 2 * (half - 1), n)
        length = 2 * half
        last = 2 * (half - 1)
        m = run & pair01 & ~rotl(pair01, last, n)
        m &= ~(rotl(pair11, last, n) & rotl(c, length, n))
        out[length] = m
    return out


def necklace_mask(c: np.ndarray, n: int) -> np.ndarray:
    """True where c is the least element of its rotation class."""
    keep = np.ones(c.shape, dtype=bool)
    for k in range(1, n):
        keep &= c <= rotl(c, k, n)
    return keep
