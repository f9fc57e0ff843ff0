"""Bitmask helpers and the subset-quantifier budget.

Term sets are Python ints: bit ``i`` set means the term with index ``i`` on
that side is a member.  Lectic order puts index 0 as the most significant
element, so it coincides with integer order on the bit-reversed mask.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


@dataclass(frozen=True)
class Budget:
    """Limits for quantifiers over all subsets of a side."""

    max_exhaustive: int = 16
    sample_count: int = 10_000
    seed: int = 0
    max_carrier: int = 30

    def regime(self, n: int) -> str:
        return EXHAUSTIVE if n <= self.max_exhaustive else SAMPLED

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random(self.seed * 1_000_003 + salt)


DEFAULT_BUDGET = Budget()


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def lowest_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def reverse_bits(mask: int, n: int) -> int:
    out = 0
    for i in range(n):
        if mask >> i & 1:
            out |= 1 << (n - 1 - i)
    return out


def lectic_key(mask: int, n: int) -> int:
    return reverse_bits(mask, n)


@lru_cache(maxsize=32)
def _lectic_table(n: int) -> tuple[int, ...]:
    return tuple(reverse_bits(m, n) for m in range(1 << n))


def lectic_subsets(n: int) -> tuple[int, ...]:
    """All ``2**n`` masks in lectic order (the empty set first)."""
    if n <= 20:
        return _lectic_table(n)
    return tuple(reverse_bits(m, n) for m in range(1 << n))


def subset_scan(n: int, budget: Budget = DEFAULT_BUDGET, salt: int = 0):
    """Return ``(masks, regime)`` for a quantifier over subsets of ``n`` terms.

    Exhaustive regimes yield every subset in lectic order; sampled regimes
    yield ``budget.sample_count`` uniform draws (always including the empty
    and the full set) from a seeded generator.
    """
    if budget.regime(n) == EXHAUSTIVE:
        return lectic_subsets(n), EXHAUSTIVE
    rng = budget.rng(salt)
    masks = [0, full_mask(n)]
    masks.extend(rng.getrandbits(n) for _ in range(max(0, budget.sample_count - 2)))
    return masks, SAMPLED


def submasks(mask: int) -> Iterator[int]:
    """Every submask of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
