from hypothesis import given
from hypothesis import strategies as st

from triadcalc._bits import (
    EXHAUSTIVE,
    SAMPLED,
    Budget,
    iter_bits,
    lectic_subsets,
    popcount,
    reverse_bits,
    subset_scan,
    submasks,
)


def test_budget_regimes():
    b = Budget()
    assert (b.max_exhaustive, b.sample_count, b.max_carrier) == (16, 10_000, 30)
    assert b.regime(16) == EXHAUSTIVE and b.regime(17) == SAMPLED


def test_lectic_order_treats_index_zero_as_most_significant():
    assert lectic_subsets(2) == (0b00, 0b10, 0b01, 0b11)


def test_subset_scan_exhaustive_and_sampled():
    masks, regime = subset_scan(4)
    assert regime == EXHAUSTIVE and sorted(masks) == list(range(16))
    masks, regime = subset_scan(20, Budget(sample_count=50, seed=3))
    assert regime == SAMPLED and 0 in masks and (1 << 20) - 1 in masks
    assert masks == subset_scan(20, Budget(sample_count=50, seed=3))[0]


@given(st.integers(0, 1 << 12))
def test_bit_helpers(mask):
    assert popcount(mask) == len(list(iter_bits(mask)))
    subs = list(submasks(mask))
    assert len(subs) == 2 ** popcount(mask) and all(s & ~mask == 0 for s in subs)
    assert reverse_bits(reverse_bits(mask, 13), 13) == mask
