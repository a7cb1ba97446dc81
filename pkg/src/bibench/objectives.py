"""Scalar pseudo-Boolean objectives, all maximized.

Jump objectives use the shifted convention: outside the valley the value is
the gap parameter k plus the relevant bit count, so the global optimum
dominates the plateau by exactly k and every value stays non-negative.
"""

from __future__ import annotations

from .bitstring import BitString, blocks
from .errors import ValidationError


def one_max(x: BitString) -> int:
    """Number of ones."""
    return x.index.bit_count()


def leading_ones(x: BitString) -> int:
    """Length of the maximal all-ones prefix."""
    mask = (1 << x.n) - 1
    flipped = x.index ^ mask
    if flipped == 0:
        return x.n
    return x.n - flipped.bit_length()


def trailing_zeroes(x: BitString) -> int:
    """Length of the maximal all-zeroes suffix."""
    if x.index == 0:
        return x.n
    return (x.index & -x.index).bit_length() - 1


def _check_jump_gap(n: int, k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool):
        raise ValidationError(f"jump gap must be an int, got {k!r}")
    if not 1 <= k <= n:
        raise ValidationError(f"jump gap must be in [1, {n}], got {k}")


def one_jump(x: BitString, k: int) -> int:
    """Shifted jump toward the all-ones string.

    Value is k + ones(x) when ones(x) <= n - k or x is all ones, else
    n - ones(x) (the valley).
    """
    _check_jump_gap(x.n, k)
    ones = x.index.bit_count()
    if ones <= x.n - k or ones == x.n:
        return k + ones
    return x.n - ones


def zero_jump(x: BitString, k: int) -> int:
    """Shifted jump toward the all-zeroes string (one_jump of the complement)."""
    _check_jump_gap(x.n, k)
    zeroes = x.n - x.index.bit_count()
    if zeroes <= x.n - k or zeroes == x.n:
        return k + zeroes
    return x.n - zeroes


def one_royal_road(x: BitString, block_length: int) -> int:
    """block_length times the number of all-ones blocks."""
    return block_length * sum(1 for ones, zeroes in blocks(x, block_length) if zeroes == 0)


def zero_royal_road(x: BitString, block_length: int) -> int:
    """block_length times the number of all-zeroes blocks."""
    return block_length * sum(1 for ones, zeroes in blocks(x, block_length) if ones == 0)


def count_ones_mix(x: BitString) -> int:
    """Ones in the first half plus zeroes in the second half; needs even length."""
    if x.n % 2:
        raise ValidationError(f"count_ones_mix needs an even length, got {x.n}")
    half = x.n // 2
    high = x.index >> half
    low = x.index & ((1 << half) - 1)
    return high.bit_count() + (half - low.bit_count())
