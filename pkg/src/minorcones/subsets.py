"""Bitmask encodings for subsets of the ground set {1, ..., n}.

Index i (1-based) corresponds to bit i-1.  Vectors indexed "by subset"
are flat tuples of length 2**n whose position is the bitmask value;
printing and canonical comparisons use the (cardinality, mask) order.
"""

from functools import lru_cache
from typing import Iterable, Sequence, Tuple


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        if i < 1:
            raise ValueError(f"index {i} out of range (1-based)")
        m |= 1 << (i - 1)
    return m


def members_of(mask: int) -> Tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(i) for i in members_of(mask)) + "}"


@lru_cache(maxsize=None)
def subset_order(n: int) -> Tuple[int, ...]:
    """All masks for ground size n, sorted by cardinality then value."""
    return tuple(sorted(range(1 << n), key=lambda m: (m.bit_count(), m)))


def ordered_entries(vector: Sequence, n: int) -> Tuple:
    """Reorder a mask-indexed vector into (size, mask) order."""
    return tuple(vector[m] for m in subset_order(n))


def complement_mask(mask: int, n: int) -> int:
    return ((1 << n) - 1) ^ mask


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    """Image of a subset under a permutation given as perm[i-1] = sigma(i)."""
    out = 0
    for i in range(len(perm)):
        if mask >> i & 1:
            out |= 1 << (perm[i] - 1)
    return out


def check_permutation(perm: Sequence[int], n: int) -> None:
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {perm!r}")
