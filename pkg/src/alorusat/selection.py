"""k-th order statistic by Hoare's FIND (quickselect)."""

from __future__ import annotations

import random
from typing import MutableSequence, TypeVar

T = TypeVar("T")


def select_kth(values: MutableSequence[T], k: int, rng: random.Random | None = None) -> T:
    """Return the k-th smallest element (1-based, duplicates counted).

    ``values`` is permuted in place.  The pivot is drawn from ``rng`` so a
    seeded generator makes the permutation reproducible.  Three-way
    partitioning keeps duplicate-heavy inputs linear.
    """
    n = len(values)
    if not 1 <= k <= n:
        raise IndexError(f"k={k} out of range for {n} values")
    if rng is None:
        rng = random.Random(0)
    target = k - 1
    lo, hi = 0, n - 1
    a = values
    while lo < hi:
        pivot = a[rng.randint(lo, hi)]
        # Dutch-flag partition of a[lo..hi]: < pivot | == pivot | > pivot
        lt, i, gt = lo, lo, hi
        while i <= gt:
            x = a[i]
            if x < pivot:
                a[lt], a[i] = x, a[lt]
                lt += 1
                i += 1
            elif pivot < x:
                a[gt], a[i] = x, a[gt]
                gt -= 1
            else:
                i += 1
        if target < lt:
            hi = lt - 1
        elif target > gt:
            lo = gt + 1
        else:
            return pivot
    return a[target]
