"""Codimension numbers ``C_a`` and the expected ranks built from them."""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Sequence

__all__ = [
    "codim",
    "expected_rank_linear_pair",
    "expected_rank_ci",
    "expected_rank_ci_all_ones",
    "monotonicity_violations",
]


def codim(n: int, d: int, a: Sequence[int]) -> int:
    """Inclusion-exclusion count

        C(n+1+d, n+1) - sum_{k>=1} (-1)^{k-1} sum_{|S|=k, sum_S a <= d} C(n+1+d-sum_S a, n+1)

    where ``S`` runs over index subsets of ``a`` (repeated values are distinct
    elements).
    """
    a = [int(x) for x in a]
    if not a:
        raise ValueError("a must be non-empty")
    if any(x < 1 for x in a):
        raise ValueError(f"entries of a must be positive, got {a}")
    total = comb(n + 1 + d, n + 1)
    for k in range(1, len(a) + 1):
        inner = 0
        for S in combinations(range(len(a)), k):
            s = sum(a[i] for i in S)
            if s <= d:
                inner += comb(n + 1 + d - s, n + 1)
        total -= (-1) ** (k - 1) * inner
    return total


def _check_nd(n: int, d: int) -> None:
    if n < 2 or n % 2:
        raise ValueError(f"n must be an even integer >= 2, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")


def expected_rank_linear_pair(n: int, d: int, m: int) -> int:
    """``2 C_{1^{n/2+1}, (d-1)^{n/2+1}} - C_{1^{n-m+1}, (d-1)^{m+1}}``."""
    _check_nd(n, d)
    h = n // 2
    if not -1 <= m <= h:
        raise ValueError(f"m must lie in [-1, {h}], got {m}")
    both = [1] * (h + 1) + [d - 1] * (h + 1)
    inter = [1] * (n - m + 1) + [d - 1] * (m + 1)
    return 2 * codim(n, d, both) - codim(n, d, inter)


def expected_rank_ci(n: int, d: int, degrees: Sequence[int]) -> int:
    """``C_{d_1, ..., d_{n/2+1}, d - d_1, ..., d - d_{n/2+1}}``."""
    _check_nd(n, d)
    degrees = [int(x) for x in degrees]
    if len(degrees) != n // 2 + 1:
        raise ValueError(f"expected {n // 2 + 1} degrees, got {len(degrees)}")
    if any(not 1 <= x < d for x in degrees):
        raise ValueError(f"degrees must lie in [1, {d - 1}], got {degrees}")
    return codim(n, d, degrees + [d - x for x in degrees])


def expected_rank_ci_all_ones(n: int, d: int) -> int:
    """``C(n/2 + d, d) - (n/2 + 1)^2``."""
    _check_nd(n, d)
    h = n // 2
    return comb(h + d, d) - (h + 1) ** 2


def monotonicity_violations(n: int, d: int, size: int) -> list[tuple[tuple[int, ...], int, int]]:
    """Non-decreasing ``a`` of length ``size`` in ``[1, d]`` where raising one entry by 1 increases ``C_a``.

    Each hit is ``(a, position, increase)``.  ``C_a`` is not monotone in general,
    so this reports rather than asserts.
    """
    out = []
    for a in combinations_with_replacement(range(1, d + 1), size):
        base = codim(n, d, a)
        for pos in range(size):
            if a[pos] >= d or (pos + 1 < size and a[pos + 1] == a[pos]):
                continue
            raised = list(a)
            raised[pos] += 1
            delta = codim(n, d, raised) - base
            if delta > 0:
                out.append((a, pos, delta))
    return out
