"""Rank of period matrices over ``Q(zeta_{2d})``.

Both routes start from the block decomposition of the matrix (connected
components of the nonzero pattern, or the pair-sum blocks of a
:class:`~fermat_periods.matrix.LazyPeriodMatrix`); the rank is the sum of the
block ranks.

* exact: entries are reduced modulo ``Phi_{2d}`` to integer coordinates and
  each block is eliminated with fraction-free (Bareiss) steps in ``Z[zeta]``.
  Divisions by the previous pivot are exact; they go through the field
  inverse and are checked.
* modular: ``zeta`` is sent to an element of order ``2d`` in ``F_p`` for the
  first ``k`` primes ``p = 1 (mod 2d)`` above ``2^20`` and the blocks are
  eliminated there.  Specialization can only lose rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .cyclotomic import CycElt, CyclotomicField, admissible_primes, modular_embedding
from .matrix import Block, split_components

__all__ = [
    "RankResult",
    "rank_exact",
    "rank_modular",
    "rank_auto",
    "compute_rank",
    "bareiss_rank",
    "modp_rank",
    "AUTO_COLUMN_THRESHOLD",
]

AUTO_COLUMN_THRESHOLD = 500


@dataclass
class RankResult:
    rank: int
    method: str
    certified: bool
    primes: list[int] = field(default_factory=list)
    modular_ranks: list[int] = field(default_factory=list)
    blocks: int = 0

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "method": self.method,
            "certified": self.certified,
            "primes": self.primes,
            "modular_ranks": self.modular_ranks,
            "blocks": self.blocks,
        }


def _blocks_and_order(matrix) -> tuple[int, Iterable[Block]]:
    if hasattr(matrix, "iter_blocks"):
        return matrix.order, matrix.iter_blocks()
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 2, iter(())
    order = rows[0][0].order
    sparse = [{c: v for c, v in enumerate(r) if v} for r in rows]
    return order, split_components(order, sparse, len(rows[0]))


# exact -----------------------------------------------------------------------------


_INT64_SAFE = 1 << 62


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(a.max(), -a.min()))


def bareiss_rank(M: np.ndarray, field_: CyclotomicField) -> tuple[int, list[tuple[int, int]]]:
    """Rank of a block given in field coordinates, shape ``(rows, cols, phi)``.

    Pivot rule: the first nonzero entry, scanning the unreduced rows in
    row-major order.  Returns the rank and the pivots as original
    ``(row, col)`` positions.

    Steps run in int64 while a coefficient bound guarantees no overflow and
    switch to Python integers otherwise.
    """
    M = np.array(M, dtype=object)
    R, C = M.shape[0], M.shape[1]
    growth = field_.product_growth
    if 2 * growth * _max_abs(M) ** 2 < _INT64_SAFE:
        M = M.astype(np.int64)
    order = list(range(R))
    prev = None  # (inverse numerator, denominator) of the previous pivot
    pivots = []
    r = 0
    while r < R:
        nz = (M[r:] != 0).any(axis=-1)
        flat = np.flatnonzero(nz)
        if flat.size == 0:
            break
        pr, pc = divmod(int(flat[0]), C)
        pr += r
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
            order[r], order[pr] = order[pr], order[r]
        pivots.append((order[r], pc))
        piv = M[r, pc].copy()
        if r + 1 < R:
            rest = M[r + 1 :]
            bound = 2 * growth * _max_abs(M[r:]) ** 2
            if prev is not None:
                bound *= growth * _max_abs(prev[0])
            if M.dtype != object and bound >= _INT64_SAFE:
                M = M.astype(object)
                rest, piv = M[r + 1 :], piv.astype(object)
            pivrow = M[r]
            new = field_.mul_array(rest, piv[None, None, :]) - field_.mul_array(
                rest[:, pc : pc + 1, :], pivrow[None, :, :]
            )
            if prev is not None:
                inv_num, den = prev
                if M.dtype != object:
                    inv_num = inv_num.astype(np.int64)
                new = field_.mul_array(new, inv_num[None, None, :])
                q = new // den
                if not (q * den == new).all():
                    raise ArithmeticError("inexact Bareiss division")
                new = q
            M[r + 1 :] = new
        prev = _integral_inverse(piv, field_, field_.degree)
        r += 1
    return len(pivots), pivots


def _integral_inverse(x: np.ndarray, field_: CyclotomicField, deg: int):
    from math import lcm

    inv = field_.inverse(list(x))
    den = 1
    for c in inv:
        den = lcm(den, c.denominator)
    num = np.empty(deg, dtype=object)
    num[:] = [int(c * den) for c in inv]
    return num, den


def _exact_block_rank(block: Block, field_: CyclotomicField) -> int:
    if block.coeffs.size == 0:
        return 0
    M = field_.from_window_array(block.coeffs)
    if M.shape[0] > M.shape[1]:
        M = M.transpose(1, 0, 2)
    return bareiss_rank(M, field_)[0]


def rank_exact(matrix) -> RankResult:
    """Exact rank over ``Q(zeta_{2d})``.

    ``matrix`` is a :class:`PeriodMatrix`, a :class:`LazyPeriodMatrix` or a
    rectangular sequence of rows of :class:`CycElt`.
    """
    order, blocks = _blocks_and_order(matrix)
    field_ = CyclotomicField(order)
    total = nblocks = 0
    for block in blocks:
        total += _exact_block_rank(block, field_)
        nblocks += 1
    return RankResult(total, "exact", True, blocks=nblocks)


# modular ---------------------------------------------------------------------------


def modp_rank(A: np.ndarray, p: int) -> tuple[int, list[tuple[int, int]]]:
    """Rank of an int64 matrix over ``F_p`` with the same pivot rule as the exact path."""
    A = np.array(A, dtype=np.int64) % p
    R, C = A.shape
    order = list(range(R))
    pivots = []
    r = 0
    while r < R:
        flat = np.flatnonzero(A[r:])
        if flat.size == 0:
            break
        pr, pc = divmod(int(flat[0]), C)
        pr += r
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
            order[r], order[pr] = order[pr], order[r]
        pivots.append((order[r], pc))
        inv = pow(int(A[r, pc]), p - 2, p)
        A[r] = (A[r] * inv) % p
        if r + 1 < R:
            factors = A[r + 1 :, pc : pc + 1].copy()
            A[r + 1 :] = (A[r + 1 :] - factors * A[r]) % p
        r += 1
    return len(pivots), pivots


def _specialize(coeffs: np.ndarray, p: int, omega: int) -> np.ndarray:
    d = coeffs.shape[-1]
    powers = np.array([pow(omega, k, p) for k in range(d)], dtype=np.int64)
    if coeffs.dtype == object:
        reduced = (coeffs % p).astype(np.int64)
    else:
        reduced = coeffs.astype(np.int64) % p
    return (reduced @ powers) % p


def _modular_blocks(blocks: Iterable[Block], order: int, primes: Sequence[int]) -> Iterator[tuple[Block, list]]:
    omegas = [modular_embedding(order, p) for p in primes]
    for block in blocks:
        results = []
        for p, w in zip(primes, omegas):
            if block.coeffs.size == 0:
                results.append((0, []))
            else:
                results.append(modp_rank(_specialize(block.coeffs, p, w), p))
        yield block, results


def rank_modular(matrix, prime_count: int = 3) -> RankResult:
    """Rank over ``F_p`` at the first ``prime_count`` admissible primes; reports the maximum."""
    if prime_count < 1:
        raise ValueError("prime_count must be >= 1")
    order, blocks = _blocks_and_order(matrix)
    primes = admissible_primes(order, prime_count)
    per_prime = [0] * prime_count
    nblocks = 0
    for _, results in _modular_blocks(blocks, order, primes):
        nblocks += 1
        for k, (rk, _) in enumerate(results):
            per_prime[k] += rk
    certified = len(set(per_prime)) == 1
    return RankResult(max(per_prime), "modular", certified, primes, per_prime, nblocks)


def rank_auto(matrix, prime_count: int = 3, threshold: int = AUTO_COLUMN_THRESHOLD) -> RankResult:
    """Exact up to ``threshold`` columns; beyond, modular plus exact confirmation of the pivot minors.

    On the modular route each block's pivot rows and columns at the first
    prime give a square minor whose exact rank must equal the modular block
    rank, which proves the lower bound exactly.
    """
    if matrix_shape(matrix)[1] <= threshold:
        return rank_exact(matrix)
    order, blocks = _blocks_and_order(matrix)
    field_ = CyclotomicField(order)
    primes = admissible_primes(order, prime_count)
    per_prime = [0] * prime_count
    confirmed = True
    nblocks = 0
    for block, results in _modular_blocks(blocks, order, primes):
        nblocks += 1
        for k, (rk, _) in enumerate(results):
            per_prime[k] += rk
        rk, pivots = results[0]
        if rk:
            rs = [r for r, _ in pivots]
            cs = [c for _, c in pivots]
            minor = Block(rs, cs, block.coeffs[np.ix_(rs, cs)])
            if _exact_block_rank(minor, field_) != rk:
                confirmed = False
    agree = len(set(per_prime)) == 1
    return RankResult(max(per_prime), "modular+minor", agree and confirmed, primes, per_prime, nblocks)


def matrix_shape(matrix) -> tuple[int, int]:
    if hasattr(matrix, "shape"):
        return tuple(matrix.shape)
    rows = list(matrix)
    return len(rows), (len(rows[0]) if rows else 0)


def compute_rank(matrix, method: str = "auto", prime_count: int = 3) -> RankResult:
    if method == "exact":
        return rank_exact(matrix)
    if method == "modular":
        return rank_modular(matrix, prime_count)
    if method == "auto":
        return rank_auto(matrix, prime_count)
    raise ValueError(f"unknown method {method!r}")
