"""Exponent index sets and linear cycles of the Fermat variety ``x_0^d + ... + x_{n+1}^d = 0``."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod
from typing import Iterator, Sequence

__all__ = [
    "FermatParams",
    "LinearCycle",
    "enumerate_index_set",
    "iter_index_set",
    "index_set_size",
    "in_check_set",
    "permutation_sign",
    "enumerate_linear_cycles",
    "linear_cycle_count",
    "standard_pairs",
]


@dataclass(frozen=True)
class FermatParams:
    """Even dimension ``n`` and degree ``d`` of the Fermat variety."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 2 or self.n % 2:
            raise ValueError(f"n must be an even integer >= 2, got {self.n}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")

    @property
    def half(self) -> int:
        return self.n // 2

    @property
    def nvars(self) -> int:
        return self.n + 2

    @property
    def order(self) -> int:
        """Order of the root of unity ``zeta_{2d}``."""
        return 2 * self.d

    @property
    def top_degree(self) -> int:
        """Total degree ``(n/2 + 1) d - n - 2`` of the period indices."""
        return (self.half + 1) * self.d - self.n - 2

    @property
    def row_degree(self) -> int:
        return self.half * self.d - self.n - 2

    @property
    def col_degree(self) -> int:
        return self.d


def iter_index_set(params: FermatParams, N: int) -> Iterator[tuple[int, ...]]:
    """Lexicographically ordered tuples in ``[0, d-2]^(n+2)`` with entry sum ``N``."""
    cap = params.d - 2
    k = params.nvars
    if N < 0 or N > k * cap:
        return

    def rec(pos: int, remaining: int, prefix: list[int]):
        if pos == k - 1:
            prefix.append(remaining)
            yield tuple(prefix)
            prefix.pop()
            return
        room = (k - pos - 1) * cap
        for v in range(max(0, remaining - room), min(cap, remaining) + 1):
            prefix.append(v)
            yield from rec(pos + 1, remaining - v, prefix)
            prefix.pop()

    yield from rec(0, N, [])


def enumerate_index_set(params: FermatParams, N: int) -> list[tuple[int, ...]]:
    return list(iter_index_set(params, N))


def index_set_size(params: FermatParams, N: int) -> int:
    """Inclusion-exclusion count of the index set, without enumerating it."""
    k, cap = params.nvars, params.d - 2
    if N < 0 or N > k * cap:
        return 0
    total = 0
    for j in range(k + 1):
        rest = N - j * (cap + 1)
        if rest < 0:
            break
        total += (-1) ** j * comb(k, j) * comb(rest + k - 1, k - 1)
    return total


def standard_pairs(params: FermatParams) -> list[tuple[int, int]]:
    """Consecutive coordinate pairs ``(0, 1), (2, 3), ..., (n, n+1)``."""
    return [(2 * l, 2 * l + 1) for l in range(params.half + 1)]


def in_check_set(params: FermatParams, i: Sequence[int]) -> bool:
    """Whether ``i`` lies in the top-degree box and every consecutive pair sums to ``d - 2``."""
    if len(i) != params.nvars:
        raise ValueError(f"index must have length {params.nvars}, got {len(i)}")
    cap = params.d - 2
    if any(v < 0 or v > cap for v in i) or sum(i) != params.top_degree:
        return False
    return all(i[u] + i[v] == cap for u, v in standard_pairs(params))


def permutation_sign(b: Sequence[int]) -> int:
    """Parity of a permutation of ``{0, ..., len(b)-1}``: +1 if even."""
    n = len(b)
    if sorted(b) != list(range(n)):
        raise ValueError(f"{list(b)} is not a permutation of 0..{n - 1}")
    seen = [False] * n
    sign = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = b[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class LinearCycle:
    """The linear subspace ``x_{b_{2e}} = zeta_{2d}^{1 + 2 a[e]} x_{b_{2e+1}}``, ``e = 0..n/2``.

    ``a[e]`` corresponds to the exponent attached to the ``e``-th equation
    (``a_1, a_3, ..., a_{n+1}`` in odd-subscript notation).
    """

    a: tuple[int, ...]
    b: tuple[int, ...]

    @property
    def sign(self) -> int:
        return permutation_sign(self.b)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(self.b[2 * e], self.b[2 * e + 1]) for e in range(len(self.a))]

    def validate(self, params: FermatParams) -> None:
        if len(self.b) != params.nvars:
            raise ValueError(f"b must have length {params.nvars}, got {len(self.b)}")
        permutation_sign(self.b)
        if len(self.a) != params.half + 1:
            raise ValueError(f"a must have length {params.half + 1}, got {len(self.a)}")
        if any(x < 0 or x > params.d - 1 for x in self.a):
            raise ValueError(f"entries of a must lie in [0, {params.d - 1}], got {self.a}")

    def is_canonical(self) -> bool:
        if not self.b or self.b[0] != 0:
            return False
        used: set[int] = set()
        for k, v in enumerate(self.b):
            if k % 2 == 0 and v != min(set(range(len(self.b))) - used):
                return False
            used.add(v)
        return True

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "sign": self.sign}


def _canonical_permutations(nvars: int) -> Iterator[tuple[int, ...]]:
    def rec(remaining: list[int], prefix: list[int]):
        if not remaining:
            yield tuple(prefix)
            return
        first, rest = remaining[0], remaining[1:]
        for k, partner in enumerate(rest):
            yield from rec(rest[:k] + rest[k + 1 :], prefix + [first, partner])

    yield from rec(list(range(nvars)), [])


def enumerate_linear_cycles(params: FermatParams) -> list[LinearCycle]:
    """All canonical-form linear cycles of dimension ``n/2``."""
    from itertools import product

    out = []
    for b in _canonical_permutations(params.nvars):
        for a in product(range(params.d), repeat=params.half + 1):
            out.append(LinearCycle(tuple(a), b))
    return out


def linear_cycle_count(params: FermatParams) -> int:
    """``1 * 3 * ... * (n+1) * d^(n/2 + 1)``."""
    return prod(range(1, params.n + 2, 2)) * params.d ** (params.half + 1)
