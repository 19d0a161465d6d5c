"""Closed-form periods of linear and complete-intersection cycles.

For a linear cycle ``(a, b)`` and an exponent index ``i`` of total degree
``(n/2 + 1) d - n - 2`` the period of the residue form is

    sign(b) (-1)^{n/2} / (d^{n/2+1} (n/2)!) * zeta_{2d}^{sum_e (i_{b_{2e}} + 1)(1 + 2 a_e)}

when ``i_{b_{2e}} + i_{b_{2e+1}} = d - 2`` for every ``e``, and zero otherwise.
The rational prefactor is kept apart from the cyclotomic part: it is common
to every entry of a period matrix and so irrelevant for ranks.

Three period functions ("provenances") feed the matrix builder:
:class:`SingleCycle`, :class:`LinearPair` (the sum over two fixed cycles
meeting in a ``P^m``) and :class:`CompleteIntersection`.  Each one vanishes
unless a perfect matching of the coordinates has all pair sums equal to
``d - 2``; :meth:`pairs` exposes that matching so the builder can enumerate
the nonzero pattern directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

import numpy as np

from .combinatorics import FermatParams, LinearCycle, standard_pairs
from .cyclotomic import CycElt, CycRational, exponents_to_coeffs, negacyclic_mul, root_power

__all__ = [
    "PeriodValue",
    "DegreeVector",
    "SingleCycle",
    "LinearPair",
    "CompleteIntersection",
    "linear_cycle_period",
    "pair_period",
    "ci_period",
    "linear_scalar",
    "provenance_from_json",
]


def linear_scalar(params: FermatParams) -> Fraction:
    """The positive prefactor ``1 / (d^{n/2+1} (n/2)!)``."""
    return Fraction(1, params.d ** (params.half + 1) * factorial(params.half))


@dataclass(frozen=True)
class PeriodValue:
    """A period ``scalar * normalized`` with ``normalized`` in ``Z[zeta_{2d}]``."""

    normalized: CycElt
    scalar: Fraction

    @property
    def value(self) -> CycRational:
        return CycRational.from_scalar(self.scalar, self.normalized)

    def is_zero(self) -> bool:
        return self.normalized.is_zero()


def _in_box(params: FermatParams, t: Sequence[int]) -> bool:
    cap = params.d - 2
    return (
        len(t) == params.nvars
        and sum(t) == params.top_degree
        and all(0 <= v <= cap for v in t)
    )


def _pairs_hold(params: FermatParams, pairs, t: Sequence[int]) -> bool:
    return all(t[u] + t[v] == params.d - 2 for u, v in pairs)


# single linear cycle ----------------------------------------------------------


@dataclass(frozen=True)
class SingleCycle:
    cycle: LinearCycle
    kind: str = field(default="single-cycle", init=False)

    def validate(self, params: FermatParams) -> None:
        self.cycle.validate(params)

    def pairs(self, params: FermatParams) -> list[tuple[int, int]]:
        return self.cycle.pairs

    def sign(self, params: FermatParams) -> int:
        return self.cycle.sign * (-1) ** params.half

    def exponent(self, params: FermatParams, t: Sequence[int]) -> int:
        b, a = self.cycle.b, self.cycle.a
        return sum((t[b[2 * e]] + 1) * (1 + 2 * a[e]) for e in range(len(a)))

    def period(self, params: FermatParams, t: Sequence[int]) -> CycElt:
        if not _in_box(params, t) or not _pairs_hold(params, self.pairs(params), t):
            return CycElt.zero(params.order)
        return root_power(params.order, self.exponent(params, t)) * self.sign(params)

    def period_array(self, params: FermatParams, T: np.ndarray) -> np.ndarray:
        b, a = self.cycle.b, self.cycle.a
        E = sum((T[..., b[2 * e]] + 1) * (1 + 2 * a[e]) for e in range(len(a)))
        return exponents_to_coeffs(E, params.order, self.sign(params))

    def scalar(self, params: FermatParams) -> Fraction:
        return linear_scalar(params)

    def to_json(self) -> dict:
        return {"kind": self.kind, "a": list(self.cycle.a), "b": list(self.cycle.b)}


def linear_cycle_period(params: FermatParams, cycle: LinearCycle, i: Sequence[int]) -> PeriodValue:
    """Period of ``omega_i`` over the linear cycle ``(a, b)``."""
    cycle.validate(params)
    if len(i) != params.nvars:
        raise ValueError(f"index must have length {params.nvars}, got {len(i)}")
    if any(v < 0 for v in i):
        raise ValueError(f"index entries must be non-negative, got {tuple(i)}")
    if sum(i) != params.top_degree:
        raise ValueError(
            f"index {tuple(i)} has total degree {sum(i)}, expected {params.top_degree}"
        )
    src = SingleCycle(cycle)
    return PeriodValue(src.period(params, i), linear_scalar(params))


# pair of linear cycles ----------------------------------------------------------


@dataclass(frozen=True)
class LinearPair:
    """``P`` with ``a = 0`` plus ``P'`` with ``a = (0^{m+1}, 1, ..., 1)``, both with ``b = id``.

    The two cycles meet in a ``P^m``; ``m = -1`` means they are disjoint.
    """

    m: int
    kind: str = field(default="linear-pair", init=False)

    def validate(self, params: FermatParams) -> None:
        if not -1 <= self.m <= params.half:
            raise ValueError(f"m must lie in [-1, {params.half}], got {self.m}")

    def cycles(self, params: FermatParams) -> tuple[LinearCycle, LinearCycle]:
        self.validate(params)
        b = tuple(range(params.nvars))
        k = params.half + 1
        first = LinearCycle((0,) * k, b)
        second = LinearCycle((0,) * (self.m + 1) + (1,) * (k - self.m - 1), b)
        return first, second

    def pairs(self, params: FermatParams) -> list[tuple[int, int]]:
        return standard_pairs(params)

    def period(self, params: FermatParams, t: Sequence[int]) -> CycElt:
        p, q = self.cycles(params)
        return SingleCycle(p).period(params, t) + SingleCycle(q).period(params, t)

    def period_array(self, params: FermatParams, T: np.ndarray) -> np.ndarray:
        p, q = self.cycles(params)
        return SingleCycle(p).period_array(params, T) + SingleCycle(q).period_array(params, T)

    def scalar(self, params: FermatParams) -> Fraction:
        return linear_scalar(params)

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": self.m}


def pair_period(params: FermatParams, m: int, i: Sequence[int]) -> PeriodValue:
    """Sum of the periods of the two fixed cycles; zero off the top-degree box."""
    src = LinearPair(m)
    src.validate(params)
    return PeriodValue(src.period(params, i), linear_scalar(params))


# complete intersections ---------------------------------------------------------


@dataclass(frozen=True)
class DegreeVector:
    """Degrees ``d_1..d_{n/2+1}`` and root sets ``B_k``.

    ``roots[k]`` holds odd exponents ``e`` in ``[1, 2d-1]``, standing for
    ``zeta_{2d}^e`` (the roots of ``zeta^d = -1``).  When omitted, ``B_k`` is
    ``{zeta^1, zeta^3, ..., zeta^{2 d_k - 1}}``.
    """

    degrees: tuple[int, ...]
    roots: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(x) for x in self.degrees))
        if self.roots is None:
            roots = tuple(tuple(1 + 2 * a for a in range(dk)) for dk in self.degrees)
        else:
            roots = tuple(tuple(int(e) for e in r) for r in self.roots)
        object.__setattr__(self, "roots", roots)

    def validate(self, params: FermatParams) -> None:
        if len(self.degrees) != params.half + 1:
            raise ValueError(
                f"expected {params.half + 1} degrees for n={params.n}, got {len(self.degrees)}"
            )
        for k, (dk, B) in enumerate(zip(self.degrees, self.roots)):
            if not 1 <= dk < params.d:
                raise ValueError(f"degree d_{k + 1}={dk} outside [1, {params.d - 1}]")
            if len(B) != dk or len(set(B)) != dk:
                raise ValueError(f"B_{k + 1} must hold {dk} distinct roots, got {B}")
            bad = [e for e in B if e % 2 == 0 or not 1 <= e <= 2 * params.d - 1]
            if bad:
                raise ValueError(f"B_{k + 1} has exponents {bad} that are not roots of zeta^d = -1")

    def root_sum_table(self, params: FermatParams) -> list[np.ndarray]:
        """``table[k][u]`` = window coefficients of ``sum_{z in B_{k+1}} z^{u+1}``."""
        u = np.arange(params.d - 1)
        out = []
        for B in self.roots:
            E = (u[:, None] + 1) * np.array(B)[None, :]
            out.append(exponents_to_coeffs(E, params.order).sum(axis=1))
        return out


@dataclass(frozen=True)
class CompleteIntersection:
    degree_vector: DegreeVector
    kind: str = field(default="complete-intersection", init=False)

    def validate(self, params: FermatParams) -> None:
        self.degree_vector.validate(params)

    def pairs(self, params: FermatParams) -> list[tuple[int, int]]:
        return standard_pairs(params)

    def period(self, params: FermatParams, t: Sequence[int]) -> CycElt:
        if not _in_box(params, t) or not _pairs_hold(params, self.pairs(params), t):
            return CycElt.zero(params.order)
        value = CycElt.integer(params.order, 1)
        for k, B in enumerate(self.degree_vector.roots):
            factor = CycElt.zero(params.order)
            for e in B:
                factor = factor + root_power(params.order, e * (t[2 * k] + 1))
            value = value * factor
        return value

    def period_array(self, params: FermatParams, T: np.ndarray) -> np.ndarray:
        table = _ci_value_table(self.degree_vector, params)
        base = params.d - 1
        key = np.zeros(T.shape[:-1], dtype=np.int64)
        for k in range(params.half, -1, -1):
            key = key * base + T[..., 2 * k]
        return table[key]

    def scalar(self, params: FermatParams) -> Fraction:
        return Fraction(1)

    def to_json(self) -> dict:
        dv = self.degree_vector
        return {
            "kind": self.kind,
            "degrees": list(dv.degrees),
            "roots": [list(r) for r in dv.roots],
        }


@lru_cache(maxsize=32)
def _ci_value_table(dv: DegreeVector, params: FermatParams) -> np.ndarray:
    """Values indexed by ``sum_k t_{2k} (d-1)^k`` over all ``t_{2k}`` in ``[0, d-2]``."""
    factors = dv.root_sum_table(params)
    table = factors[0]
    for f in factors[1:]:
        # new digit is the most significant one
        table = negacyclic_mul(f[:, None, :], table[None, :, :]).reshape(-1, params.d)
    table.setflags(write=False)
    return table


def ci_period(params: FermatParams, dv: DegreeVector, i: Sequence[int]) -> CycElt:
    """``prod_k sum_{z in B_{k+1}} z^{i_{2k} + 1}`` on the check set, zero elsewhere."""
    dv.validate(params)
    if len(i) != params.nvars:
        raise ValueError(f"index must have length {params.nvars}, got {len(i)}")
    return CompleteIntersection(dv).period(params, i)


def provenance_from_json(obj: dict):
    kind = obj.get("kind")
    if kind == "linear-pair":
        return LinearPair(int(obj["m"]))
    if kind == "complete-intersection":
        return CompleteIntersection(DegreeVector(tuple(obj["degrees"]), tuple(map(tuple, obj["roots"]))))
    if kind == "single-cycle":
        return SingleCycle(LinearCycle(tuple(obj["a"]), tuple(obj["b"])))
    raise ValueError(f"unknown provenance kind {kind!r}")
