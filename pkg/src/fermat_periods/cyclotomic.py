"""Exact arithmetic with roots of unity.

Elements of ``Z[zeta_{2d}]`` are stored as length-``d`` integer vectors in the
power basis ``1, zeta, ..., zeta^{d-1}`` together with the relation
``zeta^d = -1``; i.e. as residues in ``Z[x]/(x^d + 1)``.  This window is not
the minimal-polynomial basis when ``d`` is not a power of two, so equality of
complex numbers is decided after reduction modulo the cyclotomic polynomial
(see :class:`CyclotomicField`).

A modular embedding ``zeta -> omega`` into ``F_p`` (``p = 1 mod 2d``) gives the
fast path used by the rank engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CycElt",
    "CycRational",
    "CyclotomicField",
    "root_power",
    "cyclotomic_polynomial",
    "reduce_to_field",
    "modular_embedding",
    "admissible_primes",
    "negacyclic_mul",
    "exponents_to_coeffs",
]


def _fold(order: int, coeffs: Iterable[int]) -> tuple[int, ...]:
    """Fold an arbitrary-length coefficient list into the canonical window."""
    d = order // 2
    out = [0] * d
    for k, c in enumerate(coeffs):
        if not c:
            continue
        k %= order
        if k >= d:
            out[k - d] -= c
        else:
            out[k] += c
    return tuple(out)


@dataclass(frozen=True)
class CycElt:
    """An element ``sum_k coeffs[k] * zeta^k`` of ``Z[zeta_order]``, ``order`` even.

    Construct through :meth:`from_coeffs` (or :func:`root_power`) when the input
    may be outside the canonical window.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.order < 2 or self.order % 2:
            raise ValueError(f"order must be an even integer >= 2, got {self.order}")
        if len(self.coeffs) != self.order // 2:
            raise ValueError(
                f"expected {self.order // 2} coefficients for order {self.order}, "
                f"got {len(self.coeffs)}"
            )

    # construction -----------------------------------------------------

    @classmethod
    def from_coeffs(cls, order: int, coeffs: Iterable[int]) -> "CycElt":
        return cls(order, _fold(order, (int(c) for c in coeffs)))

    @classmethod
    def zero(cls, order: int) -> "CycElt":
        return cls(order, (0,) * (order // 2))

    @classmethod
    def integer(cls, order: int, value: int) -> "CycElt":
        return cls(order, (int(value),) + (0,) * (order // 2 - 1))

    # predicates -------------------------------------------------------

    @property
    def d(self) -> int:
        return self.order // 2

    def is_zero(self) -> bool:
        """Coefficient-wise zero.  For the complex-number test use the field."""
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic -------------------------------------------------------

    def _check(self, other: "CycElt") -> None:
        if not isinstance(other, CycElt):
            raise TypeError(f"expected CycElt, got {type(other).__name__}")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _coerce(self, other) -> "CycElt":
        if isinstance(other, int):
            return CycElt.integer(self.order, other)
        self._check(other)
        return other

    def __add__(self, other) -> "CycElt":
        other = self._coerce(other)
        return CycElt(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycElt":
        return CycElt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "CycElt":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycElt":
        return self._coerce(other) - self

    def __mul__(self, other) -> "CycElt":
        if isinstance(other, int):
            return CycElt(self.order, tuple(other * a for a in self.coeffs))
        self._check(other)
        d = self.d
        out = [0] * d
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = i + j
                if k >= d:
                    out[k - d] -= a * b
                else:
                    out[k] += a * b
        return CycElt(self.order, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "CycElt":
        if exponent < 0:
            raise ValueError("negative powers are not defined in the ring")
        result = CycElt.integer(self.order, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def galois(self, k: int) -> "CycElt":
        """Apply the automorphism ``zeta -> zeta^k`` (``gcd(k, order) = 1``)."""
        if gcd(k, self.order) != 1:
            raise ValueError(f"{k} is not a unit modulo {self.order}")
        return CycElt(self.order, _fold(self.order, _spread(self.coeffs, k, self.order)))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    # serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CycElt":
        if not isinstance(obj, dict) or "order" not in obj or "coeffs" not in obj:
            raise ValueError("CycElt must be an object with 'order' and 'coeffs'")
        order = int(obj["order"])
        coeffs = obj["coeffs"]
        if not isinstance(coeffs, list):
            raise ValueError("'coeffs' must be an array of decimal strings")
        return cls(order, tuple(int(c) for c in coeffs))

    def __repr__(self) -> str:
        return f"CycElt({self.order}, {self.coeffs})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if k and abs(c) == 1:
                terms.append(("-" if c < 0 else "+") + mono)
            else:
                terms.append(f"{c:+d}" + ("" if k == 0 else "*" + mono))
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s


def _spread(coeffs: Sequence[int], k: int, order: int) -> list[int]:
    out = [0] * order
    for j, c in enumerate(coeffs):
        if c:
            out[(j * k) % order] += c
    return out


def root_power(order: int, exponent: int) -> CycElt:
    """Return ``zeta_order ** exponent`` in canonical form."""
    if order < 2 or order % 2:
        raise ValueError(f"order must be an even integer >= 2, got {order}")
    d = order // 2
    e = exponent % order
    coeffs = [0] * d
    if e >= d:
        coeffs[e - d] = -1
    else:
        coeffs[e] = 1
    return CycElt(order, tuple(coeffs))


@dataclass(frozen=True)
class CycRational:
    """``numerator / denominator`` with a positive integer denominator, reduced."""

    numerator: CycElt
    denominator: int

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        num, den = self.numerator, self.denominator
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if g > 1:
            num = CycElt(num.order, tuple(c // g for c in num.coeffs))
            den //= g
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def from_scalar(cls, scalar: Fraction, elt: CycElt) -> "CycRational":
        return cls(elt * scalar.numerator, scalar.denominator)

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator})/{self.denominator}"


# cyclotomic polynomials ------------------------------------------------


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (low degree first), ``den`` monic."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for i, b in enumerate(den):
                num[k + i] -= c * b
    if any(num):
        raise ArithmeticError("polynomial division is not exact")
    return q


@lru_cache(maxsize=None)
def _cyclotomic(m: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (m - 1) + [1]
    for e in range(1, m):
        if m % e == 0:
            poly = _poly_divexact(poly, list(_cyclotomic(e)))
    return tuple(poly)


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_m`` from the constant term upward.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return _cyclotomic(m)


def _poly_rem(coeffs: Sequence, modulus: Sequence[int]) -> list:
    """Remainder modulo a monic integer polynomial; works for ints or Fractions."""
    out = list(coeffs)
    deg = len(modulus) - 1
    for k in range(len(out) - 1, deg - 1, -1):
        c = out[k]
        if c:
            for i in range(deg + 1):
                out[k - deg + i] -= c * modulus[i]
    out = out[:deg]
    return out + [0] * (deg - len(out))


class CyclotomicField:
    """The field ``Q(zeta_order)`` in the basis ``1, x, ..., x^{phi-1}`` modulo ``Phi_order``."""

    def __init__(self, order: int):
        if order < 2 or order % 2:
            raise ValueError(f"order must be an even integer >= 2, got {order}")
        self.order = order
        self.minimal_polynomial = cyclotomic_polynomial(order)
        self.degree = len(self.minimal_polynomial) - 1
        d = order // 2
        # row k: x^k mod Phi, for k < 2*degree (covers the window and products)
        n_rows = max(d, 2 * self.degree - 1)
        self._powers = np.array(
            [_poly_rem([0] * k + [1], self.minimal_polynomial) for k in range(n_rows)],
            dtype=object,
        ).reshape(n_rows, self.degree)

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("CyclotomicField", self.order))

    @property
    def window_reduction(self) -> np.ndarray:
        """Integer ``d x phi`` matrix mapping window coefficients to field coordinates."""
        return self._powers[: self.order // 2]

    def reduce(self, x: CycElt) -> tuple[Fraction, ...]:
        if x.order != self.order:
            raise ValueError(f"order mismatch: element {x.order}, field {self.order}")
        rem = _poly_rem(list(x.coeffs), self.minimal_polynomial)
        return tuple(Fraction(c) for c in rem)

    def is_zero(self, x: CycElt) -> bool:
        return not any(self.reduce(x))

    def mul(self, a: Sequence, b: Sequence) -> tuple:
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return tuple(_poly_rem(prod, self.minimal_polynomial))

    def inverse(self, a: Sequence) -> tuple[Fraction, ...]:
        """Inverse in the field via the extended Euclidean algorithm against ``Phi``."""
        a = _trim(_poly_rem([Fraction(int(c)) for c in a], self.minimal_polynomial))
        if not a:
            raise ZeroDivisionError("zero has no inverse")
        # invariant: r_k = s_k * a (mod Phi)
        r0, r1 = [Fraction(c) for c in self.minimal_polynomial], a
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        inv = 1 / r1[0]
        return self._pad([c * inv for c in s1])

    def _pad(self, coeffs: list) -> tuple[Fraction, ...]:
        coeffs = _poly_rem(coeffs + [0] * max(0, self.degree - len(coeffs)), self.minimal_polynomial)
        return tuple(Fraction(c) for c in coeffs)

    def from_window_array(self, arr: np.ndarray) -> np.ndarray:
        """Map an integer array ``(..., d)`` of window coefficients to ``(..., phi)``."""
        arr = np.asarray(arr)
        if arr.dtype != object:
            arr = arr.astype(object)
        red = self.window_reduction
        out = np.zeros(arr.shape[:-1] + (self.degree,), dtype=object)
        for k in range(arr.shape[-1]):
            row = red[k]
            col = arr[..., k]
            for t in range(self.degree):
                if row[t]:
                    out[..., t] += row[t] * col
        return out

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise product of field-coordinate arrays ``(..., phi)``."""
        deg = self.degree
        shape = np.broadcast_shapes(a.shape, b.shape)
        dtype = object if object in (a.dtype, b.dtype) else np.int64
        prod = np.zeros(shape[:-1] + (2 * deg - 1,), dtype=dtype)
        for i in range(deg):
            ai = a[..., i]
            for j in range(deg):
                prod[..., i + j] += ai * b[..., j]
        out = prod[..., :deg]
        for k in range(deg, 2 * deg - 1):
            row = self._powers[k]
            col = prod[..., k]
            for t in range(deg):
                if row[t]:
                    out[..., t] += int(row[t]) * col
        return out

    @property
    def product_growth(self) -> int:
        """Bound ``g`` with ``|coeff(a*b)| <= g * max|a| * max|b|`` in field coordinates."""
        deg = self.degree
        high = self._powers[deg : 2 * deg - 1]
        reduction = 1 + (max(sum(abs(int(c)) for c in row) for row in high) if len(high) else 0)
        return deg * reduction


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    den = _trim(den)
    if len(num) < len(den):
        return [], _trim(num)
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] / lead
        q[k] = c
        if c:
            for i, b in enumerate(den):
                num[k + i] -= c * b
    return q, _trim(num[: len(den) - 1])


def reduce_to_field(x: CycElt, field: CyclotomicField | None = None) -> tuple[Fraction, ...]:
    """Reduce ``x`` modulo ``Phi_{2d}``; equal reductions mean equal complex numbers."""
    if field is None:
        field = CyclotomicField(x.order)
    return field.reduce(x)


# modular specialization ---------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _smallest_primitive_root(p: int) -> int:
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    return 1  # p == 2


def modular_embedding(order: int, p: int) -> int:
    """Residue ``omega`` of exact multiplicative order ``order`` in ``F_p``.

    ``omega = g^((p-1)/order)`` for the smallest primitive root ``g`` of ``p``.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (p - 1) % order:
        raise ValueError(
            f"no element of order {order} in F_{p}: need p = 1 (mod {order}), "
            f"but {p} = {p % order} (mod {order})"
        )
    return pow(_smallest_primitive_root(p), (p - 1) // order, p)


def admissible_primes(order: int, count: int, start: int = 1 << 20) -> list[int]:
    """The ``count`` smallest primes ``p = 1 (mod order)`` with ``p > start``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    primes = []
    p = start + 1
    p += (1 - p) % order
    while len(primes) < count:
        if _is_prime(p):
            primes.append(p)
        p += order
    return primes


# vectorized helpers ---------------------------------------------------------


def negacyclic_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise product in ``Z[x]/(x^d + 1)`` of arrays shaped ``(..., d)``."""
    d = a.shape[-1]
    shape = np.broadcast_shapes(a.shape, b.shape)
    dtype = object if object in (a.dtype, b.dtype) else np.result_type(a, b)
    out = np.zeros(shape, dtype=dtype)
    for i in range(d):
        ai = a[..., i : i + 1]
        # x^i * b: rotate right by i with sign flip on the wrapped part
        out[..., i:] += ai * b[..., : d - i]
        if i:
            out[..., :i] -= ai * b[..., d - i :]
    return out


def exponents_to_coeffs(exponents: np.ndarray, order: int, signs: np.ndarray | int = 1) -> np.ndarray:
    """Window coefficients of ``sign * zeta^e`` for an integer array of exponents."""
    d = order // 2
    e = np.asarray(exponents, dtype=np.int64) % order
    s = np.where(e >= d, -1, 1) * np.asarray(signs, dtype=np.int64)
    out = np.zeros(e.shape + (d,), dtype=np.int64)
    np.put_along_axis(out, (e % d)[..., None], s[..., None], axis=-1)
    return out
