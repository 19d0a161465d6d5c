import cmath
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from fermat_periods.cyclotomic import (
    CycElt,
    CycRational,
    CyclotomicField,
    admissible_primes,
    cyclotomic_polynomial,
    modular_embedding,
    reduce_to_field,
    root_power,
)


# oracles ---------------------------------------------------------------------


def mobius(n):
    result, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    return -result if n > 1 else result


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divexact(a, b):
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        q[k] = a[k + len(b) - 1] // b[-1]
        for j, y in enumerate(b):
            a[k + j] -= q[k] * y
    assert not any(a)
    return q


def mobius_cyclotomic(m):
    """Phi_m as prod (x^e - 1)^{mu(m/e)}, numerator and denominator multiplied separately."""
    num, den = [1], [1]
    for e in range(1, m + 1):
        if m % e:
            continue
        f = [-1] + [0] * (e - 1) + [1]
        mu = mobius(m // e)
        if mu == 1:
            num = poly_mul(num, f)
        elif mu == -1:
            den = poly_mul(den, f)
    return poly_divexact(num, den)


def to_complex(x: CycElt):
    z = cmath.exp(2j * cmath.pi / x.order)
    return sum(c * z**k for k, c in enumerate(x.coeffs))


def small_elt(order):
    return st.lists(st.integers(-4, 4), min_size=order // 2, max_size=order // 2).map(
        lambda c: CycElt(order, tuple(c))
    )


orders = st.sampled_from([2, 4, 6, 8, 10, 12, 18, 20, 24])


# root_power / ring ------------------------------------------------------------


def test_root_power_examples():
    assert root_power(6, 1).coeffs == (0, 1, 0)
    assert root_power(6, 4).coeffs == (0, -1, 0)
    assert root_power(6, 6).coeffs == (1, 0, 0)
    assert root_power(6, -1) == -root_power(6, 2)


def test_ring_examples():
    z = root_power(6, 1)
    assert z**2 * z**2 == -z
    x = CycElt(6, (3, -1, 2))
    assert (x * CycElt.zero(6)).is_zero()
    lhs = (root_power(10, 4) + root_power(10, 8)) + (-root_power(10, 4))
    assert lhs == root_power(10, 8)


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        root_power(6, 1) + root_power(8, 1)
    with pytest.raises(ValueError):
        CycElt(6, (1, 2))


@given(st.sampled_from([2, 4, 6, 8, 10, 14]), st.integers(-200, 200))
def test_root_power_periodicity(order, e):
    assert root_power(order, e + order) == root_power(order, e)
    assert root_power(order, e + order // 2) == -root_power(order, e)


@settings(max_examples=60)
@given(orders.flatmap(lambda o: st.tuples(small_elt(o), small_elt(o), small_elt(o))))
def test_ring_axioms(triple):
    x, y, z = triple
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert abs(to_complex(x * y) - to_complex(x) * to_complex(y)) < 1e-6 * (1 + abs(to_complex(x * y)))


def test_galois_and_str():
    z = root_power(8, 1)
    assert z.galois(3) == root_power(8, 3)
    with pytest.raises(ValueError):
        z.galois(2)
    assert str(CycElt(6, (1, -1, 2))) == "1-z+2*z^2"
    assert str(CycElt.zero(6)) == "0"


def test_json_round_trip():
    x = CycElt(6, (10**30, -1, 0))
    doc = x.to_json()
    assert doc == {"order": 6, "coeffs": [str(10**30), "-1", "0"]}
    assert CycElt.from_json(doc) == x


def test_cyc_rational_normalizes():
    q = CycRational(CycElt(6, (2, 4, 0)), -6)
    assert q.denominator == 3 and q.numerator == CycElt(6, (-1, -2, 0))
    with pytest.raises((ValueError, ZeroDivisionError)):
        CycRational(CycElt(6, (1, 0, 0)), 0)


# cyclotomic polynomials ----------------------------------------------------------


def test_cyclotomic_examples():
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)


@pytest.mark.parametrize("m", range(1, 65))
def test_cyclotomic_against_mobius_and_product(m):
    phi = list(cyclotomic_polynomial(m))
    assert phi == mobius_cyclotomic(m)
    prod = [1]
    for e in range(1, m + 1):
        if m % e == 0:
            prod = poly_mul(prod, list(cyclotomic_polynomial(e)))
    assert prod == [-1] + [0] * (m - 1) + [1]
    assert phi[-1] == 1
    assert len(phi) - 1 == sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


# field reduction -------------------------------------------------------------------


def test_reduce_examples():
    F6 = CyclotomicField(6)
    assert reduce_to_field(root_power(6, 2), F6) == (Fraction(-1), Fraction(1))
    assert reduce_to_field(CycElt.zero(6)) == (0, 0)
    x = CycElt(8, (1, -2, 3, 5))
    assert reduce_to_field(x) == (1, -2, 3, 5)
    assert F6.degree == 2 and F6.minimal_polynomial == (1, -1, 1)


@settings(max_examples=60)
@given(orders.flatmap(lambda o: st.tuples(small_elt(o), small_elt(o))))
def test_reduction_is_multiplicative(pair):
    x, y = pair
    F = CyclotomicField(x.order)
    assert reduce_to_field(x * y, F) == F.mul(reduce_to_field(x, F), reduce_to_field(y, F))
    # equal reductions iff equal complex numbers
    assert F.is_zero(x) == (abs(to_complex(x)) < 1e-9)


@settings(max_examples=40)
@given(orders.flatmap(small_elt))
def test_field_inverse(x):
    F = CyclotomicField(x.order)
    if F.is_zero(x):
        return
    inv = F.inverse(reduce_to_field(x, F))
    one = F.mul(reduce_to_field(x, F), inv)
    assert one == (1,) + (0,) * (F.degree - 1)


# modular embedding -------------------------------------------------------------------


def test_modular_embedding_examples():
    assert modular_embedding(6, 7) == 3
    w = modular_embedding(10, 11)
    assert pow(w, 10, 11) == 1 and pow(w, 5, 11) == 10 and w == 2
    with pytest.raises(ValueError, match="mod"):
        modular_embedding(6, 5)
    with pytest.raises(ValueError):
        modular_embedding(6, 49)


def test_admissible_primes_sequence():
    ps = admissible_primes(10, 3)
    assert ps == [1048601, 1048661, 1048681]
    for order in (6, 8, 28, 30):
        ps = admissible_primes(order, 4)
        assert all(p > 2**20 and p % order == 1 for p in ps)
        assert ps == sorted(set(ps))
        w = modular_embedding(order, ps[0])
        assert pow(w, order, ps[0]) == 1
        assert all(pow(w, order // q, ps[0]) != 1 for q in (2, 3, 5, 7) if order % q == 0)


@settings(max_examples=60)
@given(st.sampled_from([6, 8, 10, 12, 28]).flatmap(lambda o: st.tuples(small_elt(o), small_elt(o))))
def test_modular_embedding_is_ring_map(pair):
    x, y = pair
    p = admissible_primes(x.order, 1)[0]
    w = modular_embedding(x.order, p)

    def ev(e):
        return sum(c * pow(w, k, p) for k, c in enumerate(e.coeffs)) % p

    assert ev(x * y) == ev(x) * ev(y) % p
    assert ev(x + y) == (ev(x) + ev(y)) % p
