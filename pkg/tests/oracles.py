"""Independent reference implementations used by the tests."""

from __future__ import annotations

import itertools
import random

import mpmath

from fermat_periods.cyclotomic import CycElt, cyclotomic_polynomial

mpmath.mp.dps = 60


def leibniz_det(M):
    k = len(M)
    order = M[0][0].order
    total = CycElt.zero(order)
    for perm in itertools.permutations(range(k)):
        inv = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        term = CycElt.integer(order, -1 if inv % 2 else 1)
        for r in range(k):
            term = term * M[r][perm[r]]
            if term.is_zero():
                break
        total = total + term
    return total


def is_zero_numeric(x: CycElt) -> bool:
    """Zero test by evaluating at exp(2 pi i / order) in 60-digit arithmetic."""
    if x.is_zero():
        return True
    z = mpmath.expjpi(mpmath.mpf(2) / x.order)
    val = mpmath.fsum(c * z**k for k, c in enumerate(x.coeffs) if c)
    scale = max(abs(c) for c in x.coeffs)
    return abs(val) < mpmath.mpf(10) ** -40 * scale


def minor_rank(M) -> int:
    """Largest k with a nonzero k x k minor."""
    R = len(M)
    C = len(M[0]) if R else 0
    for k in range(min(R, C), 0, -1):
        for rows in itertools.combinations(range(R), k):
            for cols in itertools.combinations(range(C), k):
                sub = [[M[r][c] for c in cols] for r in rows]
                if not is_zero_numeric(leibniz_det(sub)):
                    return k
    return 0


def random_elt(rng: random.Random, order: int, spread: int = 3, density: float = 0.6) -> CycElt:
    if rng.random() > density:
        return CycElt.zero(order)
    return CycElt(order, tuple(rng.randint(-spread, spread) for _ in range(order // 2)))


def phi_multiple(rng: random.Random, order: int) -> CycElt:
    """A window vector that is zero in the field (a multiple of Phi_order).

    Nonzero unless Phi_order has degree d, in which case the window is the field.
    """
    d = order // 2
    phi = list(cyclotomic_polynomial(order))
    if len(phi) > d:
        return CycElt.zero(order)
    shift = rng.randint(0, d - len(phi))
    coeffs = [0] * d
    for k, c in enumerate(phi):
        coeffs[shift + k] = c
    return CycElt(order, tuple(coeffs))


def random_matrix(rng: random.Random, order: int, R: int, C: int):
    """Random matrix; some with planted low rank, some with hidden field zeros."""
    kind = rng.choice(["dense", "sparse", "planted", "hidden-zero"])
    if kind == "planted":
        k = rng.randint(0, min(R, C))
        U = [[random_elt(rng, order, 2, 1.0) for _ in range(k)] for _ in range(R)]
        V = [[random_elt(rng, order, 2, 1.0) for _ in range(C)] for _ in range(k)]
        out = []
        for r in range(R):
            row = []
            for c in range(C):
                acc = CycElt.zero(order)
                for t in range(k):
                    acc = acc + U[r][t] * V[t][c]
                row.append(acc)
            out.append(row)
        return out
    density = 0.3 if kind == "sparse" else 0.8
    M = [[random_elt(rng, order, 3, density) for _ in range(C)] for _ in range(R)]
    if kind == "hidden-zero":
        for _ in range(rng.randint(1, R * C)):
            r, c = rng.randrange(R), rng.randrange(C)
            M[r][c] = phi_multiple(rng, order)
    return M
