"""Exact integer polynomials and truncated power series.

A polynomial is a plain Python list of ints in ascending degree order
with no trailing zeros; the zero polynomial is ``[]``.  Everything here
is exact: no floats, no modular shortcuts.

The polynomial of interest for a rod set R is its characteristic
polynomial 1 - C(x, R), where C is the rod generating function
(coefficient of x^k = net multiplicity of length k).  Its reciprocal
power series enumerates net train counts, products of characteristic
polynomials witness expansions, and its cyclotomic factors decide
periodicity.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .rodset import RodSet

Poly = list  # ascending int coefficients, no trailing zeros, zero = []


class SeriesError(ValueError):
    """Domain error raised by polynomial/series operations."""


def poly_trim(p: Poly) -> Poly:
    """Drop trailing zero coefficients (normalizes to the canonical form)."""
    i = len(p)
    while i > 0 and p[i - 1] == 0:
        i -= 1
    return p[:i]


def poly_add(p: Poly, q: Poly) -> Poly:
    out = [0] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_trim(out)


def poly_mul(p: Poly, q: Poly) -> Poly:
    """Exact product of two polynomials."""
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return poly_trim(out)


def poly_divexact(p: Poly, q: Poly) -> Poly | None:
    """Exact quotient p / q over the integers, or None when q does not divide p.

    Two strategies: when q has unit constant term the quotient is found
    by the ascending (power-series) recurrence in integer arithmetic;
    otherwise classical descending long division runs over exact
    rationals and the result must come out integral with remainder zero.
    """
    q = poly_trim(list(q))
    p = poly_trim(list(p))
    if not q:
        raise SeriesError("division by the zero polynomial")
    if not p:
        return []
    if len(p) < len(q):
        return None
    m = len(p) - len(q)  # expected quotient degree
    if abs(q[0]) == 1:
        q0 = q[0]
        h = [0] * (m + 1)
        for i in range(m + 1):
            acc = p[i] if i < len(p) else 0
            lo = max(0, i - len(q) + 1)
            for j in range(lo, i):
                if h[j]:
                    acc -= h[j] * q[i - j]
            h[i] = acc * q0  # q0 is its own inverse
        return poly_trim(h) if poly_mul(q, h) == p else None
    rem = [Fraction(c) for c in p]
    quo = [Fraction(0)] * (m + 1)
    lead = Fraction(q[-1])
    for i in range(m, -1, -1):
        c = rem[i + len(q) - 1] / lead
        quo[i] = c
        if c:
            for j, b in enumerate(q):
                rem[i + j] -= c * b
    if any(rem) or any(c.denominator != 1 for c in quo):
        return None
    return poly_trim([int(c) for c in quo])


def poly_text(p: Poly) -> str:
    """Human-readable ascending form, e.g. ``1 - x - x^2``; zero renders ``0``."""
    if not any(p):
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            term = str(mag)
        else:
            x = "x" if i == 1 else f"x^{i}"
            term = x if mag == 1 else f"{mag}{x}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {term}")
    return " ".join(parts)


def series_inverse(p: Poly, n_terms: int) -> list:
    """Coefficients 0..n_terms of the reciprocal power series 1/p.

    Requires constant term +1 or -1 (the only invertible constants over
    the integers).  The forward recurrence is exact.
    """
    if not p or p[0] not in (1, -1):
        raise SeriesError("series inverse needs constant term +1 or -1")
    p0 = p[0]
    inv = [0] * (n_terms + 1)
    inv[0] = p0
    for i in range(1, n_terms + 1):
        acc = 0
        for j in range(max(0, i - len(p) + 1), i):
            c = p[i - j]
            if c and inv[j]:
                acc += c * inv[j]
        inv[i] = -p0 * acc
    return inv


def series_mul(p: Poly, q: Poly, n_terms: int) -> list:
    """Coefficients 0..n_terms of the product p*q."""
    out = [0] * (n_terms + 1)
    for i, a in enumerate(p):
        if a and i <= n_terms:
            for j, b in enumerate(q):
                if i + j > n_terms:
                    break
                if b:
                    out[i + j] += a * b
    return out


def char_poly(rods: RodSet) -> Poly:
    """Characteristic polynomial 1 - C(x, R) of a finite rod set."""
    top = rods.max_length
    out = [0] * ((top or 0) + 1)
    out[0] = 1
    for k, m in rods.pairs:
        out[k] = -m
    return poly_trim(out)


def rodset_from_char_poly(p: Poly) -> RodSet:
    """Inverse of :func:`char_poly`: the rod set whose characteristic polynomial is p."""
    if not p or p[0] != 1:
        raise SeriesError("a characteristic polynomial has constant term 1")
    return RodSet.from_mults({k: -c for k, c in enumerate(p) if k >= 1 and c != 0})


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> tuple:
    if d == 1:
        return (-1, 1)  # x - 1
    num = [-1] + [0] * (d - 1) + [1]  # x^d - 1
    quo = num
    for e in range(1, d):
        if d % e == 0:
            quo = poly_divexact(quo, list(_cyclotomic(e)))
            assert quo is not None, "cyclotomic recursion must divide exactly"
    return tuple(quo)


def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, ascending coefficients.

    Computed by peeling: x^d - 1 divided by the cyclotomic polynomials
    of all proper divisors of d.  Memoized, so a scan over many d is
    cheap.
    """
    if d < 1:
        raise SeriesError("cyclotomic index must be >= 1")
    return list(_cyclotomic(d))


def euler_phi(n: int) -> int:
    """Euler's totient, by trial-division factorization."""
    if n < 1:
        raise SeriesError("totient argument must be >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result
