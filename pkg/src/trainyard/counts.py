"""Net train counts, discrepancies, and the enumeration oracle.

A train is an ordered sequence of rods; its sign is the product of the
rod signs, and the net train count F(n, R) is (positive trains of
length n) minus (negative trains), with F(0) = 1 for the empty train
and F(n) = 0 for n < 0.  Expanding by the first rod gives the
recursion

    F(n) = sum over lengths k in R of  mult(k) * F(n - k),

so F is computed by exact dynamic programming.  The net count depends
only on the reduced rod set; colors matter only to the enumerator,
which walks every colored train individually and exists to cross-check
the recursion.

Rod sources generalize finite rod sets to the infinite families the
algebra produces: arithmetic progressions, the trains-of-a-set family,
and rod sets known only by a multiplicity prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence, Union

from .rodset import RodSet, format_rodset

DEFAULT_ENUMERATION_CAP = 10**6


class CountsError(ValueError):
    """Domain error raised by counting operations."""


@dataclass(frozen=True)
class ArithmeticRods:
    """Rods at first, first+step, first+2*step, ..., each with multiplicity ``sign``."""

    first: int
    step: int
    sign: int = 1

    def __post_init__(self) -> None:
        if self.first < 1 or self.step < 1 or self.sign not in (1, -1):
            raise CountsError("arithmetic rods need first >= 1, step >= 1, sign +-1")

    def mults_upto(self, n: int) -> list:
        out = [0] * (n + 1)
        for k in range(self.first, n + 1, self.step):
            out[k] = self.sign
        return out

    def to_json(self) -> dict:
        return {"kind": "arith", "first": self.first, "step": self.step, "sign": self.sign}


@dataclass(frozen=True)
class TrainsOf:
    """One rod per nonempty train of ``base``: multiplicity at length n is sign * F(n, base).

    The central example: TrainsOf([2]) is the rod set [2, 4, 6, ...],
    since [2] has exactly one train at every even length.
    """

    base: RodSet
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise CountsError("trains-of source sign must be +-1")

    def mults_upto(self, n: int) -> list:
        base_counts = train_counts(self.base, n)
        out = [self.sign * c for c in base_counts]
        out[0] = 0  # the empty train is not a rod
        return out

    def to_json(self) -> dict:
        return {"kind": "trains", "base": format_rodset(self.base), "sign": self.sign}


@dataclass(frozen=True)
class PrefixRods:
    """A rod set known only by its multiplicity prefix m(1..N).

    This is how infinite solver outputs are reported: exact up to the
    horizon, silent beyond it.  Asking past the prefix is an error
    rather than a guess.
    """

    mults: tuple

    def mults_upto(self, n: int) -> list:
        if n > len(self.mults):
            raise CountsError(
                f"prefix source holds multiplicities up to {len(self.mults)}, asked for {n}"
            )
        return [0] + list(self.mults[:n])

    def to_json(self) -> dict:
        return {"kind": "counts", "values": list(self.mults)}


RodSource = Union[RodSet, ArithmeticRods, TrainsOf, PrefixRods]


def source_mults_upto(rods: RodSource, n: int) -> list:
    """Multiplicities m(0..n) of a rod source as a dense list (m(0) is always 0)."""
    if isinstance(rods, RodSet):
        out = [0] * (n + 1)
        for k, m in rods.pairs:
            if k <= n:
                out[k] = m
        return out
    return rods.mults_upto(n)


def source_to_json(rods: RodSource) -> dict:
    if isinstance(rods, RodSet):
        return {"kind": "finite", "rods": format_rodset(rods)}
    return rods.to_json()


def train_counts(rods: RodSource, n_max: int) -> list:
    """Net train counts F(0..n_max) for a rod set or rod source."""
    if n_max < 0:
        raise CountsError("count horizon must be >= 0")
    counts = [0] * (n_max + 1)
    counts[0] = 1
    if isinstance(rods, RodSet):
        pairs = rods.pairs
        for n in range(1, n_max + 1):
            acc = 0
            for k, m in pairs:
                if k > n:
                    break
                c = counts[n - k]
                if c:
                    acc += m * c
            counts[n] = acc
    else:
        mults = source_mults_upto(rods, n_max)
        for n in range(1, n_max + 1):
            acc = 0
            for k in range(1, n + 1):
                m = mults[k]
                if m:
                    c = counts[n - k]
                    if c:
                        acc += m * c
            counts[n] = acc
    return counts


def discrepancies(r: RodSource, s: RodSource, n_max: int) -> list:
    """D(1..n_max): how far F(., r) is from satisfying the recursion of s.

    D(n) = F(n, r) - sum over k in s of mult_s(k) * F(n - k, r).  The
    discrepancy theorem says these are exactly the rod counts of the Q
    mediating the expansion r -> s, which is what the solvers exploit.
    """
    counts = train_counts(r, n_max)
    return sequence_discrepancies(counts, s)


def sequence_discrepancies(values: Sequence[int], s: RodSource) -> list:
    """D(1..N) for an explicitly given count sequence values[0..N].

    The sequence must start with 1 (the empty train) to be the count
    sequence of anything.
    """
    if not values or values[0] != 1:
        raise CountsError("a net train count sequence must start with F(0) = 1")
    n_max = len(values) - 1
    mults = source_mults_upto(s, n_max)
    out = []
    for n in range(1, n_max + 1):
        acc = values[n]
        for k in range(1, n + 1):
            m = mults[k]
            if m and values[n - k]:
                acc -= m * values[n - k]
        out.append(acc)
    return out


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of brute-force train enumeration."""

    net: int
    total: int
    trains: tuple | None = None


def enumerate_trains(
    rods: RodSet,
    n: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
    collect: bool = False,
) -> EnumerationResult:
    """Walk every colored train of length n and tally signs.

    A rod of multiplicity m contributes |m| colored copies with sign(m).
    Trains are visited in lexicographic order by (length, color) per
    position, which is also the order ``collect`` returns them in: each
    train is a tuple of (length, color, sign) rods.

    The total number of trains is computed first from the recursion on
    absolute multiplicities; if it exceeds ``cap`` the walk is refused.
    """
    if n < 0:
        raise CountsError("train length must be >= 0")
    abs_rods = RodSet(tuple((k, abs(m)) for k, m in rods.pairs))
    total = train_counts(abs_rods, n)[n]
    if total > cap:
        raise CountsError(f"{total} trains of length {n} exceed the enumeration cap {cap}")

    pairs = rods.pairs
    net = 0
    listing: list | None = [] if collect else None
    stack: list = []

    def walk(remaining: int, sign: int) -> None:
        nonlocal net
        if remaining == 0:
            net += sign
            if listing is not None:
                listing.append(tuple(stack))
            return
        for k, m in pairs:
            if k > remaining:
                break
            rod_sign = 1 if m > 0 else -1
            for color in range(1, abs(m) + 1):
                stack.append((k, color, rod_sign))
                walk(remaining - k, sign * rod_sign)
                stack.pop()

    walk(n, 1)
    return EnumerationResult(net=net, total=total, trains=tuple(listing) if collect else None)


def binomial_count(rods: RodSet, n: int) -> int:
    """F(n, R) as a binomial sum, for rod sets with at most two lengths.

    For shape <a, b> with multiplicities u, v this is

        sum over i*a + j*b = n of  C(i + j, i) * u^i * v^j,

    the diagonal-of-Pascal's-triangle form.  Single-length sets get the
    pure power, and the empty set counts only the empty train.
    """
    if n < 0:
        return 0
    pairs = rods.pairs
    if len(pairs) > 2:
        raise CountsError("binomial form requires a shape with at most two lengths")
    if not pairs:
        return 1 if n == 0 else 0
    if len(pairs) == 1:
        a, u = pairs[0]
        return u ** (n // a) if n % a == 0 else 0
    (a, u), (b, v) = pairs
    acc = 0
    for i in range(n // a + 1):
        rest = n - i * a
        if rest % b == 0:
            j = rest // b
            acc += comb(i + j, i) * u**i * v**j
    return acc
