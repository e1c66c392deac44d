"""Reduced signed multisets of rods.

A rod is a unit of positive integer length carrying a sign: a plain rod
counts +1, an antirod counts -1.  A rod set is a finite signed multiset
of rods, and everything we count about it depends only on the *net*
multiplicity per length.  So a rod set is stored reduced: a sorted
tuple of (length, multiplicity) pairs with every multiplicity nonzero.
Rod/antirod pairs of equal length annihilate at construction time,
which turns the equivalence relation between colored multisets into
plain structural equality here.

Multiplicities are arbitrary-precision integers; expansion outputs
routinely overflow machine words.

The literal grammar (used by :func:`parse_rodset`, the CLI, and rod-set
files) is::

    rodset := "[" ws (term (ws "," ws term)*)? ws "]"
    term   := "-"? integer ("^" integer)?

where the first integer is a length >= 1 and the optional second is a
count >= 1 (default 1).  The sign attaches to the length token only, so
``-2^7`` means seven antirods of length 2 and ``2^-7`` is a syntax
error.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping


class RodSetError(ValueError):
    """Domain error raised by rod-set operations."""


class RodSetParseError(RodSetError):
    """Syntax error in a rod-set literal; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class RodSet:
    """A reduced rod set: sorted ``(length, multiplicity)`` pairs.

    Construct through :meth:`from_mults` or :func:`parse_rodset`; the
    raw constructor expects pairs already sorted and reduced.
    """

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        lengths = [k for k, _ in self.pairs]
        if lengths != sorted(set(lengths)):
            raise RodSetError("rod lengths must be sorted and distinct")
        for k, m in self.pairs:
            if k < 1:
                raise RodSetError(f"rod length must be positive, got {k}")
            if m == 0:
                raise RodSetError(f"zero net multiplicity for length {k} must be dropped")

    @staticmethod
    def from_mults(mults: Mapping[int, int] | Iterable[tuple[int, int]]) -> RodSet:
        """Build a rod set from (length, multiplicity) data, reducing as needed.

        Repeated lengths have their multiplicities summed, and lengths whose
        net multiplicity is zero vanish.
        """
        items = mults.items() if isinstance(mults, Mapping) else mults
        net: dict[int, int] = {}
        for k, m in items:
            net[k] = net.get(k, 0) + m
        return RodSet(tuple(sorted((k, m) for k, m in net.items() if m != 0)))

    def mult(self, length: int) -> int:
        """Net multiplicity of ``length`` (0 when absent)."""
        for k, m in self.pairs:
            if k == length:
                return m
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def lengths(self) -> tuple[int, ...]:
        """The shape: distinct lengths present, ascending."""
        return tuple(k for k, _ in self.pairs)

    @property
    def max_length(self) -> int | None:
        """Largest length present, or None for the empty set."""
        return self.pairs[-1][0] if self.pairs else None

    @property
    def min_length(self) -> int | None:
        """Smallest length present, or None for the empty set."""
        return self.pairs[0][0] if self.pairs else None

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __str__(self) -> str:
        return format_rodset(self)


@dataclass(frozen=True)
class ShapeReport:
    """Summary facts about a rod set.

    ``size`` counts rods with multiplicity (sum of |mult|), ``primitive``
    means the lengths have gcd 1, and ``positive`` means no antirods.
    The empty set reports min/max as None, primitive False, positive True.
    """

    empty: bool
    shape: tuple[int, ...]
    multiplicities: tuple[int, ...]
    min_length: int | None
    max_length: int | None
    size: int
    primitive: bool
    positive: bool


def parse_rodset(text: str) -> RodSet:
    """Parse a rod-set literal like ``[1,-2]`` or ``[8^48,-12^7]``.

    Duplicate terms for the same length are summed, so ``[2,-2,3]``
    reduces to ``[3]``.  Syntax errors report the offending position;
    zero lengths and ``^0`` multiplicities are rejected.
    """
    pos = 0
    n = len(text)

    def skip_ws() -> None:
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def read_int(what: str) -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise RodSetParseError(f"expected {what}", start)
        return int(text[start:pos])

    skip_ws()
    if pos >= n or text[pos] != "[":
        raise RodSetParseError("expected '['", pos)
    pos += 1
    skip_ws()
    terms: list[tuple[int, int]] = []
    if pos < n and text[pos] == "]":
        pos += 1
    else:
        while True:
            skip_ws()
            sign = 1
            if pos < n and text[pos] == "-":
                sign = -1
                pos += 1
            at = pos
            length = read_int("a rod length")
            if length == 0:
                raise RodSetParseError("rod length must be positive", at)
            count = 1
            if pos < n and text[pos] == "^":
                pos += 1
                at = pos
                count = read_int("a multiplicity count after '^'")
                if count == 0:
                    raise RodSetParseError("multiplicity count must be positive", at)
            terms.append((length, sign * count))
            skip_ws()
            if pos < n and text[pos] == ",":
                pos += 1
                continue
            if pos < n and text[pos] == "]":
                pos += 1
                break
            raise RodSetParseError("expected ',' or ']'", pos)
    skip_ws()
    if pos != n:
        raise RodSetParseError("unexpected trailing text", pos)
    return RodSet.from_mults(terms)


def format_rodset(rods: RodSet) -> str:
    """Canonical literal: lengths ascending, ``-`` for antirods, ``^k`` for |mult| >= 2."""
    parts = []
    for k, m in rods.pairs:
        tok = f"{'-' if m < 0 else ''}{k}"
        if abs(m) >= 2:
            tok += f"^{abs(m)}"
        parts.append(tok)
    return "[" + ",".join(parts) + "]"


def union(r: RodSet, s: RodSet) -> RodSet:
    """Multiset union: multiplicities add, then reduce."""
    return RodSet.from_mults(list(r.pairs) + list(s.pairs))


def negate(r: RodSet) -> RodSet:
    """Swap rods and antirods (negate every multiplicity)."""
    return RodSet(tuple((k, -m) for k, m in r.pairs))


def concat(r: RodSet, s: RodSet) -> RodSet:
    """All pairwise length sums; multiplicities multiply.

    This is the rod-set product: the count function of the result is the
    convolution of the factors' count functions.  The empty set is
    absorbing, and there is no identity element (that would need a rod
    of length 0).
    """
    out: dict[int, int] = {}
    for j, mj in r.pairs:
        for k, mk in s.pairs:
            out[j + k] = out.get(j + k, 0) + mj * mk
    return RodSet.from_mults(out)


def describe(r: RodSet) -> ShapeReport:
    """Shape, multiplicities, and the min/max/size/primitive/positive facts."""
    shape = r.lengths()
    mults = tuple(m for _, m in r.pairs)
    return ShapeReport(
        empty=not r.pairs,
        shape=shape,
        multiplicities=mults,
        min_length=r.min_length,
        max_length=r.max_length,
        size=sum(abs(m) for m in mults),
        primitive=bool(shape) and gcd(*shape, 0) == 1,
        positive=all(m > 0 for m in mults),
    )


def equivalent(r: RodSet, s: RodSet) -> bool:
    """Whether two rod sets are equivalent.

    Storage is already reduced, so equivalence is structural equality;
    the name survives because equivalence is the correctness relation
    everywhere in this library.
    """
    return r.pairs == s.pairs


def odd_sign_swap(r: RodSet) -> RodSet:
    """Negate the multiplicity of every odd length (an involution).

    The swapped set's net train counts are the original's times (-1)^n.
    """
    return RodSet(tuple((k, -m if k % 2 else m) for k, m in r.pairs))
