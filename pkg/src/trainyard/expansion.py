"""Expansions between rod sets, and the exact solvers around them.

R expands to S via Q (written R -> Q -> S) when

    S  is equivalent to  R  union  anti(Q)  union  QR,

which in generating-function form is the polynomial witness

    1 - C(x, S)  =  (1 - C(x, R)) * (1 + C(x, Q)).

Every record this module produces is verified against that identity —
exactly when all three sets are finite, coefficient-by-coefficient up
to the horizon otherwise.

Given any two of R, Q, S the third is determined.  The discrepancy
theorem makes the Q-solver direct: the rod counts of Q are exactly the
discrepancies D(n, R, S), the failures of F(., R) to satisfy S's
recursion.  For finite R and S the finiteness of Q is decidable
outright: max S = max R + max Q forces where Q must stop, and a window
of max R zero discrepancies just above that point certifies that the
rest vanish (the discrepancies themselves satisfy R's recursion out
there).  When max S < max R no finite Q can exist at all.

The R-solver is the exchange law (R -> Q -> S iff anti(Q) -> anti(R) -> S)
applied to the Q-solver, and the dual inverts 1 + C(x, Q), flipping an
expansion's direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .counts import (
    ArithmeticRods,
    CountsError,
    PrefixRods,
    RodSource,
    TrainsOf,
    discrepancies,
    source_mults_upto,
    source_to_json,
    train_counts,
)
from .rodset import RodSet, concat, negate, union
from .series import char_poly, poly_divexact, poly_mul, poly_trim, series_mul

DEFAULT_HORIZON = 64


class ExpansionError(ValueError):
    """Domain error raised by expansion operations."""


@dataclass(frozen=True)
class Expansion:
    """A verified expansion record r -> q -> s.

    ``q_finite`` is True/False when decided exactly, None when only a
    horizon-limited prefix is known; ``trailing_zeros`` then reports the
    observed zero run at the end of q's count prefix.  ``r_finite``
    plays the same role for the R-solver's output.
    """

    r: RodSource
    q: RodSource
    s: RodSource
    horizon: int
    q_finite: bool | None
    identity_checked: bool
    trailing_zeros: int | None = None
    r_finite: bool | None = True

    def to_json(self) -> dict:
        return {
            "R": source_to_json(self.r),
            "Q": source_to_json(self.q),
            "S": source_to_json(self.s),
            "horizon": self.horizon,
            "q_finite": self.q_finite,
            "identity_checked": self.identity_checked,
        }


def _one_plus_poly(q: RodSet) -> list:
    """The polynomial 1 + C(x, q) of a finite rod set."""
    out = [0] * ((q.max_length or 0) + 1)
    out[0] = 1
    for k, m in q.pairs:
        out[k] = m
    return poly_trim(out)


def _negate_source(rods: RodSource) -> RodSource:
    if isinstance(rods, RodSet):
        return negate(rods)
    if isinstance(rods, ArithmeticRods):
        return ArithmeticRods(rods.first, rods.step, -rods.sign)
    if isinstance(rods, TrainsOf):
        return TrainsOf(rods.base, -rods.sign)
    return PrefixRods(tuple(-m for m in rods.mults))


def _identity_holds(r: RodSource, q: RodSource, s: RodSource, horizon: int) -> bool:
    """Check (1 - C_S) = (1 - C_R)(1 + C_Q): exact for finite triples, else to the horizon."""
    if isinstance(r, RodSet) and isinstance(q, RodSet) and isinstance(s, RodSet):
        return poly_mul(char_poly(r), _one_plus_poly(q)) == char_poly(s)
    cr = source_mults_upto(r, horizon)
    cq = source_mults_upto(q, horizon)
    cs = source_mults_upto(s, horizon)
    char_r = [1] + [-c for c in cr[1:]]
    one_plus_q = [1] + list(cq[1:])
    char_s = [1] + [-c for c in cs[1:]]
    return series_mul(char_r, one_plus_q, horizon) == char_s


def _verified(r, q, s, horizon, q_finite, trailing_zeros=None, r_finite=True) -> Expansion:
    if not _identity_holds(r, q, s, horizon):
        raise ExpansionError("expansion witness identity failed; this is a bug")
    return Expansion(r, q, s, horizon, q_finite, True, trailing_zeros, r_finite)


def expand(r: RodSet, q: RodSet, horizon: int = DEFAULT_HORIZON) -> Expansion:
    """Expand finite r by finite q: S = r + anti(q) + q.r, exact at all degrees."""
    s = union(r, union(negate(q), concat(q, r)))
    return _verified(r, q, s, horizon, q_finite=True)


def _trailing_zero_run(values: Sequence[int]) -> int:
    run = 0
    for v in reversed(values):
        if v:
            break
        run += 1
    return run


def solve_Q(r: RodSource, s: RodSource, horizon: int | None = None) -> Expansion:
    """Find the Q mediating r -> Q -> s; its counts are the discrepancies.

    With finite r and s the finiteness verdict is exact; with infinite
    sources it is undecided at the horizon (q_finite None) and the
    record carries the count prefix.
    """
    h = DEFAULT_HORIZON if horizon is None else horizon
    if isinstance(r, RodSet) and isinstance(s, RodSet):
        if not r.pairs:
            # The empty set counts only the empty train, so the
            # discrepancies are minus s's own multiplicities.
            return _verified(r, negate(s), s, h, q_finite=True)
        if not s.pairs:
            # r -> trains(r) -> []: every train becomes a rod of Q.
            prefix = train_counts(r, h)[1:]
            return _verified(r, PrefixRods(tuple(prefix)), s, h, q_finite=False)
        max_r, max_s = r.max_length, s.max_length
        if max_s >= max_r:
            d = discrepancies(r, s, max_s)
            if all(d[n - 1] == 0 for n in range(max_s - max_r + 1, max_s + 1)):
                q = RodSet.from_mults(
                    {n: d[n - 1] for n in range(1, max_s - max_r + 1) if d[n - 1]}
                )
                return _verified(r, q, s, h, q_finite=True)
        prefix = discrepancies(r, s, h)
        return _verified(r, PrefixRods(tuple(prefix)), s, h, q_finite=False)
    prefix = discrepancies(r, s, h)
    return _verified(
        r,
        PrefixRods(tuple(prefix)),
        s,
        h,
        q_finite=None,
        trailing_zeros=_trailing_zero_run(prefix),
    )


def solve_R(q: RodSet, s: RodSource, horizon: int | None = None) -> Expansion:
    """Find the R with r -> q -> s, by the exchange law.

    anti(Q) expands via anti(R) to S, so R is the negation of what the
    Q-solver finds for (anti(q), s).
    """
    inner = solve_Q(negate(q), s, horizon)
    return _verified(
        _negate_source(inner.q),
        q,
        s,
        inner.horizon,
        q_finite=True,
        r_finite=inner.q_finite,
    )


def dual(q: RodSource, horizon: int | None = None) -> RodSet | PrefixRods:
    """The dual rod set Q*: count(n, Q*) = F(n, anti(Q)), inverting 1 + C(x, Q).

    Reported finite only on exact grounds: a trailing window of zero
    counts plus a polynomial identity proving nothing reappears.  For a
    rod set known only by prefix the answer stays a prefix.
    """
    if isinstance(q, RodSet):
        if not q.pairs:
            return RodSet()
        h = max(DEFAULT_HORIZON, 2 * q.max_length + 16) if horizon is None else horizon
        body = train_counts(negate(q), h)[1:]
        window = q.max_length
        if h > window and all(c == 0 for c in body[-window:]):
            cand = RodSet.from_mults({n: c for n, c in enumerate(body, 1) if c})
            if poly_mul(_one_plus_poly(q), _one_plus_poly(cand)) == [1]:
                return cand
        return PrefixRods(tuple(body))
    if isinstance(q, TrainsOf):
        base_top = q.base.max_length or 0
        h = max(DEFAULT_HORIZON, 2 * base_top + 16) if horizon is None else horizon
        body = train_counts(_negate_source(q), h)[1:]
        char = char_poly(q.base)
        if q.sign == 1:
            # 1 + C(x, TrainsOf(base)) = 1 / char_poly(base), so the dual
            # is exactly anti(base).
            cand = negate(q.base)
            expected = source_mults_upto(cand, h)[1:]
            assert body == expected, "trains-of duality identity failed; this is a bug"
            return cand
        # sign -1: 1 + C_Q = (2*char - 1)/char, so the dual generating
        # function is char/(2*char - 1); finite exactly when that divides.
        den = poly_trim([2 * c for c in char])
        den[0] = 1  # 2*char - 1 has constant term 1
        g = poly_divexact(char, den)
        if g is not None:
            return RodSet.from_mults({k: c for k, c in enumerate(g) if k >= 1 and c})
        return PrefixRods(tuple(body))
    if isinstance(q, ArithmeticRods):
        h = DEFAULT_HORIZON if horizon is None else horizon
        body = train_counts(_negate_source(q), h)[1:]
        # 1 + C_Q = (1 - x^d + sign*x^a) / (1 - x^d): finite dual exactly
        # when the denominator of the reciprocal divides 1 - x^d.
        num = [1] + [0] * (q.step - 1) + [-1]
        den = dict(enumerate(num))
        den[q.first] = den.get(q.first, 0) + q.sign
        den_poly = poly_trim([den.get(i, 0) for i in range(max(den) + 1)])
        g = poly_divexact(num, den_poly)
        if g is not None:
            return RodSet.from_mults({k: c for k, c in enumerate(g) if k >= 1 and c})
        return PrefixRods(tuple(body))
    h = DEFAULT_HORIZON if horizon is None else horizon
    h = min(h, len(q.mults))
    return PrefixRods(tuple(train_counts(_negate_source(q), h)[1:]))


def compose(q_pr: RodSet, q_rs: RodSet) -> RodSet:
    """The Q mediating the composite of two expansions: Q1 + Q2 + Q1.Q2."""
    return union(q_pr, union(q_rs, concat(q_pr, q_rs)))


def rodset_from_counts(seq: Sequence[int]) -> RodSet:
    """The unique rod multiplicities whose train counts reproduce seq[0..N].

    Inverts the count recursion term by term: every power series with
    constant term 1 is the train count series of exactly one rod set.
    The result is exact through length N and silent beyond it.
    """
    if not seq or seq[0] != 1:
        raise ExpansionError("a net train count sequence must start with F(0) = 1")
    n_max = len(seq) - 1
    mults = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = seq[n]
        for k in range(1, n):
            if mults[k] and seq[n - k]:
                acc -= mults[k] * seq[n - k]
        mults[n] = acc
    return RodSet.from_mults({k: m for k, m in enumerate(mults) if k >= 1 and m})


def expand_minimal(r: RodSet) -> tuple[RodSet, RodSet]:
    """Expand away all rods of minimal length: Q = [min^mult], S = expand(r, Q).

    Iterating this from a two-rod set walks the count recursion itself,
    which is how the Lucas shape chains arise.
    """
    if not r.pairs:
        raise ExpansionError("cannot expand the minimum of the empty rod set")
    k, m = r.pairs[0]
    q = RodSet(((k, m),))
    return q, expand(r, q).s
