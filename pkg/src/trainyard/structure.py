"""Structure detection on top of the count recursion and the solvers.

Four families of questions about a finite rod set R:

* **Periodicity** — is n -> F(n, R) periodic?  Decided exactly: the
  count series is 1/char_poly(R), so the sequence is periodic precisely
  when the characteristic polynomial is (up to sign) a product of
  distinct cyclotomic polynomials; the least period is the lcm of their
  orders.  A windowed sequence scan confirms every verdict.

* **Expandability scans** — which one- and two-rod sets does R expand
  to?  A window of max R - 1 counts decides each candidate shape: a run
  of zeros for one-rod targets, a consistent integer scaling ratio for
  two-rod targets.  Every scan hit is re-verified through the exact
  Q-solver before it is reported.

* **Lucas families** — R = [1^(±s), 2^t] with gcd(s, t) = 1 produces
  Lucas-like counts: L(n) = F(n-1, R) is a divisibility sequence, and
  the predictable two-rod expansions of R (adjacent, skip, multiple
  chains) come out of the scan machinery in closed form.

* **Borwein trinomials** — which trinomials 1 ∓ x^a ∓ x^b does
  char_poly([1,-2]) (resp. [-1,-2]) divide?  Exactly the signed pairs
  in four residue classes mod 6 (resp. one class mod 3); the
  classification is computed by exact division and cross-checked
  against the two-rod scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .counts import train_counts
from .expansion import expand, solve_Q
from .rodset import RodSet, format_rodset
from .series import char_poly, cyclotomic, euler_phi, poly_divexact

_WINDOW_PRIME = (1 << 61) - 1


class StructureError(ValueError):
    """Domain error raised by structure-detection operations."""


# ---------------------------------------------------------------------------
# Periodicity


@dataclass(frozen=True)
class PeriodReport:
    """Verdict of detect_period.

    ``cyclotomic_factors`` lists the orders d whose cyclotomic
    polynomial divides char_poly(R) (each peeled once); when periodic,
    their product is the whole polynomial up to sign and
    ``least_period`` is their lcm.  ``q_to_period`` is the finite Q
    with R -> Q -> [least_period].  ``window_confirmed`` records that
    the independent sequence scan agreed with the algebraic verdict.
    """

    periodic: bool
    least_period: int | None
    cyclotomic_factors: tuple[int, ...]
    q_to_period: RodSet | None
    window_confirmed: bool


def window_period_scan(rods: RodSet, horizon: int) -> int | None:
    """Least p <= horizon with F(n + p) = F(n) for all n, else None.

    The counts obey a depth-max R recursion, so a repeat of the initial
    max R-window propagates forever; scanning windows is therefore a
    complete periodicity test up to the horizon.  The scan runs modulo
    a large prime — a modular mismatch proves an exact mismatch, and
    the rare modular match is re-verified with exact integers before it
    is believed.
    """
    if not rods.pairs:
        raise StructureError("periodicity is about nonempty rod sets")
    if horizon < 1:
        raise StructureError("horizon must be at least 1")
    w = rods.max_length
    pairs = rods.pairs
    seq = [0] * (horizon + w)
    seq[0] = 1
    for n in range(1, horizon + w):
        acc = 0
        for k, m in pairs:
            if k <= n:
                acc += m * seq[n - k]
        seq[n] = acc % _WINDOW_PRIME
    first = seq[0]
    init = seq[:w]
    for p in range(1, horizon + 1):
        if seq[p] == first and seq[p:p + w] == init:
            exact = train_counts(rods, p + w - 1)
            if exact[p:p + w] == exact[:w]:
                return p
    return None


def detect_period(rods: RodSet) -> PeriodReport:
    """Decide periodicity of n -> F(n, rods) exactly.

    The sequence is periodic iff char_poly(rods) is a product of
    distinct cyclotomic polynomials (times -1 when x - 1 is among
    them).  Candidate orders d satisfy phi(d) <= max R, and
    phi(d) >= sqrt(d/2) bounds the search by d <= 2 * (max R)^2.  Each
    candidate is peeled at most once: a repeated cyclotomic factor
    means polynomial growth, not periodicity.

    The window scan confirms every verdict: to 3p for a period p, and
    to twice the candidate bound for a non-periodic verdict (where the
    algebraic answer is already exact).
    """
    if not rods.pairs:
        raise StructureError("periodicity is about nonempty rod sets")
    top = rods.max_length
    residual = char_poly(rods)
    factors: list[int] = []
    for d in range(1, 2 * top * top + 1):
        if euler_phi(d) > top:
            continue
        quotient = poly_divexact(residual, cyclotomic(d))
        if quotient is not None:
            residual = quotient
            factors.append(d)
            if len(residual) == 1:
                break
    if len(residual) != 1:
        confirmed = window_period_scan(rods, 4 * top * top) is None
        return PeriodReport(False, None, tuple(factors), None, confirmed)
    assert residual[0] in (1, -1), "peeling left a non-unit constant; this is a bug"
    period = math.lcm(*factors)
    solved = solve_Q(rods, RodSet(((period, 1),)))
    assert solved.q_finite is True, "a periodic set must expand to [period]"
    counts = train_counts(rods, 3 * period)
    agreed = all(counts[n + period] == counts[n] for n in range(2 * period + 1))
    confirmed = agreed and window_period_scan(rods, 3 * period) == period
    return PeriodReport(True, period, tuple(factors), solved.q, confirmed)


# ---------------------------------------------------------------------------
# Expandability scans


@dataclass(frozen=True)
class ScalingHit:
    """A verified two-rod expansion target S = [a^mult_a, b^mult_b].

    ``alpha`` is the unique scaling ratio F(b - i) / F(b - a - i) on
    the window 1 <= i < max R; it equals ``mult_a``.  ``q`` is the
    finite mediating rod set found by the exact solver.
    """

    a: int
    b: int
    alpha: int
    mult_a: int
    mult_b: int
    s: RodSet
    q: RodSet


def scan_one_expansions(rods: RodSet, bound: int) -> list[tuple[int, int]]:
    """All a <= bound where rods expands to the single-rod set [a^mult].

    Requires F(a - i) = 0 for 1 <= i < max R and F(a) != 0; the
    multiplicity is F(a).  For max R = 1 the window is empty, so every
    a with F(a) != 0 qualifies (each [1^m] expands to every [a^(m^a)]).
    """
    if not rods.pairs:
        raise StructureError("scan needs a nonempty rod set")
    if bound < 1:
        raise StructureError("bound must be at least 1")
    w = rods.max_length
    counts = train_counts(rods, bound)
    hits: list[tuple[int, int]] = []
    for a in range(1, bound + 1):
        if counts[a] == 0:
            continue
        if all(counts[a - i] == 0 for i in range(1, w) if a - i >= 0):
            hits.append((a, counts[a]))
    return hits


def _window_hit(rods: RodSet, counts: list[int], a: int, b: int) -> ScalingHit | None:
    """Try the scaling window at (a, b); verified ScalingHit or None."""
    w = rods.max_length
    alpha = None
    for i in range(1, w):
        lhs = counts[b - i] if b - i >= 0 else 0
        rhs = counts[b - a - i] if b - a - i >= 0 else 0
        if rhs == 0:
            if lhs != 0:
                return None
        else:
            if lhs % rhs:
                return None
            ratio = lhs // rhs
            if alpha is None:
                alpha = ratio
            elif alpha != ratio:
                return None
    if not alpha:
        return None  # no nonzero F(b-a-i) to scale against, or ratio zero
    f_b = counts[b]
    f_ba = counts[b - a] if b - a >= 0 else 0
    mult_b = f_b - alpha * f_ba
    if mult_b == 0:
        return None
    shape = RodSet(((a, alpha), (b, mult_b)))
    solved = solve_Q(rods, shape)
    if solved.q_finite is not True:
        return None
    return ScalingHit(a, b, alpha, alpha, mult_b, shape, solved.q)


def scan_two_expansions(
    rods: RodSet, bound: int, include_trivial: bool = False
) -> list[ScalingHit]:
    """All two-rod expansion targets [a^alpha, b^mult_b], 1 <= a < b <= bound.

    A pair hits when the counts scale by a unique nonzero integer alpha
    across the window b - max R < n < b (with at least one nonzero
    denominator) and the length-b multiplicity comes out nonzero; every
    hit is confirmed through the exact solver before being reported.
    Ordered by (b, a).  The no-op expansion of a two-rod set to itself
    (empty Q) is suppressed unless ``include_trivial`` is set.
    """
    if not rods.pairs:
        raise StructureError("scan needs a nonempty rod set")
    if rods.max_length < 2:
        raise StructureError("two-rod scan needs max R >= 2 (the window is empty)")
    if bound < 2:
        raise StructureError("bound must be at least 2")
    counts = train_counts(rods, bound)
    hits: list[ScalingHit] = []
    for b in range(2, bound + 1):
        for a in range(1, b):
            hit = _window_hit(rods, counts, a, b)
            if hit is not None and (include_trivial or hit.q.pairs):
                hits.append(hit)
    return hits


# ---------------------------------------------------------------------------
# Lucas families


@dataclass(frozen=True)
class LucasReport:
    """Outcome of lucas_check: which properties held up to the horizon."""

    s: int
    t: int
    sign: int
    horizon: int
    passed: bool
    mod_check: bool | None
    divisibility_check: bool
    failure: str | None


def _lucas_rodset(s: int, t: int, sign: int) -> RodSet:
    if s < 1 or t < 1:
        raise StructureError("Lucas parameters s and t must be positive")
    if math.gcd(s, t) != 1:
        raise StructureError(f"Lucas parameters must be coprime; gcd({s},{t}) != 1")
    if sign not in (1, -1):
        raise StructureError("sign must be +1 or -1")
    return RodSet(((1, sign * s), (2, t)))


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def lucas_check(s: int, t: int, sign: int, horizon: int) -> LucasReport:
    """Verify the Lucas properties of R = [1^(sign*s), 2^t] up to the horizon.

    (a) for s > 1: s divides F(n, R) exactly when n is odd;
    (b) L(n) = F(n - 1, R) is a divisibility sequence: m | n implies
        L(m) | L(n).
    """
    rods = _lucas_rodset(s, t, sign)
    if horizon < 1:
        raise StructureError("horizon must be at least 1")
    counts = train_counts(rods, horizon)
    failure = None
    mod_ok: bool | None = None
    if s > 1:
        mod_ok = True
        for n in range(1, horizon + 1):
            if (counts[n] % s == 0) != (n % 2 == 1):
                mod_ok = False
                failure = f"s-divisibility broke at n={n}: F(n)={counts[n]}"
                break
    div_ok = True
    lucas = counts  # L(n) = F(n-1) = counts[n-1]
    for n in range(2, horizon + 1):
        for m in _divisors(n)[:-1]:
            num, den = lucas[n - 1], lucas[m - 1]
            if den == 0 or num % den:
                div_ok = False
                if failure is None:
                    failure = f"L({m}) does not divide L({n}): {den} vs {num}"
                break
        if not div_ok:
            break
    passed = (mod_ok is not False) and div_ok
    return LucasReport(s, t, sign, horizon, passed, mod_ok, div_ok, failure)


def lucas_two_shapes(
    s: int,
    t: int,
    sign: int,
    kind: str,
    *,
    a_min: int = 2,
    a_max: int = 4,
    a: int | None = None,
    d: int | None = None,
    k_max: int = 1,
) -> list[ScalingHit]:
    """The predictable two-rod expansions of R = [1^(sign*s), 2^t].

    kind "adjacent": shapes (a, a+1) for a_min <= a <= a_max, with
    S = [a^F(a), (a+1)^(t*F(a-1))]; each is cross-checked against the
    expansion chain that peels minimal rods relative to R (mediated by
    Q_a = [1^F(1), ..., (a-1)^F(a-1)]).

    kind "skip": the shape (a, a+2) for the given ``a``, which needs
    s = 1 or a even so that s divides F(a+1); then
    S = [a^(F(a+1)/s), (a+2)^(-t^2*F(a-1)/s)].

    kind "multiple": shapes (k*d, (k+1)*d) for 1 <= k <= k_max, d > 2,
    with alpha = F((k+1)d - 1) / F(d - 1) by Lucas divisibility.

    F here counts trains of the sign-positive R; for sign = -1 the odd
    sign swap carries every shape over, and each hit is still produced
    and verified by the scaling window on the actual R.
    """
    rods = _lucas_rodset(s, t, sign)

    def f_plus(upto: int) -> list[int]:
        return train_counts(RodSet(((1, s), (2, t))), upto)

    def swap_mult(length: int, mult: int) -> int:
        return -mult if sign == -1 and length % 2 == 1 else mult

    def verified(a_len: int, b_len: int, want_a: int, want_b: int) -> ScalingHit:
        counts = train_counts(rods, b_len)
        hit = _window_hit(rods, counts, a_len, b_len)
        if hit is None:
            raise StructureError(
                f"predicted shape ({a_len},{b_len}) failed the scaling window"
            )
        want = RodSet(
            ((a_len, swap_mult(a_len, want_a)), (b_len, swap_mult(b_len, want_b)))
        )
        if hit.s != want:
            raise StructureError(
                f"scan found {format_rodset(hit.s)} where {format_rodset(want)} was predicted"
            )
        return hit

    hits: list[ScalingHit] = []
    if kind == "adjacent":
        if a_min < 2:
            raise StructureError("adjacent chain starts at a = 2")
        f = f_plus(a_max + 1)
        for a_len in range(a_min, a_max + 1):
            hit = verified(a_len, a_len + 1, f[a_len], t * f[a_len - 1])
            own = train_counts(rods, a_len - 1)
            chain_q = RodSet.from_mults({k: own[k] for k in range(1, a_len)})
            if expand(rods, chain_q).s != hit.s:
                raise StructureError("minimal-rod chain disagrees with the scan")
            hits.append(hit)
    elif kind == "skip":
        if a is None:
            raise StructureError('kind "skip" needs the length a')
        if a < 2:
            raise StructureError("skip shapes need a >= 2")
        if s != 1 and a % 2 != 0:
            raise StructureError("skip shapes need s = 1 or a even (s must divide F(a+1))")
        f = f_plus(a + 1)
        if f[a + 1] % s or (t * t * f[a - 1]) % s:
            raise StructureError("s does not divide F(a+1) and t^2*F(a-1); this is a bug")
        hits.append(verified(a, a + 2, f[a + 1] // s, -(t * t * f[a - 1]) // s))
    elif kind == "multiple":
        if d is None or d <= 2:
            raise StructureError('kind "multiple" needs a spacing d > 2')
        if k_max < 1:
            raise StructureError("k_max must be at least 1")
        f = f_plus((k_max + 1) * d)
        for k in range(1, k_max + 1):
            a_len, b_len = k * d, (k + 1) * d
            if f[b_len - 1] % f[d - 1]:
                raise StructureError("Lucas divisibility failed; this is a bug")
            alpha = f[b_len - 1] // f[d - 1]
            hits.append(verified(a_len, b_len, alpha, f[b_len] - alpha * f[d]))
    else:
        raise StructureError(f'unknown kind {kind!r}: use "adjacent", "skip" or "multiple"')
    return hits


# ---------------------------------------------------------------------------
# Borwein trinomial classification


_BORWEIN_POS = RodSet(((1, 1), (2, -1)))
_BORWEIN_NEG = RodSet(((1, -1), (2, -1)))

_POS_CLASSES = {
    ((1, 1), (5, 1)): "(1,5) mod 6",
    ((1, 1), (2, -1)): "(1,-2) mod 6",
    ((2, -1), (4, -1)): "(-2,-4) mod 6",
    ((4, -1), (5, 1)): "(-4,5) mod 6",
}
_NEG_CLASS = {((1, -1), (2, -1)): "(-1,-2) mod 3"}


@dataclass(frozen=True)
class BorweinTable:
    """Signed pairs (sa*a, sb*b) whose trinomial 1 - sa*x^a - sb*x^b is
    divisible by char_poly([1,-2]) or char_poly([-1,-2]), partitioned by
    the residue classes of the classification theorem.  ``unclassified``
    holds any hit outside those classes (there are none)."""

    bound: int
    classes: dict
    unclassified: tuple


def borwein_classify(bound: int) -> BorweinTable:
    """Classify all signed trinomials 1 - sa*x^a - sb*x^b, a < b <= bound.

    Divisibility by x^2 - x + 1 (the [1,-2] characteristic) lands
    exactly on four signed residue classes mod 6; divisibility by
    x^2 + x + 1 (the [-1,-2] characteristic) on one class mod 3.  The
    result is asserted to agree with scan_two_expansions restricted to
    +-1 multiplicities (trivial self-expansion included, since the
    (1,-2) class contains it).
    """
    if bound < 2:
        raise StructureError("bound must be at least 2")
    char_pos = char_poly(_BORWEIN_POS)
    char_neg = char_poly(_BORWEIN_NEG)
    classes: dict = {label: [] for label in _POS_CLASSES.values()}
    classes.update({label: [] for label in _NEG_CLASS.values()})
    unclassified: list = []
    pos_pairs, neg_pairs = set(), set()
    for b in range(2, bound + 1):
        for a in range(1, b):
            for sa in (1, -1):
                for sb in (1, -1):
                    tri = [0] * (b + 1)
                    tri[0], tri[a], tri[b] = 1, -sa, -sb
                    pair = (sa * a, sb * b)
                    if poly_divexact(tri, char_pos) is not None:
                        pos_pairs.add(pair)
                        key = tuple(sorted(((a % 6, sa), (b % 6, sb))))
                        label = _POS_CLASSES.get(key)
                        if label is None:
                            unclassified.append(("[1,-2]", pair))
                        else:
                            classes[label].append(pair)
                    if poly_divexact(tri, char_neg) is not None:
                        neg_pairs.add(pair)
                        key = tuple(sorted(((a % 3, sa), (b % 3, sb))))
                        label = _NEG_CLASS.get(key)
                        if label is None:
                            unclassified.append(("[-1,-2]", pair))
                        else:
                            classes[label].append(pair)
    for base, expected in ((_BORWEIN_POS, pos_pairs), (_BORWEIN_NEG, neg_pairs)):
        scanned = {
            (h.mult_a * h.a, h.mult_b * h.b)
            for h in scan_two_expansions(base, bound, include_trivial=True)
            if abs(h.mult_a) == 1 and abs(h.mult_b) == 1
        }
        assert scanned == expected, "trinomial division and the scan disagree; bug"
    return BorweinTable(
        bound,
        {label: tuple(pairs) for label, pairs in classes.items()},
        tuple(unclassified),
    )
