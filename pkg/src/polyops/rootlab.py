"""Exact real-root analysis: isolation, counting, and interlacing verdicts.

All decisions here are sign decisions on exact integers; floating point
never decides a verdict.  Root isolation uses Descartes'-rule bisection
(variation counts of shifted/reversed integer polynomials), optionally
seeded with caller-supplied split points whose correctness is verified
by exact sign evaluations.  Interval root counts use Sturm chains built
with a primitive remainder sequence, which keeps coefficients no larger
than the corresponding subresultants.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

from .diffop import Family
from .families import ALL_ONES, FamilySpec, iterate_P
from .ratpoly import (
    RatNum,
    RatPoly,
    from_int_coeffs,
    int_derivative,
    int_exact_div,
    int_gcd,
    int_primitive,
    int_pseudo_rem,
    int_sign_at,
    poly_gcd,
    squarefree_decomposition,
    squarefree_part,
    to_int_coeffs,
)

DEFAULT_WIDTH = Fraction(1, 2**40)

_VCA_NODE_CAP = 200_000
_DISJOIN_CAP = 100_000
_INTERLACE_ROUNDS = 200


class IsolationError(RuntimeError):
    """Root isolation could not complete within its caps."""


class IndistinguishableRoots(RuntimeError):
    """Refinement cap hit before intervals separated (possible shared root)."""


class _ExactRootHit(Exception):
    def __init__(self, point: Fraction):
        self.point = point


class RootInterval(NamedTuple):
    lo: Fraction
    hi: Fraction
    mult: int

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class RootSet:
    """Sorted disjoint isolating intervals, one distinct real root each.

    ``factors[i]`` is the primitive integer squarefree factor whose
    (simple) root lies in ``intervals[i]``; sign bisection against it is
    what refines the interval further.
    """

    poly: RatPoly
    squarefree: RatPoly
    intervals: tuple[RootInterval, ...]
    factors: tuple[tuple[int, ...], ...]

    def midpoints(self) -> list[Fraction]:
        return [iv.midpoint for iv in self.intervals]

    @property
    def total_multiplicity(self) -> int:
        return sum(iv.mult for iv in self.intervals)

    @property
    def distinct_count(self) -> int:
        return len(self.intervals)

    def refined(self, width, stop: Optional[Callable] = None) -> "RootSet":
        """New RootSet with every interval refined to the given width."""
        width = Fraction(width)
        new = []
        for iv, fac in zip(self.intervals, self.factors):
            lo, hi = refine_bracket(fac, iv.lo, iv.hi, width=width, stop=stop)
            new.append(RootInterval(lo, hi, iv.mult))
        return RootSet(self.poly, self.squarefree, tuple(new), self.factors)

    def to_json(self) -> list[dict]:
        return [
            {
                "lo": f"{iv.lo.numerator}/{iv.lo.denominator}",
                "hi": f"{iv.hi.numerator}/{iv.hi.denominator}",
                "mult": iv.mult,
            }
            for iv in self.intervals
        ]


# -- low-level integer machinery -------------------------------------------------


def _taylor_shift(cs: Sequence[int], step: int) -> list[int]:
    """p(x + step) for step in {+1, -1}, in-place Pascal accumulation."""
    out = list(cs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += step * out[j + 1]
    return out


def _variations(vals: Iterable[int]) -> int:
    count = 0
    prev = 0
    for v in vals:
        s = (v > 0) - (v < 0)
        if s == 0:
            continue
        if prev != 0 and s != prev:
            count += 1
        prev = s
    return count


def _descartes_var(h: Sequence[int]) -> int:
    """Variation bound on roots of h in (0,1): var of (1+x)^d h(1/(1+x))."""
    return _variations(_taylor_shift(list(reversed(h)), 1))


def _dyadic_root_bound(cs: Sequence[int]) -> int:
    """Exponent B with 2**B strictly above the Cauchy root bound."""
    lc = abs(cs[-1])
    mx = max(abs(c) for c in cs[:-1]) if len(cs) > 1 else 0
    B = 1
    while (lc << B) <= lc + mx:
        B += 1
    return B


def _vca_core(
    lo: Fraction, hi: Fraction, h0: list[int]
) -> list[tuple[Fraction, Fraction]]:
    """Descartes bisection of (lo, hi); raises _ExactRootHit on a dyadic root."""
    boxes = []
    stack = [(h0, lo, hi)]
    nodes = 0
    while stack:
        h, a, b = stack.pop()
        nodes += 1
        if nodes > _VCA_NODE_CAP:
            raise IsolationError("bisection node cap exceeded")
        var = _descartes_var(h)
        if var == 0:
            continue
        if var == 1:
            boxes.append((a, b))
            continue
        mid = (a + b) / 2
        d = len(h) - 1
        hL = int_primitive([c << (d - j) for j, c in enumerate(h)])
        hR = _taylor_shift(hL, 1)
        if hR[0] == 0:
            raise _ExactRootHit(mid)
        stack.append((hL, a, mid))
        stack.append((int_primitive(hR), mid, b))
    return boxes


def _isolate_squarefree_factor(
    g: list[int],
) -> tuple[list[Fraction], list[tuple[Fraction, Fraction]], list[int]]:
    """Isolate the real roots of a squarefree primitive factor.

    Returns (exact rational roots found, open isolating boxes, the
    possibly deflated factor whose sign changes bracket the boxes).
    """
    exact: list[Fraction] = []
    while True:
        if len(g) - 1 == 0:
            return exact, [], g
        if len(g) - 1 == 1:
            exact.append(Fraction(-g[0], g[1]))
            return exact, [], g
        B = _dyadic_root_bound(g)
        M = Fraction(1 << B)
        # h0(x) = g(M(2x-1)) maps (0,1) onto (-M, M)
        w = [c << (B * j) for j, c in enumerate(g)]
        v = _taylor_shift(w, -1)
        h0 = int_primitive([c << j for j, c in enumerate(v)])
        try:
            boxes = _vca_core(-M, M, h0)
        except _ExactRootHit as hit:
            exact.append(hit.point)
            r = hit.point
            g = int_exact_div(g, [-r.numerator, r.denominator])
            continue
        return exact, boxes, g


def refine_bracket(
    cs: Sequence[int],
    lo: Fraction,
    hi: Fraction,
    *,
    width=None,
    stop: Optional[Callable] = None,
    midpoint: Optional[Callable] = None,
    max_steps: int = 100_000,
) -> tuple[Fraction, Fraction]:
    """Shrink a sign-change bracket of cs around its single simple root.

    Stops when the width target (if given) and the stop predicate (if
    given) are both satisfied.  ``midpoint`` may supply a custom interior
    split point; the default is the arithmetic midpoint.
    """
    if lo == hi:
        return lo, hi
    slo = int_sign_at(cs, lo)
    if slo == 0 or int_sign_at(cs, hi) == 0:
        raise IsolationError("bracket endpoint is a root")
    if width is not None:
        width = Fraction(width)
    for _ in range(max_steps):
        if (width is None or hi - lo <= width) and (stop is None or stop(lo, hi)):
            return lo, hi
        mid = midpoint(lo, hi) if midpoint is not None else (lo + hi) / 2
        if not (lo < mid < hi):
            mid = (lo + hi) / 2
        sm = int_sign_at(cs, mid)
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    raise IsolationError("refinement step cap exceeded")


# -- isolation entry point ---------------------------------------------------------


def _hinted_boxes(ints: list[int], hints) -> Optional[list[tuple[Fraction, Fraction]]]:
    """All-roots certificate from a proposed split grid, or None.

    If the sign sequence of f along the grid alternates deg(f) times,
    every root is real, simple, and bracketed; the grid then replaces
    bisection outright.  Hints only propose; the signs decide.
    """
    B = _dyadic_root_bound(ints)
    M = Fraction(1 << B)
    pts = sorted({Fraction(h) for h in hints if -M < Fraction(h) < M})
    pts = [-M] + pts + [M]
    signs = [int_sign_at(ints, p) for p in pts]
    if any(s == 0 for s in signs):
        return None
    boxes = [
        (pts[i], pts[i + 1])
        for i in range(len(pts) - 1)
        if signs[i] * signs[i + 1] < 0
    ]
    if len(boxes) == len(ints) - 1:
        return boxes
    return None


def isolate(f: RatPoly, width=DEFAULT_WIDTH, hints=None, stop=None) -> RootSet:
    """Isolating intervals for every distinct real root of f.

    Each interval is refined by bisection to length <= width (and until
    the optional stop predicate holds); multiplicities come from the
    repeated-gcd structure of f.
    """
    if f.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if f.degree <= 0:
        return RootSet(f, RatPoly.constant(1), (), ())
    ints = to_int_coeffs(f)
    sq = squarefree_part(f)

    if hints is not None:
        boxes = _hinted_boxes(ints, hints)
        if boxes is not None:
            fac = tuple(ints)
            ivs = []
            for lo, hi in boxes:
                lo, hi = refine_bracket(ints, lo, hi, width=width, stop=stop)
                ivs.append(RootInterval(lo, hi, 1))
            ivs.sort(key=lambda iv: (iv.lo, iv.hi))
            return RootSet(f, sq, tuple(ivs), tuple(fac for _ in ivs))

    items: list[tuple[RootInterval, tuple[int, ...]]] = []
    for fac, mult in squarefree_decomposition(ints):
        exact, boxes, fac2 = _isolate_squarefree_factor(fac)
        carrier = tuple(fac2)
        for r in exact:
            items.append((RootInterval(r, r, mult), carrier))
        for lo, hi in boxes:
            lo, hi = refine_bracket(fac2, lo, hi, width=width, stop=stop)
            items.append((RootInterval(lo, hi, mult), carrier))
    _disjoin(items)
    items.sort(key=lambda it: (it[0].lo, it[0].hi))
    return RootSet(
        f, sq, tuple(it[0] for it in items), tuple(it[1] for it in items)
    )


def _overlaps(a: RootInterval, b: RootInterval) -> bool:
    if a.is_point and b.is_point:
        return a.lo == b.lo
    if a.is_point:
        return b.lo < a.lo < b.hi
    if b.is_point:
        return a.lo < b.lo < a.hi
    return a.lo < b.hi and b.lo < a.hi


def _halve(item: tuple[RootInterval, tuple[int, ...]]):
    iv, fac = item
    if iv.is_point:
        return item
    lo, hi = refine_bracket(fac, iv.lo, iv.hi, width=(iv.hi - iv.lo) / 2)
    return (RootInterval(lo, hi, iv.mult), fac)


def _disjoin(items: list) -> None:
    """Refine intervals in place until pairwise disjoint (distinct roots)."""
    rounds = 0
    changed = True
    while changed:
        items.sort(key=lambda it: (it[0].lo, it[0].hi))
        changed = False
        for i in range(len(items) - 1):
            if _overlaps(items[i][0], items[i + 1][0]):
                rounds += 1
                if rounds > _DISJOIN_CAP:
                    raise IsolationError("could not separate isolating intervals")
                items[i] = _halve(items[i])
                items[i + 1] = _halve(items[i + 1])
                changed = True


# -- Sturm chains and interval counts ------------------------------------------------


def sturm_chain(cs: Sequence[int]) -> list[list[int]]:
    """Sign-faithful Sturm chain of a primitive integer polynomial."""
    chain = [list(cs), int_primitive(int_derivative(cs))]
    if not chain[1]:
        return chain[:1]
    while True:
        r = int_pseudo_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in int_primitive(r)])
    return chain


def _var_at(chain: list[list[int]], x: Fraction) -> int:
    return _variations(int_sign_at(m, x) for m in chain)


def _var_at_inf(chain: list[list[int]], positive: bool) -> int:
    signs = []
    for m in chain:
        s = (m[-1] > 0) - (m[-1] < 0)
        if not positive and (len(m) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def count_real_roots(cs: Sequence[int]) -> int:
    """Number of distinct real roots (Sturm count over all of R)."""
    if len(cs) - 1 <= 0:
        return 0
    chain = sturm_chain(list(cs))
    return _var_at_inf(chain, False) - _var_at_inf(chain, True)


def count_roots_between(cs: Sequence[int], a: Fraction, b: Fraction) -> int:
    """Distinct real roots in (a, b); requires f(a) != 0 != f(b)."""
    if len(cs) - 1 <= 0:
        return 0
    if int_sign_at(cs, a) == 0 or int_sign_at(cs, b) == 0:
        raise ValueError("interval endpoint is a root")
    chain = sturm_chain(list(cs))
    return _var_at(chain, a) - _var_at(chain, b)


def is_hyperbolic(f: RatPoly) -> bool:
    """True iff all roots of f are real (counted with multiplicity)."""
    if f.is_zero:
        raise ValueError("hyperbolicity is undefined for the zero polynomial")
    if f.degree <= 0:
        return True
    total = 0
    for fac, mult in squarefree_decomposition(to_int_coeffs(f)):
        total += mult * count_real_roots(fac)
    return total == f.degree


def confined(f: RatPoly, b) -> bool:
    """True iff every real root of f lies strictly inside (0, b)."""
    b = Fraction(b)
    if b <= 0:
        raise ValueError("b must be positive")
    if f.is_zero:
        raise ValueError("confinement is undefined for the zero polynomial")
    if f.degree <= 0:
        return True
    for fac, _ in squarefree_decomposition(to_int_coeffs(f)):
        if int_sign_at(fac, Fraction(0)) == 0 or int_sign_at(fac, b) == 0:
            return False
        if count_roots_between(fac, Fraction(0), b) != count_real_roots(fac):
            return False
    return True


# -- interlacing -------------------------------------------------------------------


class InterlaceKind(enum.Enum):
    A_PATTERN = "A-pattern"
    B_PATTERN = "B-pattern"
    FAILS = "fails"


@dataclass(frozen=True)
class InterlaceVerdict:
    kind: InterlaceKind
    witness: Optional[tuple[Fraction, Fraction]] = None

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.witness is not None:
            out["witness"] = [str(self.witness[0]), str(self.witness[1])]
        else:
            out["witness"] = None
        return out


def interlace(roots_f: RootSet, roots_g: RootSet, strict: bool = True) -> InterlaceVerdict:
    """Classify the joint zero pattern of two isolated root sets.

    A-pattern: equal counts, strictly alternating starting with the
    first set.  B-pattern: the second set carries one extra root and the
    merged order starts and ends with it.  Anything else Fails, with a
    witness pair of adjacent roots breaking the alternation.

    Swapping the arguments of a strict A- or B-verdict yields Fails (the
    orientation is part of the pattern).  With strict=False, roots shared
    between the two sets (detected exactly via a gcd) are allowed to
    coincide; otherwise a shared root raises IndistinguishableRoots.
    """
    fs = to_int_coeffs(roots_f.squarefree)
    gs = to_int_coeffs(roots_g.squarefree)
    common = int_gcd(fs, gs)
    if len(common) - 1 >= 1 and strict:
        raise IndistinguishableRoots("the polynomials share a root (common factor)")

    if strict and (
        any(iv.mult > 1 for iv in roots_f.intervals)
        or any(iv.mult > 1 for iv in roots_g.intervals)
    ):
        rep = next(
            iv
            for iv in (*roots_f.intervals, *roots_g.intervals)
            if iv.mult > 1
        )
        return InterlaceVerdict(InterlaceKind.FAILS, (rep.midpoint, rep.midpoint))

    fitems = [(iv, fac) for iv, fac in zip(roots_f.intervals, roots_f.factors)]
    gitems = [(iv, fac) for iv, fac in zip(roots_g.intervals, roots_g.factors)]

    if strict or len(common) - 1 < 1:
        _separate_sets(fitems, gitems)
        fkeys = _expanded_keys(fitems)
        gkeys = _expanded_keys(gitems)
        return _classify(fkeys, gkeys, strict=True)

    # non-strict with a genuine common factor: shared roots get one exact
    # key used by both sides
    return _classify_nonstrict(roots_f, roots_g, common)


def _expanded_keys(items) -> list[Fraction]:
    keys = []
    for iv, _ in items:
        keys.extend([iv.midpoint] * iv.mult)
    return keys


def _separate_sets(fitems: list, gitems: list) -> None:
    """Refine across the two sets until no f-interval overlaps a g-interval.

    One round halves every interval involved in an overlap; widths thus
    shrink geometrically, and the round cap bounds the total shrinkage.
    """
    for _ in range(_INTERLACE_ROUNDS):
        fhit: set[int] = set()
        ghit: set[int] = set()
        for i, (fi, _) in enumerate(fitems):
            for j, (gi, _) in enumerate(gitems):
                if _overlaps(fi, gi):
                    fhit.add(i)
                    ghit.add(j)
        if not fhit and not ghit:
            return
        for i in fhit:
            fitems[i] = _halve(fitems[i])
        for j in ghit:
            gitems[j] = _halve(gitems[j])
    raise IndistinguishableRoots("refinement cap hit before intervals separated")


def _classify(fkeys: list, gkeys: list, strict: bool) -> InterlaceVerdict:
    less = (lambda a, b: a < b) if strict else (lambda a, b: a <= b)
    p, q = len(fkeys), len(gkeys)
    if p == q:
        # f1 < g1 < f2 < g2 < ... < fp < gp
        chain = []
        for u, v in zip(fkeys, gkeys):
            chain.extend([u, v])
        kind = InterlaceKind.A_PATTERN
    elif q == p + 1:
        # g1 < f1 < g2 < ... < fp < g(p+1)
        chain = [gkeys[0]]
        for u, v in zip(fkeys, gkeys[1:]):
            chain.extend([u, v])
        kind = InterlaceKind.B_PATTERN
    else:
        witness = None
        merged = sorted([(k, "f") for k in fkeys] + [(k, "g") for k in gkeys])
        for (k1, s1), (k2, s2) in zip(merged, merged[1:]):
            if s1 == s2:
                witness = (k1, k2)
                break
        if witness is None and len(merged) >= 2:
            witness = (merged[0][0], merged[1][0])
        return InterlaceVerdict(InterlaceKind.FAILS, witness)
    for a, b in zip(chain, chain[1:]):
        if not less(a, b):
            return InterlaceVerdict(InterlaceKind.FAILS, (a, b))
    return InterlaceVerdict(kind)


def _classify_nonstrict(
    roots_f: RootSet, roots_g: RootSet, common: list[int]
) -> InterlaceVerdict:
    shared = isolate(from_int_coeffs(common))
    f1 = from_int_coeffs(int_exact_div(to_int_coeffs(roots_f.squarefree), common))
    g1 = from_int_coeffs(int_exact_div(to_int_coeffs(roots_g.squarefree), common))
    fown = isolate(f1) if f1.degree >= 1 else None
    gown = isolate(g1) if g1.degree >= 1 else None

    sets = []
    for rs in (shared, fown, gown):
        if rs is not None:
            sets.append([(iv, fac) for iv, fac in zip(rs.intervals, rs.factors)])
        else:
            sets.append([])
    # pairwise separation: the three sets are coprime
    _separate_sets(sets[0], sets[1])
    _separate_sets(sets[0], sets[2])
    _separate_sets(sets[1], sets[2])

    shared_keys = [iv.midpoint for iv, _ in sets[0]]
    fkeys = sorted(shared_keys + [iv.midpoint for iv, _ in sets[1]])
    gkeys = sorted(shared_keys + [iv.midpoint for iv, _ in sets[2]])
    return _classify(fkeys, gkeys, strict=False)


# -- threshold and sequence-level checks ---------------------------------------------


def interlacing_window(family: Family) -> tuple[Fraction, Fraction]:
    """Open d/c window in which the first two sequence entries interlace."""
    lo = Fraction(3, 7) if family is Family.XI else Fraction(1, 3)
    return lo, Fraction(1)


def threshold_check(family: Family, c, d) -> bool:
    """Verify one point of the strict-interlacing iff for (P1, P2).

    Computes the first two sequence entries, classifies their zero
    pattern exactly, and returns whether the observed verdict matches
    the predicted side of the d/c window.  Boundary ratios produce a
    shared root (detected via an exact gcd) and count as not strictly
    interlacing.
    """
    c, d = Fraction(c), Fraction(d)
    if c == 0:
        raise ValueError("c must be nonzero")
    spec = FamilySpec(family, c, d, ALL_ONES)
    cache = iterate_P(spec, 2)
    p1, p2 = cache.entry(1), cache.entry(2)
    lo, hi = interlacing_window(family)
    predicted = lo < d / c < hi

    if poly_gcd(p1, p2).degree >= 1:
        observed = False
    else:
        try:
            verdict = interlace(isolate(p1), isolate(p2), strict=True)
            observed = verdict.kind is InterlaceKind.B_PATTERN
        except IndistinguishableRoots:
            observed = False
    return observed == predicted


def consecutive_interlacing(spec: FamilySpec, n_max: int) -> list[InterlaceVerdict]:
    """Verdicts for all consecutive pairs of the iterated sequence.

    Requires d/c inside the family's interlacing window; every verdict
    is expected to be the B-pattern since the degree rises by one.
    """
    lo, hi = interlacing_window(spec.family)
    ratio = spec.d / spec.c
    if not lo < ratio < hi:
        raise ValueError(f"d/c = {ratio} outside the interlacing window ({lo}, {hi})")
    cache = iterate_P(spec, n_max)
    verdicts = []
    prev = isolate(cache.entry(1))
    for n in range(2, n_max + 1):
        cur = isolate(cache.entry(n))
        verdicts.append(interlace(prev, cur, strict=True))
        prev = cur
    return verdicts


# -- proper position -----------------------------------------------------------------


def _wronskian_nonpositive(W: RatPoly) -> bool:
    """Exact decision of W <= 0 on all of R.

    Requires every real root of W to have even multiplicity plus a
    nonpositive sign at +infinity (the leading coefficient).
    """
    if W.is_zero:
        return True
    if W.degree == 0:
        return W.coeffs[0] < 0
    if W.degree % 2 == 1:
        return False
    if W.leading_coefficient > 0:
        return False
    for fac, mult in squarefree_decomposition(to_int_coeffs(W)):
        if mult % 2 == 1 and count_real_roots(fac) > 0:
            return False
    return True


def _weakly_interlace(f: RatPoly, g: RatPoly) -> bool:
    """Non-strict interlacing of the full root multisets of f and g."""
    if f.degree <= 0 and g.degree <= 0:
        return True
    S = squarefree_part(f * g)
    spoints = isolate(S)
    sitems = [(iv, fac) for iv, fac in zip(spoints.intervals, spoints.factors)]

    def multiset(p: RatPoly) -> list[int]:
        # multiplicity of each distinct point of S in p, by interval matching
        counts = [0] * len(sitems)
        if p.degree <= 0:
            return counts
        for fac, mult in squarefree_decomposition(to_int_coeffs(p)):
            rs = isolate(from_int_coeffs(fac))
            fitems = [(iv, fc) for iv, fc in zip(rs.intervals, rs.factors)]
            for idx in _match_to(fitems, sitems):
                counts[idx] += mult
        return counts

    fc = multiset(f)
    gc = multiset(g)
    U = [i for i, c in enumerate(fc) for _ in range(c)]
    V = [i for i, c in enumerate(gc) for _ in range(c)]
    if len(U) == len(V):
        return _weak_chain(U, V) or _weak_chain(V, U)
    if len(V) == len(U) + 1:
        return _weak_chain(V, U)
    if len(U) == len(V) + 1:
        return _weak_chain(U, V)
    return False


def _weak_chain(longer: list, shorter: list) -> bool:
    # longer[0] <= shorter[0] <= longer[1] <= ... (weak alternation)
    if len(longer) == len(shorter):
        chain = []
        for a, b in zip(longer, shorter):
            chain.extend([a, b])
    elif len(longer) == len(shorter) + 1:
        chain = [longer[0]]
        for a, b in zip(shorter, longer[1:]):
            chain.extend([a, b])
    else:
        return False
    return all(a <= b for a, b in zip(chain, chain[1:]))


def _match_to(fitems: list, sitems: list) -> list[int]:
    """Index in sitems of each fitems root.

    Every root in fitems equals exactly one root in sitems; its interval
    therefore always overlaps the matching one, and halving shakes off
    any other overlaps.
    """
    out = []
    for iv, fac in fitems:
        item = (iv, fac)
        for _ in range(_DISJOIN_CAP):
            candidates = [
                j for j, (siv, _) in enumerate(sitems) if _overlaps(item[0], siv)
            ]
            if len(candidates) == 1:
                out.append(candidates[0])
                break
            if not candidates:
                raise IsolationError("factor root matched no distinct-root interval")
            item = _halve(item)
        else:
            raise IsolationError("factor root matching did not converge")
    return out


def proper_position(f: RatPoly, g: RatPoly) -> bool:
    """Exact test of the order relation 'g + i*f is stable'.

    Equivalent formulation used here: f and g are hyperbolic, their root
    multisets interlace non-strictly, and the Wronskian f'g - fg' is
    nonpositive on all of R.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("proper position requires nonzero polynomials")
    W = f.derivative() * g - f * g.derivative()
    if W.is_zero:
        return is_hyperbolic(f * g)
    if not _wronskian_nonpositive(W):
        return False
    if not (is_hyperbolic(f) and is_hyperbolic(g)):
        return False
    return _weakly_interlace(f, g)
