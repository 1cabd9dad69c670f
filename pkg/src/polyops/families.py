"""Polynomial sequences generated by iterating the two operators.

Two kinds of sequences are built here.  The auxiliary families start
from the constants 1/4 and 1/7 and use the canonical scaling constants
a_n and b_n; the general sequences start from a linear polynomial
c*x - d and accept any nonzero scaling sequence.  The closed-form
identity relating the two is verified exactly by `closed_form_check`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .diffop import Family, make_D
from .ratpoly import RatNum, RatPoly

ScalingPolicy = Union[str, tuple[Fraction, ...]]

PAPER_DEFAULT = "paper"
ALL_ONES = "ones"


def scaling_a(n: int) -> RatNum:
    """Canonical scaling -1/(8n(2n+1)) for the first family; n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return Fraction(-1, 8 * n * (2 * n + 1))


def scaling_b(n: int) -> RatNum:
    """Canonical scaling -(2^(2n+1)-1)/((2^(2n+3)-1)(2n+1)(2n+2)); n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    num = (1 << (2 * n + 1)) - 1
    den = ((1 << (2 * n + 3)) - 1) * (2 * n + 1) * (2 * n + 2)
    return Fraction(-num, den)


def canonical_scaling(family: Family, n: int) -> RatNum:
    return scaling_a(n) if family is Family.XI else scaling_b(n)


@dataclass(frozen=True)
class FamilySpec:
    """Family selector, linear initial datum c*x - d, and scaling policy.

    scaling is "paper" (the canonical a_n / b_n constants), "ones", or a
    tuple of explicit nonzero rationals where entry i scales the step
    from index i+1 to i+2.
    """

    family: Family
    c: RatNum
    d: RatNum
    scaling: ScalingPolicy = PAPER_DEFAULT

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "d", Fraction(self.d))
        if isinstance(self.scaling, str):
            if self.scaling not in (PAPER_DEFAULT, ALL_ONES):
                raise ValueError(f"unknown scaling policy {self.scaling!r}")
        else:
            vals = tuple(Fraction(v) for v in self.scaling)
            if any(v == 0 for v in vals):
                raise ValueError("custom scaling values must all be nonzero")
            object.__setattr__(self, "scaling", vals)

    def scale_factor(self, n: int) -> RatNum:
        """Multiplier applied to the operator image at step n (n >= 1)."""
        if n < 1:
            raise ValueError("n must be positive")
        if self.scaling == PAPER_DEFAULT:
            return canonical_scaling(self.family, n)
        if self.scaling == ALL_ONES:
            return Fraction(1)
        if n > len(self.scaling):
            raise ValueError(f"custom scaling has no entry for step {n}")
        return self.scaling[n - 1]

    def scaling_json(self):
        if isinstance(self.scaling, str):
            return self.scaling
        return [f"{v.numerator}/{v.denominator}" for v in self.scaling]


@dataclass(frozen=True)
class SequenceCache:
    """Immutable 1-indexed sequence of exact polynomials."""

    family: Family
    polys: tuple[RatPoly, ...] = field(repr=False)

    def entry(self, n: int) -> RatPoly:
        if not 1 <= n <= len(self.polys):
            raise IndexError(f"entry {n} not cached (have 1..{len(self.polys)})")
        return self.polys[n - 1]

    def __len__(self) -> int:
        return len(self.polys)

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "entries": [p.to_json() for p in self.polys],
        }


SOFT_CAP = 100  # coefficient growth is unbounded with scaling "ones"


def aux_family(family: Family, n_max: int) -> SequenceCache:
    """Auxiliary sequence: entry 1 is 1/4 (XI) or 1/7 (LAMBDA), then
    entry_{n+1} = a_n * D[entry_n] with the canonical scalings."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    D = make_D(family)
    start = Fraction(1, 4) if family is Family.XI else Fraction(1, 7)
    polys = [RatPoly.constant(start)]
    for n in range(1, n_max):
        polys.append(canonical_scaling(family, n) * D.apply(polys[-1]))
    return SequenceCache(family, tuple(polys))


def iterate_P(spec: FamilySpec, n_max: int) -> SequenceCache:
    """General sequence from c*x - d under the spec's scaling policy."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if n_max > SOFT_CAP:
        import warnings

        warnings.warn(
            f"n_max={n_max} beyond the documented desk-scale cap {SOFT_CAP}; "
            "coefficients may grow very large",
            stacklevel=2,
        )
    D = make_D(spec.family)
    polys = [RatPoly.linear(spec.c, -spec.d)]
    for n in range(1, n_max):
        polys.append(spec.scale_factor(n) * D.apply(polys[-1]))
    return SequenceCache(spec.family, tuple(polys))


def scaling_ratio_product(spec: FamilySpec, n: int) -> RatNum:
    """prod_{k=1}^{n-1} scale(k) / canonical(k), exact."""
    prod = Fraction(1)
    for k in range(1, n):
        prod *= spec.scale_factor(k) / canonical_scaling(spec.family, k)
    return prod


def closed_form_rhs(spec: FamilySpec, n: int, aux: SequenceCache) -> RatPoly:
    """Closed form for entry n of the general sequence via the auxiliary one.

    XI:      -4 * prod * ( (4n(2n+1)/3) c aux_{n+1} + (d - 5c/6) aux_n )
    LAMBDA:  -7 * prod * ( C_n c aux_{n+1} + (d - 2c/3) aux_n ),
             C_n = (2^(2n+3)-1)(2n+1)(2n+2) / (12 (2^(2n+1)-1)).
    """
    prod = scaling_ratio_product(spec, n)
    if spec.family is Family.XI:
        lead = Fraction(4 * n * (2 * n + 1), 3) * spec.c
        tail = spec.d - Fraction(5, 6) * spec.c
        outer = Fraction(-4)
    else:
        num = ((1 << (2 * n + 3)) - 1) * (2 * n + 1) * (2 * n + 2)
        den = 12 * ((1 << (2 * n + 1)) - 1)
        lead = Fraction(num, den) * spec.c
        tail = spec.d - Fraction(2, 3) * spec.c
        outer = Fraction(-7)
    combo = lead * aux.entry(n + 1) + tail * aux.entry(n)
    return (outer * prod) * combo


def closed_form_check(spec: FamilySpec, n: int) -> bool:
    """Exact equality of the iterated entry n and its closed form; n >= 2."""
    if n < 2:
        raise ValueError("closed form holds for n >= 2")
    lhs = iterate_P(spec, n).entry(n)
    aux = aux_family(spec.family, n + 1)
    return lhs == closed_form_rhs(spec, n, aux)
