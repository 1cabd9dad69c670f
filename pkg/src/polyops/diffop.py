"""Second-order differential operators as coefficient triples.

An operator L[f] = q2*f'' + q1*f' + q0*f is plain data, so structural
equality is exact and the composition of the two first-order building
blocks can be compared coefficient-by-coefficient against the built-in
second-order operators.

Also hosts the weighted inner products on (0,1).  The weights involve
x**(1/2), so they are never represented as polynomials: only the two
exponents are stored, and every integral reduces to closed-form monomial
moments, keeping all values exact rationals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .ratpoly import RatNum, RatPoly


class Family(enum.Enum):
    """Selector for the two operator/weight families."""

    XI = "xi"
    LAMBDA = "lambda"

    @classmethod
    def parse(cls, s: str) -> "Family":
        key = s.strip().lower()
        for fam in cls:
            if fam.value == key:
                return fam
        raise ValueError(f"unknown family {s!r} (expected 'xi' or 'lambda')")


@dataclass(frozen=True)
class DiffOp:
    """Operator L[f] = q2*f'' + q1*f' + q0*f with polynomial coefficients."""

    q2: RatPoly
    q1: RatPoly
    q0: RatPoly

    @property
    def order(self) -> int:
        if not self.q2.is_zero:
            return 2
        if not self.q1.is_zero:
            return 1
        return 0

    def apply(self, f: RatPoly) -> RatPoly:
        df = f.derivative()
        return self.q2 * df.derivative() + self.q1 * df + self.q0 * f

    def __call__(self, f: RatPoly) -> RatPoly:
        return self.apply(f)

    def to_json(self) -> dict:
        return {"q2": self.q2.to_json(), "q1": self.q1.to_json(), "q0": self.q0.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "DiffOp":
        return cls(
            RatPoly.from_json(obj["q2"]),
            RatPoly.from_json(obj["q1"]),
            RatPoly.from_json(obj["q0"]),
        )


def make_A(n: int) -> DiffOp:
    """Degree-preserving first-order factor 2(x-1)*d/dx + n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return DiffOp(RatPoly.zero(), RatPoly.linear(2, -2), RatPoly.constant(n))


def make_B(n: int) -> DiffOp:
    """Degree-raising first-order factor 2x(x-1)*d/dx + ((n+1)x - 1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return DiffOp(RatPoly.zero(), RatPoly((0, -2, 2)), RatPoly.linear(n + 1, -1))


def make_D(family: Family) -> DiffOp:
    """The built-in second-order operator of the given family.

    Both share the leading coefficient 4x(x-1)^2; they differ in the
    first- and zeroth-order coefficients.
    """
    q2 = RatPoly((0, 4, -8, 4))  # 4x(x-1)^2
    if family is Family.XI:
        q1 = RatPoly((6, -20, 14))  # 2(x-1)(7x-3)
        q0 = RatPoly.linear(6, -5)
        return DiffOp(q2, q1, q0)
    if family is Family.LAMBDA:
        q1 = RatPoly((6, -24, 18))  # 6(x-1)(3x-1)
        q0 = RatPoly.linear(12, -8)  # 4(3x-2)
        return DiffOp(q2, q1, q0)
    raise ValueError(f"unknown family {family!r}")


def apply(L: DiffOp, f: RatPoly) -> RatPoly:
    return L.apply(f)


def compose_first_order(outer: DiffOp, inner: DiffOp) -> DiffOp:
    """Symbolic composition of two operators of order <= 1.

    With outer = a1*D + a0 and inner = b1*D + b0, the product rule gives

        (outer o inner)[f] = a1*b1*f'' + (a1*b1' + a1*b0 + a0*b1)*f'
                             + (a1*b0' + a0*b0)*f.
    """
    if not outer.q2.is_zero or not inner.q2.is_zero:
        raise ValueError("composition is implemented for first-order operators only")
    a1, a0 = outer.q1, outer.q0
    b1, b0 = inner.q1, inner.q0
    q2 = a1 * b1
    q1 = a1 * b1.derivative() + a1 * b0 + a0 * b1
    q0 = a1 * b0.derivative() + a0 * b0
    return DiffOp(q2, q1, q0)


def compose_AB(n: int) -> DiffOp:
    """The second-order operator A_n o B_n, built by symbolic composition."""
    return compose_first_order(make_A(n), make_B(n))


def monomial_action(L: DiffOp, m: int) -> tuple[RatNum, RatNum, RatNum]:
    """Coefficients (c_plus, c_same, c_minus) of L[x^m] on x^(m+1), x^m, x^(m-1).

    Only the two built-in operators are supported; the x^(m-1) entry is
    zero when m = 0.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if L == make_D(Family.XI):
        c_plus = Fraction(4 * m * m + 10 * m + 6)
        c_same = Fraction(-(8 * m * m + 12 * m + 5))
    elif L == make_D(Family.LAMBDA):
        c_plus = Fraction(4 * m * m + 14 * m + 12)
        c_same = Fraction(-(8 * m * m + 16 * m + 8))
    else:
        raise ValueError("monomial action is defined for the built-in operators only")
    c_minus = Fraction(4 * m * m + 2 * m) if m >= 1 else Fraction(0)
    return (c_plus, c_same, c_minus)


# -- weights and inner products -------------------------------------------------


@dataclass(frozen=True)
class WeightSpec:
    """Weight x**half_exp * (1-x)**one_minus_exp on (0,1), exponents fixed.

    half_exp is 1/2 for both families; one_minus_exp is 0 for XI and 1
    for LAMBDA.
    """

    family: Family
    half_exp: Fraction
    one_minus_exp: int

    def moment(self, k: int) -> Fraction:
        """Exact integral of x**(k + 1/2) * (1-x)**one_minus_exp over (0,1)."""
        base = Fraction(2, 2 * k + 3)
        if self.one_minus_exp == 0:
            return base
        return base - Fraction(2, 2 * k + 5)


def make_weight(family: Family) -> WeightSpec:
    return WeightSpec(family, Fraction(1, 2), 0 if family is Family.XI else 1)


def inner_product(f: RatPoly, g: RatPoly, family: Family) -> RatNum:
    """Exact weighted inner product of two polynomials over (0,1)."""
    w = make_weight(family)
    h = f * g
    return sum((c * w.moment(k) for k, c in enumerate(h.coeffs)), Fraction(0))


def selfadjoint_defect(f: RatPoly, g: RatPoly, family: Family) -> RatNum:
    """<D[f], g> - <f, D[g]> in the family's weighted inner product.

    Zero for all polynomial pairs: the divergence-form coefficient
    vanishes at both endpoints, so the boundary term drops out.
    """
    D = make_D(family)
    return inner_product(D.apply(f), g, family) - inner_product(f, D.apply(g), family)


def weight_compatible(L: DiffOp, family: Family) -> bool:
    """Whether L fits divergence form with the family's weight.

    The weight rho satisfies rho'/rho = (q1 - q2')/q2; cross-multiplied
    with the known rho this is a polynomial identity:

        XI:      2x * (q1 - q2') == q2
        LAMBDA:  2x(x-1) * (q1 - q2') == (3x-1) * q2
    """
    diff = L.q1 - L.q2.derivative()
    if family is Family.XI:
        return RatPoly((0, 2)) * diff == L.q2
    return RatPoly((0, -2, 2)) * diff == RatPoly.linear(3, -1) * L.q2


def divergence_check(family: Family) -> bool:
    """Exact divergence-form identity for the built-in operator."""
    return weight_compatible(make_D(family), family)
