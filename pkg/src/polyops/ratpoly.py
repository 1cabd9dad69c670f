"""Exact rational scalars and dense univariate polynomials over Q.

Every other module builds on the two types defined here: ``RatNum`` (an
alias of :class:`fractions.Fraction`, which already enforces a positive
denominator and lowest terms) and :class:`RatPoly`, a dense coefficient
vector with exact rational entries.  All arithmetic is exact; floating
point appears only in :meth:`RatPoly.eval_complex`.

The second half of the module is an integer kernel: gcds, squarefree
decomposition and sign evaluation run on primitive integer coefficient
lists (denominators cleared, content divided out), which keeps
intermediate coefficient growth under control.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

RatNum = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat(value, den=None) -> Fraction:
    """Coerce ints, floats, or "num/den" strings into a Fraction."""
    if den is not None:
        return Fraction(value, den)
    return Fraction(value)


@dataclass(frozen=True)
class RatPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies x**k.

    The zero polynomial has an empty coefficient tuple.  For nonzero
    polynomials the top coefficient is nonzero, so ``degree`` equals
    ``len(coeffs) - 1``.  Instances are immutable and hashable.
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction helpers --------------------------------------------

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls(())

    @classmethod
    def constant(cls, c) -> "RatPoly":
        return cls((Fraction(c),))

    @classmethod
    def x(cls) -> "RatPoly":
        return cls((_ZERO, _ONE))

    @classmethod
    def monomial(cls, k: int, c=1) -> "RatPoly":
        if k < 0:
            raise ValueError("exponent must be nonnegative")
        return cls((_ZERO,) * k + (Fraction(c),))

    @classmethod
    def linear(cls, a1, a0) -> "RatPoly":
        """The polynomial a1*x + a0."""
        return cls((Fraction(a0), Fraction(a1)))

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _ZERO

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "RatPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "RatPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RatPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "RatPoly":
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return RatPoly.zero()
            return RatPoly(tuple(q * c for c in self.coeffs))
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return RatPoly.zero()
        a, b = self.coeffs, other.coeffs
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative power")
        result = RatPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and evaluation -------------------------------------------

    def derivative(self) -> "RatPoly":
        return RatPoly(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def eval_rational(self, x) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        x = Fraction(x)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, z: complex) -> complex:
        """Floating-point Horner evaluation at a complex point."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def __call__(self, x):
        if isinstance(x, complex) or isinstance(x, float):
            return self.eval_complex(complex(x))
        return self.eval_rational(x)

    def compose_square(self) -> "RatPoly":
        """Return g with g(x) = f(x**2)."""
        if self.is_zero:
            return self
        out = [_ZERO] * (2 * len(self.coeffs) - 1)
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return RatPoly(out)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list[str]:
        """Coefficients as "num/den" strings, lowest degree first."""
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, items: Sequence[str]) -> "RatPoly":
        return cls(tuple(Fraction(s) for s in items))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{k}")
        return " + ".join(parts)


def _coerce(value) -> RatPoly:
    if isinstance(value, RatPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return RatPoly.constant(value)
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


# -- module-level operation aliases -------------------------------------------


def differentiate(f: RatPoly) -> RatPoly:
    return f.derivative()


def evaluate_rational(f: RatPoly, x) -> Fraction:
    return f.eval_rational(x)


def evaluate_complex(f: RatPoly, z: complex) -> complex:
    return f.eval_complex(z)


def compose_square(f: RatPoly) -> RatPoly:
    return f.compose_square()


def poly_arith(f: RatPoly, g: RatPoly, kind: str) -> RatPoly:
    """Dispatch form of +, -, * used by the CLI layer."""
    if kind == "add":
        return f + g
    if kind == "sub":
        return f - g
    if kind == "mul":
        return f * g
    raise ValueError(f"unknown arithmetic kind {kind!r}")


# -- integer kernel ------------------------------------------------------------
#
# Coefficient lists are ascending (index = power) with a nonzero top entry.


def to_int_coeffs(f: RatPoly) -> list[int]:
    """Primitive integer coefficient list of a nonzero polynomial.

    The result is f times a positive rational constant; it has the same
    roots with the same multiplicities and the same sign everywhere.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has no primitive part")
    den = math.lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    g = math.gcd(*ints)
    return [c // g for c in ints]


def from_int_coeffs(cs: Sequence[int]) -> RatPoly:
    return RatPoly(tuple(Fraction(c) for c in cs))


def int_strip(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def int_primitive(cs: Sequence[int]) -> list[int]:
    """Divide out the (positive) content; sign of the input is preserved."""
    g = math.gcd(*cs) if cs else 0
    if g == 0:
        return []
    return [c // g for c in cs]


def int_derivative(cs: Sequence[int]) -> list[int]:
    return [k * c for k, c in enumerate(cs) if k >= 1]


def int_eval_at_rational(cs: Sequence[int], p: int, q: int) -> int:
    """Exact integer q**deg * f(p/q) for q > 0; its sign is sign(f(p/q))."""
    acc = cs[-1]
    qpow = 1
    for k in range(len(cs) - 2, -1, -1):
        qpow *= q
        acc = acc * p + cs[k] * qpow
    return acc


def int_eval_at_dyadic(cs: Sequence[int], p: int, e: int) -> int:
    """Exact integer 2**(e*deg) * f(p / 2**e); shifts instead of q-powers."""
    acc = cs[-1]
    for k in range(len(cs) - 2, -1, -1):
        acc = acc * p + (cs[k] << (e * (len(cs) - 1 - k)))
    return acc


def int_sign_at(cs: Sequence[int], x: Fraction) -> int:
    """Sign of f(x) for a primitive integer coefficient list."""
    x = Fraction(x)
    den = x.denominator
    if den & (den - 1) == 0:  # power of two: shift-based Horner
        v = int_eval_at_dyadic(cs, x.numerator, den.bit_length() - 1)
    else:
        v = int_eval_at_rational(cs, x.numerator, den)
    return (v > 0) - (v < 0)


def int_pseudo_rem(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Remainder r with c*f = q*g + r for some c > 0 (sign-faithful).

    Used for Sturm chains, where only the sign of the remainder matters;
    the positive scaling keeps sign variation counts intact.
    """
    dg = len(g) - 1
    lc = g[-1]
    r = list(f)
    negate = False
    while len(r) - 1 >= dg:
        dr = len(r) - 1
        top = r[-1]
        r = [c * lc for c in r]
        if lc < 0:
            negate = not negate
        for i in range(dg + 1):
            r[dr - dg + i] -= top * g[i]
        int_strip(r)
        if not r:
            break
    if negate:
        r = [-c for c in r]
    return r


def int_gcd(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Primitive gcd with positive leading coefficient.

    Primitive polynomial remainder sequence: the content is divided out
    after every pseudo-division, which keeps coefficients no larger than
    the corresponding subresultants.
    """
    a = int_primitive(list(f))
    b = int_primitive(list(g))
    if not a:
        return _positive_lc(b)
    if not b:
        return _positive_lc(a)
    if len(a) == 1 or len(b) == 1:
        return [1]
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = int_pseudo_rem(a, b)
        if not r:
            break
        a, b = b, int_primitive(r)
    return _positive_lc(b)


def _positive_lc(cs: list[int]) -> list[int]:
    if cs and cs[-1] < 0:
        return [-c for c in cs]
    return cs


def int_exact_div(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Exact quotient f/g over Q, returned as a primitive integer list.

    Raises if g does not divide f.
    """
    dg = len(g) - 1
    dq = len(f) - 1 - dg
    if dq < 0:
        raise ValueError("inexact polynomial division")
    a = [Fraction(c) for c in f]
    lc = Fraction(g[-1])
    quot = [Fraction(0)] * (dq + 1)
    for k in range(dq, -1, -1):
        c = a[k + dg]
        if c == 0:
            continue
        q = c / lc
        quot[k] = q
        for i in range(dg + 1):
            a[k + i] -= q * g[i]
    if any(a):
        raise ValueError("inexact polynomial division")
    den = math.lcm(*(c.denominator for c in quot))
    ints = [int(c * den) for c in quot]
    return int_primitive(ints)


def squarefree_decomposition(cs: Sequence[int]) -> list[tuple[list[int], int]]:
    """Distinct-root factors with multiplicities, up to constants.

    Returns [(g, k), ...] with the g pairwise coprime and squarefree and
    f = const * prod g**k.  Repeated-gcd (Musser) scheme; constants are
    irrelevant because only roots and multiplicities are consumed.
    """
    f = int_primitive(list(cs))
    if len(f) - 1 <= 0:
        return []
    out: list[tuple[list[int], int]] = []
    c = int_gcd(f, int_derivative(f))
    w = int_exact_div(f, c)
    k = 1
    while len(w) - 1 > 0:
        y = int_gcd(w, c)
        z = int_exact_div(w, y)
        if len(z) - 1 > 0:
            out.append((_positive_lc(z), k))
        w = y
        c = int_exact_div(c, y)
        k += 1
    return out


def squarefree_part(f: RatPoly) -> RatPoly:
    """f / gcd(f, f'), normalized integer-primitive with positive lead."""
    if f.is_zero:
        raise ValueError("zero polynomial has no squarefree part")
    if f.degree == 0:
        return RatPoly.constant(1)
    cs = to_int_coeffs(f)
    g = int_gcd(cs, int_derivative(cs))
    part = int_exact_div(cs, g)
    return from_int_coeffs(_positive_lc(part))


def poly_gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Primitive gcd over Q with positive leading coefficient."""
    if f.is_zero:
        return g
    if g.is_zero:
        return f
    return from_int_coeffs(int_gcd(to_int_coeffs(f), to_int_coeffs(g)))
