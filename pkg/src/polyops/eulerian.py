"""Eulerian polynomials of types A and B, and the ratio asymptotics.

The tables are built from the classical descent-statistic recurrences
and are cross-checked against a brute-force enumeration oracle.  They
feed two consumers: an exact closed-form evaluation of the auxiliary
polynomials at rational points, and the floating-point ratio of
consecutive auxiliary polynomials together with its n -> infinity limit
on the cut plane.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .diffop import Family
from .ratpoly import RatNum, RatPoly


class PoleError(ArithmeticError):
    """A denominator polynomial vanished at the evaluation point."""


class BranchCutError(ValueError):
    """The point lies on the excluded half-line (-inf, 1]."""


ORACLE_MAX = 8  # factorial blow-up beyond this


@dataclass(frozen=True)
class EulerianTable:
    """Rows 0..m_max of one Eulerian family; integer coefficients."""

    kind: str  # "A" or "B"
    polys: tuple[RatPoly, ...]

    def entry(self, m: int) -> RatPoly:
        return self.polys[m]

    def __len__(self) -> int:
        return len(self.polys)


@lru_cache(maxsize=None)
def _rows(kind: str, m_max: int) -> tuple[RatPoly, ...]:
    x = RatPoly.x()
    x1x = RatPoly((0, 1, -1))  # t(1-t)
    rows = [RatPoly.constant(1)]
    for m in range(m_max):
        p = rows[-1]
        if kind == "A":
            nxt = (1 + m * x) * p + x1x * p.derivative()
        else:
            nxt = (1 + (2 * m + 1) * x) * p + 2 * x1x * p.derivative()
        rows.append(nxt)
    return tuple(rows)


def build_table(kind: str, m_max: int) -> EulerianTable:
    """Rows 0..m_max via the descent-statistic recurrences.

    Type A: P_{m+1} = (1 + m t) P_m + t(1-t) P_m',  P_0 = 1.
    Type B: P_{m+1} = (1 + (2m+1) t) P_m + 2 t(1-t) P_m',  P_0 = 1.
    """
    if kind not in ("A", "B"):
        raise ValueError("kind must be 'A' or 'B'")
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    return EulerianTable(kind, _rows(kind, m_max))


def oracle_eulerian(kind: str, m: int) -> RatPoly:
    """Exhaustive descent enumeration; independent of the recurrences.

    Type A sums t**des over all permutations of {1..m}; type B over all
    sign choices as well, with a leading 0 prepended so a negative first
    entry counts as a descent.
    """
    if kind not in ("A", "B"):
        raise ValueError("kind must be 'A' or 'B'")
    if m > ORACLE_MAX:
        raise ValueError(f"oracle limited to m <= {ORACLE_MAX}")
    if m == 0:
        return RatPoly.constant(1)
    counts = [0] * (m + 1)
    if kind == "A":
        for perm in itertools.permutations(range(1, m + 1)):
            des = sum(perm[i] > perm[i + 1] for i in range(m - 1))
            counts[des] += 1
    else:
        perms = np.array(list(itertools.permutations(range(1, m + 1))), dtype=np.int64)
        zeros = np.zeros((perms.shape[0], 1), dtype=np.int64)
        acc = np.zeros(m + 1, dtype=np.int64)
        for mask in range(1 << m):
            signs = np.array(
                [-1 if (mask >> i) & 1 else 1 for i in range(m)], dtype=np.int64
            )
            aug = np.hstack([zeros, perms * signs])
            des = np.sum(aug[:, :-1] > aug[:, 1:], axis=1)
            acc += np.bincount(des, minlength=m + 1)
        counts = [int(v) for v in acc]
    return RatPoly(counts)


# -- exact closed form for the auxiliary polynomials ---------------------------


def closed_form_eval(family: Family, n: int, t) -> RatNum:
    """Exact value of auxiliary entry n at t**2, via the Eulerian closed form.

    With u = (t-1)/(t+1):

      XI:      (-1)^(n+1) / (2^(4n-1) (2n-1)!) * (1+t)^(2n-1)/t * B_{2n-1}(u)
      LAMBDA:  (-1)^(n+1) / ((2^(2n+1)-1) (2n)!) * (1+t)^(2n-1)/t * A_{2n}(u)
    """
    if n < 1:
        raise ValueError("n must be positive")
    t = Fraction(t)
    if t == 0:
        raise ValueError("t = 0 is a pole of the closed form")
    if t == -1:
        raise ValueError("t = -1 is excluded (u undefined)")
    u = (t - 1) / (t + 1)
    sign = 1 if (n + 1) % 2 == 0 else -1
    if family is Family.XI:
        idx = 2 * n - 1
        table = build_table("B", idx)
        pref = Fraction(sign, (1 << (4 * n - 1)) * math.factorial(2 * n - 1))
    else:
        idx = 2 * n
        table = build_table("A", idx)
        pref = Fraction(sign, ((1 << (2 * n + 1)) - 1) * math.factorial(2 * n))
    return pref * (1 + t) ** (2 * n - 1) / t * table.entry(idx).eval_rational(u)


# -- complex ratio asymptotics ---------------------------------------------------


def u_map(z: complex) -> complex:
    """(sqrt(z)-1)/(sqrt(z)+1) with the Re(sqrt) > 0 branch; |u| < 1."""
    z = complex(z)
    if z.imag == 0 and z.real <= 1:
        raise BranchCutError(f"{z} lies on the cut (-inf, 1]")
    s = cmath.sqrt(z)  # principal branch has Re >= 0; > 0 off the cut
    return (s - 1) / (s + 1)


def ratio_R(family: Family, n: int, z: complex) -> complex:
    """Ratio of auxiliary entries n+1 and n via the Eulerian quotient form.

    Agrees with the direct polynomial quotient to floating accuracy.
    """
    if n < 1:
        raise ValueError("n must be positive")
    z = complex(z)
    u = u_map(z)
    s = cmath.sqrt(z)
    if family is Family.XI:
        table = build_table("B", 2 * n + 1)
        den = table.entry(2 * n - 1).eval_complex(u)
        if den == 0:
            raise PoleError("denominator Eulerian value vanished")
        num = table.entry(2 * n + 1).eval_complex(u)
        return -((1 + s) ** 2) / (16 * (2 * n) * (2 * n + 1)) * num / den
    table = build_table("A", 2 * n + 2)
    den = table.entry(2 * n).eval_complex(u)
    if den == 0:
        raise PoleError("denominator Eulerian value vanished")
    num = table.entry(2 * n + 2).eval_complex(u)
    factor = ((1 << (2 * n + 1)) - 1) / (
        ((1 << (2 * n + 3)) - 1) * (2 * n + 1) * (2 * n + 2)
    )
    return -factor * (1 + s) ** 2 * num / den


def limit_R(z: complex) -> complex:
    """Family-independent limit -1/(log u(z))**2 of the consecutive ratios."""
    u = u_map(z)
    lg = cmath.log(u)
    return -1 / (lg * lg)
