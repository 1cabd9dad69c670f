"""Limiting zero distribution and empirical comparisons.

The distribution on (0,1) is given in closed form (density, CDF,
quantile function).  `compare_distribution` isolates all zeros of a
sequence entry exactly, then measures the Kolmogorov-Smirnov distance
and per-quantile errors against the limit law.  The normalized
logarithmic derivative of the entries and its closed-form limit on the
cut plane are evaluated here as well.

Roots of high-degree entries crowd the right endpoint at double
exponential speed (distance to 1 around exp(-4n) for the top zero), so
empirical CDF values are computed from exact rational interval
endpoints with logarithms of big integers; converting roots to floats
first would collapse the entire right tail onto 1.0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .diffop import Family
from .eulerian import BranchCutError, PoleError, u_map
from .families import FamilySpec, SequenceCache, aux_family, iterate_P
from .ratpoly import RatPoly
from .rootlab import IsolationError, RootSet, isolate, refine_bracket

OMEGA_GRID: tuple[complex, ...] = (
    2 + 0j,
    3 + 0j,
    4 + 0j,
    9 + 0j,
    1.5 + 0.5j,
    1.5 - 0.5j,
    -1 + 2j,
)

DEFAULT_ROOT_WIDTH = Fraction(1, 10**10)
DEFAULT_CDF_GAP = 1e-6


# -- the limit law ---------------------------------------------------------------


def limit_density(x: float) -> float:
    """Density 2 / (sqrt(x)(1-x)(log((1-sqrt(x))/(1+sqrt(x)))^2 + pi^2)).

    Zero outside (0,1); the endpoints themselves are rejected (the
    density has integrable singularities there).
    """
    if x in (0.0, 1.0):
        raise ValueError("density is singular at 0 and 1")
    if not 0.0 < x < 1.0:
        return 0.0
    s = math.sqrt(x)
    lg = math.log((1 - s) / (1 + s))
    return 2.0 / (s * (1 - x) * (lg * lg + math.pi * math.pi))


def limit_cdf(x: float) -> float:
    """CDF (2/pi) arctan((1/pi) log((1+sqrt(x))/(1-sqrt(x)))) on (0,1)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    # log((1+s)/(1-s)) = 2 artanh(s)
    return (2 / math.pi) * math.atan(2 * math.atanh(math.sqrt(x)) / math.pi)


def limit_quantile(t: float) -> float:
    """Inverse CDF tanh((pi/2) tan(pi t / 2))**2 for t in (0,1)."""
    if t in (0.0, 1.0):
        raise ValueError("quantile is defined on the open interval (0,1)")
    if not 0.0 < t < 1.0:
        raise ValueError("t must lie in (0,1)")
    return math.tanh(math.pi / 2 * math.tan(math.pi * t / 2)) ** 2


def cdf_at_rational(x: Fraction) -> float:
    """CDF at an exact rational, stable arbitrarily close to the endpoints.

    Uses log((1+s)/(1-s)) = 2 log(1+s) - log(1-x), with log(1-x) taken
    on exact big integers, so x = 1 - 2**(-1000) still lands correctly.
    """
    x = Fraction(x)
    if x <= 0:
        return 0.0
    if x >= 1:
        return 1.0
    one_minus = 1 - x
    log1mx = math.log(one_minus.numerator) - math.log(one_minus.denominator)
    big_l = 2 * math.log1p(math.sqrt(float(x))) - log1mx
    return (2 / math.pi) * math.atan(big_l / math.pi)


# -- root extraction tuned for the right-endpoint clustering ------------------------


def quantile_split_points(n: int, refine: int = 1) -> list[Fraction]:
    """Proposed split points between consecutive zeros of a degree-n entry.

    Derived from the quantile law at mid-quantiles; near 1 the points
    are generated in exponent form 1 - 2**-e since the float lattice
    cannot represent them.  These are hints only; every use is verified
    by exact sign evaluations.
    """
    pts = {Fraction(0), Fraction(1)}
    steps = 2 * n * refine
    for j in range(1, steps):
        if j % (2 * refine) == 0:
            continue  # skip the predicted root positions themselves
        t = j / steps
        x = limit_quantile(t)
        if x < 0.999:
            fr = Fraction(x)
            if 0 < fr < 1:
                pts.add(fr)
        else:
            big_l = math.pi * math.tan(math.pi * t / 2)
            e = max(2, int(round(big_l / math.log(2))) - 2)
            pts.add(1 - Fraction(1, 1 << e))
    return sorted(pts)


def _floor_log2(fr: Fraction) -> int:
    num, den = fr.numerator, fr.denominator
    e = num.bit_length() - den.bit_length()
    if e >= 0:
        ge = (num >> e) >= den
    else:
        ge = (num << -e) >= den
    return e if ge else e - 1


def _cdf_midpoint(lo: Fraction, hi: Fraction) -> Fraction:
    """Split point for refinement; geometric in (1-x) near the right end.

    Arithmetic bisection stalls when the bracket hugs 1 (the CDF moves
    logarithmically there); bisecting the exponent of 1-x instead
    contracts the CDF gap geometrically.
    """
    a, b = 1 - hi, 1 - lo
    if b <= 0:
        return (lo + hi) / 2
    eb = _floor_log2(b)
    if a == 0:
        # upper endpoint is exactly 1: exponential search inward
        return 1 - Fraction(1, 1 << max(2, -2 * (eb - 1)))
    ea = _floor_log2(a)
    if ea - eb <= -2 and eb < -8:
        mid_e = (ea + eb) // 2
        m = 1 - Fraction(1, 1 << (-mid_e))
        if lo < m < hi:
            return m
    return (lo + hi) / 2


def sequence_roots(
    p: RatPoly,
    n: int,
    width: Fraction = DEFAULT_ROOT_WIDTH,
    cdf_gap: float = DEFAULT_CDF_GAP,
) -> list[Fraction]:
    """Exact-midpoint values of all real roots of a sequence entry.

    Intervals are refined until both the width target and a CDF-gap
    target hold, so each midpoint sits at the right place of the limit
    law even when the root is within exp(-hundreds) of 1.
    """
    rs: Optional[RootSet] = None
    for refine in (1, 2):
        hints = quantile_split_points(n, refine)
        try:
            rs = isolate(p, width=width, hints=hints)
        except IsolationError:
            rs = None
            continue
        if rs.total_multiplicity == p.degree:
            break
    if rs is None or rs.total_multiplicity != p.degree:
        rs = isolate(p, width=width)  # exact fallback, no hints

    def fstop(a: Fraction, b: Fraction) -> bool:
        return cdf_at_rational(b) - cdf_at_rational(a) <= cdf_gap

    roots: list[Fraction] = []
    for iv, fac in zip(rs.intervals, rs.factors):
        lo, hi = iv.lo, iv.hi
        if not iv.is_point:
            lo, hi = refine_bracket(
                fac, lo, hi, width=width, stop=fstop, midpoint=_cdf_midpoint
            )
        roots.extend([(lo + hi) / 2] * iv.mult)
    roots.sort()
    return roots


# -- empirical comparison -------------------------------------------------------------


@dataclass(frozen=True)
class QuantileEntry:
    k: int
    x_kn: float
    predicted: float
    abs_err: float


@dataclass(frozen=True)
class SampleEntry:
    z: complex
    s_n: complex
    s_limit: complex
    abs_err: float


@dataclass(frozen=True)
class DistReport:
    """Empirical-vs-limit comparison for one sequence entry."""

    n: int
    family: Family
    ks: float
    quantile_errors: tuple[QuantileEntry, ...]
    s_samples: tuple[SampleEntry, ...]
    real_roots: int
    max_f_gap: float  # max_k |F(x_{k,n}) - k/n|, from exact root intervals

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "family": self.family.value,
            "ks": self.ks,
            "real_roots": self.real_roots,
            "max_f_gap": self.max_f_gap,
            "quantile_errors": [
                {
                    "k": q.k,
                    "x_kn": q.x_kn,
                    "predicted": q.predicted,
                    "abs_err": q.abs_err,
                }
                for q in self.quantile_errors
            ],
            "s_samples": [
                {
                    "z": [s.z.real, s.z.imag],
                    "s_n": [s.s_n.real, s.s_n.imag],
                    "s_limit": [s.s_limit.real, s.s_limit.imag],
                    "abs_err": s.abs_err,
                }
                for s in self.s_samples
            ],
        }


def compare_distribution(
    spec: FamilySpec,
    n: int,
    width: Fraction = DEFAULT_ROOT_WIDTH,
    grid: Sequence[complex] = OMEGA_GRID,
) -> DistReport:
    """KS distance, quantile errors, and log-derivative samples for entry n."""
    if spec.c == 0:
        raise ValueError("c must be nonzero")
    cache = iterate_P(spec, n)
    p = cache.entry(n)
    roots = sequence_roots(p, n, width=width)
    m = len(roots)

    ks = 0.0
    max_f_gap = 0.0
    quantiles = []
    for k, r in enumerate(roots, start=1):
        fk = cdf_at_rational(r)
        ks = max(ks, abs(k / m - fk), abs((k - 1) / m - fk))
        max_f_gap = max(max_f_gap, abs(fk - k / m))
        predicted = limit_quantile(k / m) if k < m else 1.0
        xf = float(r)
        quantiles.append(QuantileEntry(k, xf, predicted, abs(xf - predicted)))

    samples = []
    for z in grid:
        sn = s_n_eval(spec, n, z, cache=cache)
        sl = s_limit(z)
        samples.append(SampleEntry(z, sn, sl, abs(sn - sl)))

    return DistReport(
        n=n,
        family=spec.family,
        ks=ks,
        quantile_errors=tuple(quantiles),
        s_samples=tuple(samples),
        real_roots=m,
        max_f_gap=max_f_gap,
    )


# -- normalized logarithmic derivative --------------------------------------------------


def _normalized_eval_pair(p: RatPoly, z: complex) -> tuple[complex, complex]:
    """(p(z), p'(z)) divided by the largest coefficient, float-safe."""
    scale = max(abs(c) for c in p.coeffs)
    q = p * (1 / scale)
    return q.eval_complex(z), q.derivative().eval_complex(z)


def s_n_eval(
    spec: FamilySpec, n: int, z: complex, cache: Optional[SequenceCache] = None
) -> complex:
    """(1/n) P_n'(z)/P_n(z), exact coefficients then complex Horner."""
    z = complex(z)
    if z.imag == 0 and z.real <= 1:
        raise BranchCutError(f"{z} lies on the cut (-inf, 1]")
    if cache is None or len(cache) < n:
        cache = iterate_P(spec, n)
    p = cache.entry(n)
    val, der = _normalized_eval_pair(p, z)
    if val == 0:
        raise PoleError(f"{z} is a root of entry {n}")
    return der / val / n


def s_limit(z: complex) -> complex:
    """Limit 1/(sqrt(z)(1+sqrt(z))) + (u + (1-u)/log u)/(sqrt(z)(1-sqrt(z)))."""
    z = complex(z)
    u = u_map(z)
    s = cmath.sqrt(z)
    lg = cmath.log(u)
    return 1 / (s * (1 + s)) + (u + (1 - u) / lg) / (s * (1 - s))


def decomposition_alpha_beta(spec: FamilySpec, n: int) -> tuple[Fraction, Fraction]:
    """Constants (alpha_n, beta) of the log-derivative split for entry n."""
    if spec.family is Family.XI:
        alpha = Fraction(4 * n * (2 * n + 1), 3) * spec.c
        beta = spec.d - Fraction(5, 6) * spec.c
    else:
        num = ((1 << (2 * n + 3)) - 1) * (2 * n + 1) * (2 * n + 2)
        den = 12 * ((1 << (2 * n + 1)) - 1)
        alpha = Fraction(num, den) * spec.c
        beta = spec.d - Fraction(2, 3) * spec.c
    return alpha, beta


def log_derivative_split(spec: FamilySpec, n: int, z: complex) -> complex:
    """Right-hand side of the log-derivative decomposition at z.

    (1/n) aux_n'/aux_n + (1/n) alpha_n R_n' / (alpha_n R_n + beta) with
    R_n the consecutive-auxiliary ratio; must agree with s_n_eval
    wherever both are finite.
    """
    z = complex(z)
    aux = aux_family(spec.family, n + 1)
    pn, pn1 = aux.entry(n), aux.entry(n + 1)
    vn, dn = _normalized_eval_pair(pn, z)
    # evaluate the pair with one common scale so the ratio R stays exact
    scale = max(abs(c) for c in pn.coeffs)
    q1 = pn1 * (1 / scale)
    vn1, dn1 = q1.eval_complex(z), q1.derivative().eval_complex(z)
    if vn == 0:
        raise PoleError(f"{z} is a root of auxiliary entry {n}")
    alpha, beta = decomposition_alpha_beta(spec, n)
    r = vn1 / vn
    r_prime = (dn1 * vn - vn1 * dn) / (vn * vn)
    denom = complex(alpha) * r + complex(beta)
    if denom == 0:
        raise PoleError("decomposition denominator vanished")
    return dn / vn / n + complex(alpha) * r_prime / denom / n


def correction_term(spec: FamilySpec, n: int, z: complex) -> complex:
    """(1/n) alpha_n R_n'/(alpha_n R_n + beta); vanishes as n grows."""
    return log_derivative_split(spec, n, z) - _aux_log_derivative(spec, n, z)


def _aux_log_derivative(spec: FamilySpec, n: int, z: complex) -> complex:
    aux = aux_family(spec.family, n)
    vn, dn = _normalized_eval_pair(aux.entry(n), z)
    if vn == 0:
        raise PoleError(f"{z} is a root of auxiliary entry {n}")
    return dn / vn / n
