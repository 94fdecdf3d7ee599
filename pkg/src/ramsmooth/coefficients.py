"""Expansion coefficients of smooth-restricted arithmetic functions.

For F with transform F' and a smoothness bound V, the two classical
coefficient recipes agree on the restriction F_(V):

* Wintner: sum over smooth multiples d of ell of F'(d)/d, and
* Carmichael: the normalized Cesaro mean of F_(V) against c_ell, which
  for smooth ell collapses to
  totient_product * (1/phi(ell)) * sum over smooth t of F(t) c_ell(t) / t.

Both vanish off the smooth support.  Everything here is an exact rational
or an interval with a certified radius; truncation policy grows the
cutoff until a radius target is met rather than ever loosening a bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .arith import euler_phi, omega, ramanujan_sum
from .dyadic import pow_upper
from .functions import ArithmeticFunctionSpec, CertificateError, FiniteSupport, \
    GrowthCertificate, smooth_restrict
from .intervals import BoundedValue, interval_sum
from .orthogonality import pair_series_exact
from .smooth import SmoothContext, TailParams, best_tail_params, \
    euler_product_upper, smooth_tail_bound, smooth_up_to


class PeriodicityError(ValueError):
    """Claimed period fails the two-period audit."""


def wintner_restricted(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                       ell: int, tp: Optional[TailParams] = None) -> BoundedValue:
    """Wintner coefficient of the V-smooth restriction at index ell.

    Exactly 0 off the smooth support, exact for finite-support transforms,
    otherwise a certified interval: partial sum over smooth d = ell*K up
    to the cutoff plus a Rankin tail radius scaled by the transform's
    growth certificate.
    """
    if ell < 1:
        raise ValueError("coefficient index must be >= 1")
    if not ctx.is_smooth(ell):
        return BoundedValue.exact(0)
    support = spec.transform_support
    if support is not None:
        if ell > support:
            return BoundedValue.exact(0)
        total = Fraction(0)
        for K in smooth_up_to(ctx, support // ell):
            total += spec.transform_value(ell * K) / (ell * K)
        return BoundedValue.exact(total)
    cert = spec.require_transform_certificate()
    if not isinstance(cert, GrowthCertificate):
        raise CertificateError(f"{spec.name}: unsupported certificate {cert!r}")
    if tp is None:
        tp = best_tail_params(ctx, cert.exponent, 10_000)
    X = tp.truncation
    partial = Fraction(0)
    inner = X // ell
    if inner >= 1:
        for K in smooth_up_to(ctx, inner):
            d = ell * K
            partial += spec.transform_value(d) / d
        tail = smooth_tail_bound(ctx, cert.exponent, tp.delta, inner)
    else:
        tail = euler_product_upper(ctx, cert.exponent - 1)
    radius = cert.bound * pow_upper(ell, cert.exponent - 1) * tail
    return BoundedValue(partial, radius)


def wintner_to_target(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                      ell: int, target_radius: Fraction = Fraction(1, 10 ** 6),
                      x_start: int = 1_000, x_cap: int = 10 ** 12,
                      ) -> BoundedValue:
    """Double the cutoff until the certified radius meets the target.

    Fails loudly at the cap; rigor is never traded for termination.
    """
    target_radius = Fraction(target_radius)
    X = x_start
    while True:
        got = wintner_restricted(spec, ctx, ell,
                                 best_tail_params_for(spec, ctx, X))
        if got.radius <= target_radius:
            return got
        if X >= x_cap:
            raise ArithmeticError(
                f"{spec.name}: wintner radius target {target_radius} "
                f"unreachable below cutoff cap {x_cap}")
        X = min(X * 2, x_cap)


def best_tail_params_for(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                         X: int) -> TailParams:
    """Grid-optimal TailParams using the spec's certified growth exponent."""
    cert = spec.transform_certificate
    if isinstance(cert, GrowthCertificate):
        return best_tail_params(ctx, cert.exponent, X)
    return best_tail_params(ctx, Fraction(0), X)


def carmichael_formula(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                       ell: int, tp: Optional[TailParams] = None) -> BoundedValue:
    """Product-formula Carmichael coefficient for smooth ell.

    totient_product * (1/phi(ell)) * sum over smooth t of F(t) c_ell(t)/t,
    evaluated exactly when F is a catalog Ramanujan sum (Euler products)
    or has finite direct support, else truncated with radius
    totient_product * ell * C * tail / phi(ell) from |c_ell(t)| <= ell.
    """
    if ell < 1:
        raise ValueError("coefficient index must be >= 1")
    if not ctx.is_smooth(ell):
        raise ValueError(
            f"the product formula applies to smooth indices only (ell={ell}); "
            "off-support coefficients vanish on the Wintner side")
    phi = euler_phi(ell)
    hint = getattr(spec, "ramanujan_hint", None)
    if hint is not None:
        series = pair_series_exact(ctx, hint, ell)
        return BoundedValue.exact(ctx.totient_product * series / phi)
    direct = spec.direct_certificate
    if isinstance(direct, FiniteSupport):
        spec.audit()
        total = Fraction(0)
        for t in smooth_up_to(ctx, direct.bound):
            total += spec.evaluate(t) * ramanujan_sum(ell, t) / t
        return BoundedValue.exact(ctx.totient_product * total / phi)
    cert = spec.require_direct_certificate()
    if tp is None:
        tp = best_tail_params(ctx, cert.exponent, 10_000)
    partial = Fraction(0)
    for t in smooth_up_to(ctx, tp.truncation):
        partial += spec.evaluate(t) * ramanujan_sum(ell, t) / t
    tail = smooth_tail_bound(ctx, cert.exponent, tp.delta, tp.truncation)
    center = ctx.totient_product * partial / phi
    radius = ctx.totient_product * ell * cert.bound * tail / phi
    return BoundedValue(center, radius)


def carmichael_empirical(spec: ArithmeticFunctionSpec, ell: int,
                         xs: Sequence[int]) -> list[tuple[int, Fraction]]:
    """Finite averages (1/phi(ell)) (1/x) sum_{n<=x} F(n) c_ell(n).

    Diagnostic output only: no convergence is claimed for general F.
    """
    if not xs:
        raise ValueError("need at least one averaging length")
    xs = sorted(set(int(x) for x in xs))
    if xs[0] < 1:
        raise ValueError("averaging lengths must be >= 1")
    phi = euler_phi(ell)
    out = []
    acc = Fraction(0)
    n = 0
    for x in xs:
        while n < x:
            n += 1
            acc += spec.evaluate(n) * ramanujan_sum(ell, n)
        out.append((x, acc / (phi * x)))
    return out


def carmichael_periodic_exact(values: Sequence[Fraction], period: int,
                              ell: int) -> Fraction:
    """Exact Carmichael coefficient of a periodic function.

    values must cover at least two claimed periods [F(1), ..., F(W)],
    W >= 2*period; the claim is audited before the Cesaro limit is
    collapsed to the mean over lcm(period, ell) consecutive arguments.
    """
    if period < 1:
        raise ValueError("period must be >= 1")
    if len(values) < 2 * period:
        raise PeriodicityError(
            f"need at least two periods of values ({2 * period}), got {len(values)}")
    vals = [Fraction(v) for v in values]
    for a in range(len(vals) - period):
        if vals[a] != vals[a + period]:
            raise PeriodicityError(
                f"claimed period {period} fails at argument {a + 1}: "
                f"{vals[a]} != {vals[a + period]}")

    def value_at(n: int) -> Fraction:
        return vals[(n - 1) % period]

    L = period * ell // gcd(period, ell)
    c_table = [ramanujan_sum(ell, r) for r in range(ell)]
    total = sum((value_at(a) * c_table[a % ell] for a in range(1, L + 1)),
                Fraction(0))
    return total / (euler_phi(ell) * L)


@dataclass(frozen=True)
class ExpansionPartial:
    """Partial expansion sum_{smooth ell <= L} Win_ell * c_ell(a) with the
    exact restriction value for residual reporting."""

    a: int
    cutoff: int
    partial: BoundedValue
    index_tail: Fraction
    reference: Fraction

    @property
    def residual_bound(self) -> Fraction:
        """Certified bound on |partial.center - reference|."""
        return self.partial.radius + self.index_tail

    @property
    def consistent(self) -> bool:
        return abs(self.partial.center - self.reference) <= self.residual_bound


def expansion_partial(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                      a: int, L: int,
                      tp: Optional[TailParams] = None) -> ExpansionPartial:
    """Pointwise expansion of the restriction over Ramanujan sums.

    Sums Win_ell * c_ell(a) over smooth ell <= L with interval
    propagation; index_tail certifies the mass of the skipped ell > L.
    Exact (all radii and tails zero) once L covers a finite transform
    support.
    """
    if a < 1:
        raise ValueError("expansion point must be >= 1")
    if L < 1:
        raise ValueError("coefficient cutoff must be >= 1")
    pieces = []
    for ell in smooth_up_to(ctx, L):
        win = wintner_restricted(spec, ctx, ell, tp)
        pieces.append(win.scale(ramanujan_sum(ell, a)))
    partial = interval_sum(pieces)
    support = spec.transform_support
    if support is not None:
        index_tail = Fraction(0) if L >= support else _index_tail(spec, ctx, a, L)
    else:
        index_tail = _index_tail(spec, ctx, a, L)
    reference = smooth_restrict(spec, ctx, a)
    return ExpansionPartial(a=a, cutoff=L, partial=partial,
                            index_tail=index_tail, reference=reference)


def _index_tail(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                a: int, L: int) -> Fraction:
    """Bound on sum over smooth ell > L of |Win_ell| * |c_ell(a)|.

    |c_ell(a)| <= a and |Win_ell| <= C * ell**(eps-1) * (full smooth
    series), so the tail is controlled by one Rankin bound at L.
    """
    support = spec.transform_support
    if support is not None:
        total = Fraction(0)
        for ell in smooth_up_to(ctx, support):
            if ell > L:
                win = wintner_restricted(spec, ctx, ell)
                total += abs(win.center) * min(a, ell)
        return total
    cert = spec.require_transform_certificate()
    tp = best_tail_params(ctx, cert.exponent, L)
    series_mass = euler_product_upper(ctx, cert.exponent - 1)
    return a * cert.bound * series_mass * smooth_tail_bound(
        ctx, cert.exponent, tp.delta, L)


@dataclass(frozen=True)
class CoefficientRecord:
    """Both coefficient computations at one index, plus diagnostics."""

    ell: int
    wintner: BoundedValue
    carmichael: BoundedValue
    method: str
    empirical: tuple[tuple[int, Fraction], ...] = field(default_factory=tuple)

    @property
    def consistent(self) -> bool:
        """The two intervals intersect (zero-width ones must coincide)."""
        return self.wintner.overlaps(self.carmichael)


def coefficient_record(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                       ell: int, tp: Optional[TailParams] = None,
                       empirical_xs: Sequence[int] = ()) -> CoefficientRecord:
    """Build the record; off the smooth support both sides are exactly 0."""
    if not ctx.is_smooth(ell):
        zero = BoundedValue.exact(0)
        return CoefficientRecord(ell, zero, zero, "off-smooth-support")
    win = wintner_restricted(spec, ctx, ell, tp)
    car = carmichael_formula(spec, ctx, ell, tp)
    method = "exact" if win.is_exact and car.is_exact else "truncated"
    empirical = tuple(carmichael_empirical(spec, ell, empirical_xs)) \
        if empirical_xs else ()
    return CoefficientRecord(ell, win, car, method, empirical)


def weighted_decay_check(records: Sequence[CoefficientRecord],
                         spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                         L: int) -> tuple[Fraction, Fraction]:
    """(partial, tail_bound) for sum over ell of 2**omega(ell) |coefficient|.

    partial uses the upper interval ends of all records with ell <= L;
    the tail majorizes the skipped smooth indices by
    2**prime_count * C * (Rankin tail at L) * (full smooth series), and is
    exactly 0 once L covers a finite transform support.  Finiteness of
    partial + tail is the decay guarantee that pins the expansion down
    uniquely.
    """
    partial = Fraction(0)
    for rec in records:
        if rec.ell <= L:
            partial += 2 ** omega(rec.ell) * rec.wintner.abs_upper
    support = spec.transform_support
    if support is not None:
        # coefficients vanish beyond a finite transform support, so the
        # skipped mass is a finite exact sum (empty once L covers it)
        tail = Fraction(0)
        for ell in smooth_up_to(ctx, support):
            if ell > L:
                win = wintner_restricted(spec, ctx, ell)
                tail += 2 ** omega(ell) * abs(win.center)
        return partial, tail
    cert = spec.require_transform_certificate()
    if not isinstance(cert, GrowthCertificate):
        raise CertificateError(f"{spec.name}: unsupported certificate {cert!r}")
    tp = best_tail_params(ctx, cert.exponent, L)
    tail = (2 ** ctx.prime_count) * cert.bound * \
        smooth_tail_bound(ctx, cert.exponent, tp.delta, L) * \
        euler_product_upper(ctx, cert.exponent - 1)
    return partial, tail


@dataclass(frozen=True)
class CandidateComparison:
    """Outcome of checking a claimed coefficient system against records."""

    flagged: tuple[int, ...]
    checked: tuple[int, ...]

    @property
    def refuted(self) -> bool:
        return bool(self.flagged)


def compare_candidate(candidate: dict[int, Fraction],
                      records: Sequence[CoefficientRecord],
                      ctx: SmoothContext) -> CandidateComparison:
    """Flag every index where the candidate leaves the record's interval.

    A nonempty flag set certifies the candidate is not the coefficient
    system of the same restriction; an empty one is consistency, never a
    proof.  Candidate values at non-smooth indices are compared against
    the exact zero.
    """
    by_ell = {rec.ell: rec for rec in records}
    flagged = []
    checked = []
    for ell in sorted(candidate):
        value = Fraction(candidate[ell])
        rec = by_ell.get(ell)
        if rec is None:
            if ctx.is_smooth(ell):
                continue
            rec_interval = BoundedValue.exact(0)
        else:
            rec_interval = rec.wintner
        checked.append(ell)
        if rec_interval.excludes(value):
            flagged.append(ell)
    return CandidateComparison(tuple(flagged), tuple(checked))
