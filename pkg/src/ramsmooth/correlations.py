"""Shifted convolution sums C(N, a) = sum_{n<=N} f(n) g(n+a) as a function
of the shift a, for g of range Q <= N.

With f and g shift-free by construction (fairness is a property of the
formula shape, so it is enforced structurally), C(N, .) is periodic mod
lcm(2..Q) and decomposes exactly through the finite expansion of g.  The
module computes the correlation table over two periods, its transform in
the shift variable, the coefficient identities, the smooth-restricted
correlation, and both the certified (smooth side) and empirical
(full-series) Wintner sums of the transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .arith import divisors, euler_phi, mobius, ramanujan_sum, lcm_range
from .coefficients import carmichael_periodic_exact
from .functions import ArithmeticFunctionSpec, RangeQFunction
from .intervals import BoundedValue, interval_sum
from .smooth import SmoothContext, best_tail_params, smooth_tail_bound, \
    smooth_up_to

_FIXED_POINT_BITS = 48


class BasicHypothesisError(ValueError):
    """The range bound exceeds the correlation length."""


@dataclass(frozen=True)
class BasicHypothesisWitness:
    """Structural preconditions: g of range Q <= N, shift only in g's
    argument (guaranteed by the types: f and g carry no shift)."""

    range_ok: bool
    fair: bool

    @property
    def holds(self) -> bool:
        return self.range_ok and self.fair


def correlation(f_spec: ArithmeticFunctionSpec, g: RangeQFunction,
                N: int, a: int) -> Fraction:
    """Exact direct sum C(N, a) = sum_{n<=N} f(n) g(n+a)."""
    if a < 1:
        raise ValueError("shift must be >= 1")
    if g.Q > N:
        raise BasicHypothesisError(f"range {g.Q} exceeds length {N}")
    return sum((f_spec.evaluate(n) * g(n + a) for n in range(1, N + 1)),
               Fraction(0))


class CorrelationTable:
    """Exact values of C(N, .) over two periods, with its shift transform.

    The table is built once (single-threaded); everything afterwards is a
    pure read, so verification passes can fan out freely.
    """

    def __init__(self, f_spec: ArithmeticFunctionSpec, g: RangeQFunction,
                 N: int):
        if g.Q > N:
            raise BasicHypothesisError(f"range {g.Q} exceeds length {N}")
        self.f_spec = f_spec
        self.g = g
        self.N = N
        self.period = lcm_range(g.Q)
        self.witness = BasicHypothesisWitness(range_ok=g.Q <= N, fair=True)
        self._f_values = [f_spec.evaluate(n) for n in range(1, N + 1)]
        self._g_period = g.period_table(self.period)
        self.values = self._build_window(2 * self.period)
        self._audit_period()
        self._transform_memo: dict[int, Fraction] = {}
        self._inner_sums: dict[int, list[Fraction]] = {}
        self._window_memo: list[Fraction] | None = None

    # -- construction ------------------------------------------------------

    def _build_window(self, width: int) -> list[Fraction]:
        f_den = 1
        for v in self._f_values:
            f_den = f_den * v.denominator // gcd(f_den, v.denominator)
        g_den = 1
        for v in self._g_period:
            g_den = g_den * v.denominator // gcd(g_den, v.denominator)
        f_num = [int(v * f_den) for v in self._f_values]
        g_num = [int(v * g_den) for v in self._g_period]
        P = self.period
        # C(a) over a in [1, width] via integer dot products; int64 only
        # when magnitudes provably fit, else arbitrary precision.
        max_prod = max((abs(x) for x in f_num), default=0) * \
            max((abs(x) for x in g_num), default=0) * max(self.N, 1)
        if max_prod < 2 ** 62:
            g_arr = np.array(g_num, dtype=np.int64)
            acc = np.zeros(width, dtype=np.int64)
            idx0 = np.arange(1, width + 1)
            for n in range(1, self.N + 1):
                fn = f_num[n - 1]
                if fn == 0:
                    continue
                acc += fn * g_arr[(n + idx0 - 1) % P]
            nums = acc.tolist()
        else:
            nums = []
            for a in range(1, width + 1):
                nums.append(sum(f_num[n - 1] * g_num[(n + a - 1) % P]
                                for n in range(1, self.N + 1)))
        den = f_den * g_den
        return [Fraction(v, den) for v in nums]

    def _audit_period(self) -> None:
        P = self.period
        for a in range(P):
            if self.values[a] != self.values[a + P]:
                raise ArithmeticError(
                    f"correlation failed its period audit at shift {a + 1}")

    # -- exact accessors -----------------------------------------------------

    def value(self, a: int) -> Fraction:
        """C(N, a) for any a >= 1, via periodicity."""
        if a < 1:
            raise ValueError("shift must be >= 1")
        return self.values[(a - 1) % self.period]

    def max_abs(self) -> Fraction:
        return max(abs(v) for v in self.values[:self.period])

    def transform_value(self, d: int) -> Fraction:
        """Shift-variable transform C'(N, d) = sum_{t|d} C(N, t) mu(d/t)."""
        if d < 1:
            raise ValueError("transform index must be >= 1")
        got = self._transform_memo.get(d)
        if got is None:
            got = sum((self.value(t) * mobius(d // t) for t in divisors(d)),
                      Fraction(0))
            self._transform_memo[d] = got
        return got

    def transform_window(self, L: int) -> list[Fraction]:
        """[C'(1), ..., C'(L)] by sieving; cheaper than per-d divisors."""
        if self._window_memo is not None and len(self._window_memo) >= L:
            return self._window_memo[:L]
        mu = [0] * (L + 1)
        for m in range(1, L + 1):
            mu[m] = mobius(m)
        out = [Fraction(0)] * (L + 1)
        for t in range(1, L + 1):
            ct = self.value(t)
            if ct == 0:
                continue
            for d in range(t, L + 1, t):
                m = mu[d // t]
                if m:
                    out[d] += m * ct
        self._window_memo = out[1:]
        return self._window_memo

    # -- coefficient identities ---------------------------------------------

    def inner_sum(self, q: int, a: int) -> Fraction:
        """sum_{n<=N} f(n) c_q(n+a); periodic in a mod q."""
        table = self._inner_sums.get(q)
        if table is None:
            table = []
            for r in range(q):
                table.append(sum(
                    (self._f_values[n - 1] * ramanujan_sum(q, n + r)
                     for n in range(1, self.N + 1)), Fraction(0)))
            self._inner_sums[q] = table
        return table[a % q]

    def decomposition_rhs(self, a: int) -> Fraction:
        """sum_{q<=Q} ghat(q) * sum_{n<=N} f(n) c_q(n+a).

        Must equal value(a) exactly for every shift: this is the finite
        expansion of g pushed through the correlation.
        """
        if a < 1:
            raise ValueError("shift must be >= 1")
        return sum((self.g.ghat[q - 1] * self.inner_sum(q, a)
                    for q in range(1, self.g.Q + 1)), Fraction(0))

    def coefficient(self, ell: int) -> Fraction:
        """(ghat(ell)/phi(ell)) * sum_{n<=N} f(n) c_ell(n): the shared
        Carmichael-and-Wintner coefficient of C(N, .); 0 beyond the range."""
        if ell < 1:
            raise ValueError("coefficient index must be >= 1")
        gh = self.g.coefficient(ell)
        if gh == 0:
            return Fraction(0)
        return gh * self.inner_sum(ell, 0) / euler_phi(ell)

    def carmichael_mean(self, ell: int) -> Fraction:
        """Exact periodic Carmichael coefficient of the table values."""
        return carmichael_periodic_exact(self.values, self.period, ell)

    def transform_side_coefficient(self, ell: int) -> Fraction:
        """Exact transform-side coefficient through C'.

        Periodicity closes the transform-side sum at L = lcm(period, ell):
        (1/(phi(ell) L)) sum_{d<=L} C'(d) sum_{k<=L/d} c_ell(k d)
        reproduces the Carmichael mean identically, because every divisor
        of a <= L already lies in [1, L].  This is the certified (radius
        zero) reading of the transform-side sum; the literal series
        ordered by d converges only conditionally (see
        full_series_estimate).
        """
        if ell < 1:
            raise ValueError("coefficient index must be >= 1")
        L = lcm(self.period, ell)
        cprime = self.transform_window(L)
        c_ell = [ramanujan_sum(ell, r) for r in range(ell)]
        cycle_sum = {}
        for g in divisors(ell):
            cycle_sum[g] = sum(c_ell[(i * g) % ell] for i in range(1, ell // g + 1))
        total = Fraction(0)
        for d in range(1, L + 1):
            cd = cprime[d - 1]
            if cd == 0:
                continue
            g = gcd(d, ell)
            cycle = ell // g
            K = L // d
            w = (K // cycle) * cycle_sum[g]
            for k in range(1, K % cycle + 1):
                w += c_ell[(k * d) % ell]
            total += cd * w
        return total / (euler_phi(ell) * L)

    # -- smooth restriction ---------------------------------------------------

    def smooth_restricted(self, ctx: SmoothContext, a: int) -> Fraction:
        """G(a) = sum over smooth divisors d of a of C'(N, d), exact."""
        if a < 1:
            raise ValueError("shift must be >= 1")
        return sum((self.transform_value(d)
                    for d in divisors(ctx.smooth_part(a))), Fraction(0))

    def smooth_restricted_switch(self, ctx: SmoothContext, a: int) -> Fraction:
        """Same value through the smooth/sifted switch:
        sum of C(N, t) over smooth t | a with a/t sifted."""
        if a < 1:
            raise ValueError("shift must be >= 1")
        total = Fraction(0)
        for t in divisors(ctx.smooth_part(a)):
            if ctx.is_sifted(a // t):
                total += self.value(t)
        return total

    def smooth_wintner(self, ctx: SmoothContext, ell: int, X: int,
                       transform_support: int | None = None) -> BoundedValue:
        """Certified sum over smooth multiples d of ell of C'(N, d)/d.

        Exactly 0 (term-free) when ell is not smooth.  The radius uses
        |C'(N, d)| <= 2**omega(d) * max|C| <= 2**prime_count * max|C| on
        smooth d, then a Rankin tail on the smooth harmonic series.

        transform_support is a caller-asserted bound beyond which C'
        vanishes; it is audited against every transform value this sum
        actually computes, and makes the result exact once X covers it.
        """
        if ell < 1:
            raise ValueError("coefficient index must be >= 1")
        if not ctx.is_smooth(ell):
            return BoundedValue.exact(0)
        partial = Fraction(0)
        inner = X // ell
        for K in smooth_up_to(ctx, max(inner, 1)):
            d = ell * K
            if d <= X:
                value = self.transform_value(d)
                if transform_support is not None and d > transform_support \
                        and value != 0:
                    raise ArithmeticError(
                        f"claimed transform support {transform_support} "
                        f"refuted: C'({d}) = {value}")
                partial += value / d
        if transform_support is not None and transform_support <= X:
            return BoundedValue.exact(partial)
        bound = (2 ** ctx.prime_count) * self.max_abs()
        if inner >= 1:
            tp = best_tail_params(ctx, Fraction(0), inner)
            tail = smooth_tail_bound(ctx, Fraction(0), tp.delta, inner)
        else:
            tail = ctx.smooth_harmonic
        return BoundedValue(partial, bound * tail / ell)

    # -- the conditionally convergent full series --------------------------------

    def full_series_estimate(self, ell: int, X: int,
                             window_start: int | None = None,
                             ) -> "SeriesEstimate":
        """Empirical estimate of sum over all multiples d of ell of C'(N,d)/d.

        The terms do not decay absolutely, so no rigorous tail radius
        exists; the series converges in the ordered sense only.  Partial
        sums are computed exactly in fixed-point integer arithmetic; the
        reported center is their mean over the window [window_start, X]
        of cutoffs and the radius the maximum in-window deviation plus
        the fixed-point slack.  The radius is an observed oscillation
        amplitude, not a certified bound; it is flagged accordingly.
        """
        if ell < 1:
            raise ValueError("coefficient index must be >= 1")
        if X < 4 * ell:
            raise ValueError("window too small for an estimate")
        window_start = X // 2 if window_start is None else window_start
        if not ell <= window_start < X:
            raise ValueError("need ell <= window_start < X")
        cprime, den = self._transform_batch(X)
        ds = np.arange(ell, X + 1, ell, dtype=np.int64)
        vals = cprime[ds]
        max_c = int(np.abs(vals).max()) if len(vals) else 1
        # Pick the largest fixed-point scale whose per-term products and
        # harmonic-sized cumulative sums provably fit in int64.
        bits = _FIXED_POINT_BITS
        # Cumulative |sum of terms| <= max_c * scale * H(X) with the
        # harmonic sum H(X) <= bit_length(X), so a few extra bits suffice.
        harmonic_bits = max(X.bit_length(), 2).bit_length() + 1
        while bits > 0 and (max_c << bits).bit_length() + harmonic_bits >= 62:
            bits -= 1
        if bits < 16:
            raise OverflowError(
                "transform values too large for a fixed-point estimate")
        scale = 1 << bits
        terms = (vals * scale) // ds
        partials = np.cumsum(terms)
        in_window = partials[ds >= window_start]
        count = len(in_window)
        if count == 0:
            raise ValueError("no cutoffs inside the window")
        # the window sum exceeds int64; fold exactly in Python integers
        total = int(in_window.astype(object).sum())
        mean = Fraction(total, count * scale * den)
        lo = Fraction(int(in_window.min()), scale * den)
        hi = Fraction(int(in_window.max()), scale * den)
        dev = max(hi - mean, mean - lo)
        # floor rounding loses < 1/scale per term; doubled so it covers
        # both the shifted mean and the shifted deviations
        slack = Fraction(2 * len(terms), scale * den)
        return SeriesEstimate(
            ell=ell, cutoff=X, window_start=window_start,
            value=BoundedValue(mean, dev + slack), term_count=len(terms))

    def _transform_batch(self, X: int) -> tuple[np.ndarray, int]:
        """(den * C'(1..X) as an int64 array, den): the correlation values
        are scaled to a common integer denominator so the sieve stays in
        integer arithmetic."""
        den = 1
        for v in self.values[:self.period]:
            den = den * v.denominator // gcd(den, v.denominator)
        scaled = [int(v * den) for v in self.values[:self.period]]
        bound = max((abs(s) for s in scaled), default=0)
        # |den * C'(d)| <= tau(d) * bound; tau(d) <= 1536 for d <= 4e6.
        if bound * 1536 >= 2 ** 62:
            raise OverflowError("correlation values too large for the batch sieve")
        period_vals = np.array(scaled, dtype=np.int64)
        idx = (np.arange(1, X + 1) - 1) % self.period
        ct = np.concatenate(([0], period_vals[idx]))
        mu = _mobius_array(X)
        out = np.zeros(X + 1, dtype=np.int64)
        for m in range(1, X + 1):
            mm = mu[m]
            if mm == 0:
                continue
            out[m::m] += mm * ct[1:X // m + 1]
        return out, den


@dataclass(frozen=True)
class SeriesEstimate:
    """Windowed partial-sum estimate of a conditionally convergent series.

    value.radius is empirical (observed oscillation), never certified."""

    ell: int
    cutoff: int
    window_start: int
    value: BoundedValue
    term_count: int
    certified: bool = False


def _mobius_array(X: int) -> np.ndarray:
    """mu(0..X) by a linear sieve."""
    mu = np.ones(X + 1, dtype=np.int64)
    mu[0] = 0
    primes: list[int] = []
    smallest = np.zeros(X + 1, dtype=np.int64)
    is_comp = np.zeros(X + 1, dtype=bool)
    for i in range(2, X + 1):
        if not is_comp[i]:
            primes.append(i)
            smallest[i] = i
            mu[i] = -1
        for p in primes:
            ip = p * i
            if ip > X or p > smallest[i]:
                break
            is_comp[ip] = True
            smallest[ip] = p
            mu[ip] = 0 if i % p == 0 else -mu[i]
    return mu


# -- identity records ---------------------------------------------------------


@dataclass(frozen=True)
class TailSplitRecord:
    """The coefficient identity split along the smooth support at one index.

    smooth_side + nonsmooth_side = formula; the smooth side carries a
    certified radius, the nonsmooth side only an empirical one (it is the
    conditionally convergent remainder).  For ell outside the smooth set
    the smooth side is exactly zero and the identity reduces to
    nonsmooth = formula.
    """

    ell: int
    smooth_side: BoundedValue
    formula: Fraction
    nonsmooth_estimate: SeriesEstimate | None

    @property
    def lhs(self) -> BoundedValue:
        return self.smooth_side

    @property
    def rhs(self) -> BoundedValue:
        formula = BoundedValue.exact(self.formula)
        if self.nonsmooth_estimate is None:
            return formula
        return formula - self.nonsmooth_estimate.value

    @property
    def consistent(self) -> bool:
        return self.lhs.overlaps(self.rhs)


def tail_split_identity(table: CorrelationTable, ctx: SmoothContext, ell: int,
                        X: int, estimate_cutoff: int | None = None,
                        ) -> TailSplitRecord:
    """Check coefficient = smooth Wintner part + nonsmooth remainder.

    The smooth part is certified at cutoff X.  The nonsmooth remainder is
    estimated as (full-series estimate) - (smooth part) when ell is
    smooth, or the full series itself when it is not (every multiple of a
    non-smooth ell is non-smooth).
    """
    smooth_side = table.smooth_wintner(ctx, ell, X)
    formula = table.coefficient(ell)
    estimate = None
    if estimate_cutoff is not None:
        full = table.full_series_estimate(ell, estimate_cutoff)
        if ctx.is_smooth(ell):
            estimate = SeriesEstimate(
                ell=ell, cutoff=full.cutoff, window_start=full.window_start,
                value=full.value - smooth_side, term_count=full.term_count)
        else:
            estimate = full
    return TailSplitRecord(ell=ell, smooth_side=smooth_side, formula=formula,
                           nonsmooth_estimate=estimate)


@dataclass(frozen=True)
class ExpansionTailTerm:
    """The subtracted correction carried by the smooth-restricted expansion
    at one smoothness level: sum over smooth ell <= L of
    (nonsmooth remainder at ell) * c_ell(a), with a certified radius and
    a certified bound on the skipped ell > L."""

    V: int
    a: int
    cutoff: int
    value: BoundedValue


def expansion_tail_term(table: CorrelationTable, ctx: SmoothContext, a: int,
                        L: int, X: int,
                        transform_support: int | None = None,
                        ) -> ExpansionTailTerm:
    """Certified evaluation of the correction term.

    Each per-ell remainder is formula - smooth Wintner part (an exact
    rational minus a certified interval), so the whole term inherits a
    certified radius; the ell > L mass is bounded by a Rankin tail.  For
    L at least the range bound Q the formula part vanishes in the tail.
    A caller-asserted (audited) finite transform support makes the term
    exact once L and X cover it.
    """
    if a < 1:
        raise ValueError("shift must be >= 1")
    if L < table.g.Q:
        raise ValueError("coefficient cutoff must cover the range bound")
    pieces = []
    for ell in smooth_up_to(ctx, L):
        remainder = BoundedValue.exact(table.coefficient(ell)) - \
            table.smooth_wintner(ctx, ell, X, transform_support)
        pieces.append(remainder.scale(ramanujan_sum(ell, a)))
    total = interval_sum(pieces)
    # ell > L: coefficient(ell) = 0 there, |smooth_wintner| <=
    # 2**pi(V) max|C| smooth_harmonic / ell, |c_ell(a)| <= a.
    if transform_support is not None and L >= transform_support:
        index_tail = Fraction(0)
    else:
        bound = (2 ** ctx.prime_count) * table.max_abs() * ctx.smooth_harmonic
        tp = best_tail_params(ctx, Fraction(0), L)
        index_tail = a * bound * smooth_tail_bound(ctx, Fraction(0), tp.delta, L)
    return ExpansionTailTerm(V=ctx.Q, a=a, cutoff=L,
                             value=total.widen(index_tail))
