"""Smooth and sifted integers: enumeration, counting, Euler products,
and certified Rankin tail bounds for series restricted to smooth numbers.

A number is Q-smooth when every prime factor is <= Q, Q-sifted when it is
coprime to every prime <= Q.  The two sets intersect only at 1 and every
positive integer splits uniquely into a smooth times a sifted part.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .arith import mobius, primes_up_to
from .dyadic import pow_upper


@dataclass(frozen=True)
class SmoothContext:
    """A smoothness bound Q >= 2 with its primes and exact Euler products.

    totient_product = prod_{p<=Q} (1 - 1/p); smooth_harmonic is its exact
    reciprocal, the value of sum over Q-smooth t of 1/t.
    """

    Q: int
    primes: tuple[int, ...] = field(init=False)
    primorial: int = field(init=False)
    totient_product: Fraction = field(init=False)
    smooth_harmonic: Fraction = field(init=False)

    def __post_init__(self):
        if self.Q < 2:
            raise ValueError("smoothness bound must be >= 2")
        ps = tuple(primes_up_to(self.Q))
        prod = 1
        tp = Fraction(1)
        for p in ps:
            prod *= p
            tp *= Fraction(p - 1, p)
        object.__setattr__(self, "primes", ps)
        object.__setattr__(self, "primorial", prod)
        object.__setattr__(self, "totient_product", tp)
        object.__setattr__(self, "smooth_harmonic", 1 / tp)

    @property
    def prime_count(self) -> int:
        return len(self.primes)

    def is_smooth(self, n: int) -> bool:
        """True iff n = 1 or every prime factor of n is <= Q."""
        if n < 1:
            raise ValueError("is_smooth needs n >= 1")
        for p in self.primes:
            while n % p == 0:
                n //= p
        return n == 1

    def is_sifted(self, n: int) -> bool:
        """True iff n is coprime to every prime <= Q."""
        if n < 1:
            raise ValueError("is_sifted needs n >= 1")
        return gcd(n, self.primorial) == 1

    def smooth_part(self, n: int) -> int:
        """The largest Q-smooth divisor of n."""
        if n < 1:
            raise ValueError("smooth_part needs n >= 1")
        out = 1
        for p in self.primes:
            while n % p == 0:
                n //= p
                out *= p
        return out


def smooth_up_to(ctx: SmoothContext, X: int) -> list[int]:
    """All Q-smooth integers in [1, X], ascending.

    Builds the set one prime at a time by multiplying in prime powers, so
    the cost is proportional to the output, never to X.
    """
    if X < 1:
        raise ValueError("smooth_up_to needs X >= 1")
    vals = [1]
    for p in ctx.primes:
        if p > X:
            break
        grown = []
        for v in vals:
            w = v
            while w <= X:
                grown.append(w)
                w *= p
        grown.sort()
        vals = grown
    return vals


def sifted_count(ctx: SmoothContext, X: int) -> tuple[int, Fraction]:
    """(exact count of Q-sifted n <= X, main term totient_product * X).

    The count is the inclusion-exclusion sum over squarefree divisors of
    the primorial; the difference from the main term never exceeds
    2**prime_count in absolute value.
    """
    if X < 1:
        raise ValueError("sifted_count needs X >= 1")
    divs = [1]
    for p in ctx.primes:
        divs += [d * p for d in divs]
    count = sum(mobius(d) * (X // d) for d in divs)
    return count, ctx.totient_product * X


def smooth_power_series(ctx: SmoothContext, s: int) -> Fraction:
    """Exact value of sum over Q-smooth m of m**s, for integer s < 0.

    Equals the Euler product prod_{p<=Q} 1/(1 - p**s).  Nonnegative or
    non-integer exponents are rejected: the former diverge, the latter
    are not exactly representable (see euler_product_upper for bounds).
    """
    if isinstance(s, Fraction):
        if s.denominator != 1:
            raise ValueError("smooth_power_series needs an integer exponent")
        s = int(s)
    if s >= 0:
        raise ValueError("series diverges for s >= 0")
    out = Fraction(1)
    for p in ctx.primes:
        out /= 1 - Fraction(p) ** s
    return out


def euler_product_upper(ctx: SmoothContext, s: Fraction) -> Fraction:
    """Certified rational upper bound on prod_{p<=Q} (1 - p**s)**-1, s < 0.

    This bounds the full smooth series sum m**s.  For irrational p**s the
    factor uses a dyadic upper bound of p**s, which only enlarges the
    product.
    """
    s = Fraction(s)
    if s >= 0:
        raise ValueError("need s < 0 for a convergent product")
    out = Fraction(1)
    for p in ctx.primes:
        ub = pow_upper(p, s)
        if ub >= 1:
            raise ArithmeticError("power bound lost positivity; raise precision")
        out /= 1 - ub
    return out


@dataclass(frozen=True)
class TailParams:
    """Knobs for Rankin-style tail bounds of smooth series sum t**(eps-1).

    epsilon is the growth exponent of the summed function (0 allowed: the
    plain smooth harmonic series), delta the Rankin shift, truncation the
    cutoff X below which terms are summed exactly.
    """

    epsilon: Fraction
    delta: Fraction
    truncation: int

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        dlt = Fraction(self.delta)
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "delta", dlt)
        if not 0 <= eps < 1:
            raise ValueError("epsilon must lie in [0, 1)")
        if not 0 < dlt < 1 - eps:
            raise ValueError("delta must lie in (0, 1 - epsilon)")
        if self.truncation < 1:
            raise ValueError("truncation must be >= 1")


def rankin_tail_bound(ctx: SmoothContext, tp: TailParams) -> Fraction:
    """Certified B >= sum over Q-smooth t > X of t**(epsilon-1).

    Rankin's trick: each tail term t**(eps-1) <= (t/X)**delta * t**(eps-1),
    so the tail is at most X**(-delta) times the full smooth series with
    exponent eps+delta-1, an Euler product.  All irrational powers are
    replaced by certified rational upper bounds.
    """
    return smooth_tail_bound(ctx, tp.epsilon, tp.delta, tp.truncation)


def smooth_tail_bound(ctx: SmoothContext, epsilon: Fraction, delta: Fraction,
                      X: int) -> Fraction:
    if X < 1:
        raise ValueError("tail bound needs X >= 1")
    epsilon = Fraction(epsilon)
    delta = Fraction(delta)
    if not (0 <= epsilon and 0 < delta and epsilon + delta < 1):
        raise ValueError("need epsilon >= 0, delta > 0, epsilon + delta < 1")
    shift = pow_upper(Fraction(1, X), delta)
    return shift * euler_product_upper(ctx, epsilon + delta - 1)


_DELTA_GRID = tuple(Fraction(k, 16) for k in range(1, 16))


def best_tail_params(ctx: SmoothContext, epsilon: Fraction, X: int) -> TailParams:
    """TailParams with the grid delta in {1/16, ..., 15/16} minimizing the
    Rankin bound at truncation X."""
    epsilon = Fraction(epsilon)
    best = None
    best_bound = None
    for d in _DELTA_GRID:
        if epsilon + d >= 1:
            break
        b = smooth_tail_bound(ctx, epsilon, d, X)
        if best_bound is None or b < best_bound:
            best, best_bound = d, b
    if best is None:
        raise ValueError("no admissible delta: epsilon too close to 1")
    return TailParams(epsilon, best, X)


class SmoothSeries:
    """Sorted Q-smooth numbers <= X with exact prefix harmonic sums.

    harmonic_up_to(Y) returns sum over smooth t <= Y of 1/t exactly; the
    prefix sums share one denominator (the lcm of all enumerated smooth
    numbers) so construction stays in integer arithmetic.
    """

    def __init__(self, ctx: SmoothContext, X: int):
        self.ctx = ctx
        self.X = X
        self.values = smooth_up_to(ctx, X)
        denom = 1
        for p in ctx.primes:
            pk = p
            while pk * p <= X:
                pk *= p
            denom *= pk
        self._denom = denom
        acc = 0
        prefix = []
        for t in self.values:
            acc += denom // t
            prefix.append(acc)
        self._prefix = prefix

    def __len__(self) -> int:
        return len(self.values)

    @property
    def denominator(self) -> int:
        """Common denominator (lcm of the enumerated smooth numbers)."""
        return self._denom

    def harmonic_up_to(self, Y) -> Fraction:
        """Exact sum of 1/t over smooth t <= min(Y, X)."""
        if Y < 1:
            return Fraction(0)
        i = bisect.bisect_right(self.values, Y)
        if i == 0:
            return Fraction(0)
        return Fraction(self._prefix[i - 1], self._denom)

    def count_up_to(self, Y) -> int:
        return bisect.bisect_right(self.values, Y)
