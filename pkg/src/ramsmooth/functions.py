"""Arithmetic functions as first-class objects.

An ArithmeticFunctionSpec bundles a function F with whatever is known
about it: direct values, its Eratosthenes transform F' (the Dirichlet
convolution F * mu), growth certificates |values(n)| <= C * n**eps for
tail bounds, or finite-support flags.  Catalog constructors cover the
built-in functions used throughout; file-backed and table-backed specs
cover user input.

The module also holds the machinery for functions "of range Q" (those
whose transform is supported in [1, Q], i.e. truncated divisor sums),
their expansion coefficients over Ramanujan sums, the smooth restriction
of a general F, and the smooth/sifted switch identity connecting the two
evaluation orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .arith import divisors, mobius, ramanujan_sum
from .smooth import SmoothContext

AUDIT_LIMIT = 10_000


class CertificateError(ValueError):
    """A growth certificate is missing or failed its sampling audit."""


@dataclass(frozen=True)
class GrowthCertificate:
    """Asserts |values(n)| <= bound * n**exponent, exponent in [0, 1).

    Trusted input: it is audited by sampling, not proven.
    """

    bound: Fraction
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))
        object.__setattr__(self, "exponent", Fraction(self.exponent))
        if self.bound <= 0:
            raise ValueError("certificate bound must be positive")
        if not 0 <= self.exponent < 1:
            raise ValueError("certificate exponent must lie in [0, 1)")

    def admits(self, n: int, value: Fraction) -> bool:
        """Exact check of |value| <= bound * n**exponent."""
        u, v = self.exponent.numerator, self.exponent.denominator
        return (abs(Fraction(value)) / self.bound) ** v <= Fraction(n) ** u


@dataclass(frozen=True)
class FiniteSupport:
    """Values vanish beyond the stated bound."""

    bound: int

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("support bound must be >= 1")


Certificate = GrowthCertificate | FiniteSupport


class ArithmeticFunctionSpec:
    """A function F given by direct values and/or its transform F'.

    Exactly those operations whose inputs are available will work;
    anything needing a certified infinite tail insists on an audited
    growth certificate for the relevant side.
    """

    def __init__(
        self,
        name: str,
        *,
        values: Optional[Callable[[int], Fraction]] = None,
        transform: Optional[Callable[[int], Fraction]] = None,
        value_window: Optional[int] = None,
        direct_certificate: Optional[Certificate] = None,
        transform_certificate: Optional[Certificate] = None,
        audit_limit: int = 2_000,
    ):
        if values is None and transform is None:
            raise ValueError("spec needs direct values or a transform")
        self.name = name
        self._values = values
        self._transform = transform
        self.value_window = value_window
        self.direct_certificate = direct_certificate
        self.transform_certificate = transform_certificate
        self._audit_limit = min(audit_limit, AUDIT_LIMIT)
        self._transform_memo: dict[int, Fraction] = {}
        self._value_memo: dict[int, Fraction] = {}
        self._audited = False
        # Set by catalog constructors whose F is a Ramanujan sum c_{q0};
        # enables exact Euler-product evaluation of smooth series in F.
        self.ramanujan_hint: Optional[int] = None

    def __repr__(self):
        return f"ArithmeticFunctionSpec({self.name!r})"

    # -- evaluation ------------------------------------------------------

    def evaluate(self, n: int) -> Fraction:
        """F(n); for transform-given specs this is the full divisor sum."""
        if n < 1:
            raise ValueError("evaluate needs n >= 1")
        if self._values is not None:
            if self.value_window is not None and n > self.value_window:
                raise IndexError(
                    f"{self.name}: n={n} beyond value window {self.value_window}")
            return Fraction(self._values(n))
        got = self._value_memo.get(n)
        if got is None:
            if isinstance(self.transform_certificate, FiniteSupport):
                D = self.transform_certificate.bound
                got = sum((self.transform_value(d) for d in divisors(n) if d <= D),
                          Fraction(0))
            else:
                got = sum((self.transform_value(d) for d in divisors(n)), Fraction(0))
            self._value_memo[n] = got
        return got

    def transform_value(self, d: int) -> Fraction:
        """F'(d), by closed form if given, else by Mobius inversion."""
        if d < 1:
            raise ValueError("transform_value needs d >= 1")
        if self._transform is not None:
            if isinstance(self.transform_certificate, FiniteSupport) and \
                    d > self.transform_certificate.bound:
                return Fraction(0)
            return Fraction(self._transform(d))
        got = self._transform_memo.get(d)
        if got is None:
            got = sum((self.evaluate(t) * mobius(d // t) for t in divisors(d)),
                      Fraction(0))
            self._transform_memo[d] = got
        return got

    @property
    def transform_support(self) -> Optional[int]:
        cert = self.transform_certificate
        return cert.bound if isinstance(cert, FiniteSupport) else None

    # -- certificate plumbing --------------------------------------------

    def require_transform_certificate(self) -> Certificate:
        cert = self.transform_certificate
        if cert is None:
            raise CertificateError(
                f"{self.name}: no growth certificate for the transform side")
        self.audit()
        return cert

    def require_direct_certificate(self) -> Certificate:
        cert = self.direct_certificate
        if cert is None:
            raise CertificateError(
                f"{self.name}: no growth certificate for the direct side")
        self.audit()
        return cert

    def audit(self) -> None:
        """Sample both sides against their claimed certificates.

        Runs once per spec; a violated claim aborts with the offending
        index rather than silently producing a wrong tail bound.
        """
        if self._audited:
            return
        limit = self._audit_limit
        if isinstance(self.direct_certificate, GrowthCertificate):
            top = min(limit, self.value_window or limit)
            for n in range(1, top + 1):
                v = self.evaluate(n)
                if not self.direct_certificate.admits(n, v):
                    raise CertificateError(
                        f"{self.name}: |F({n})| = {v} violates the claimed "
                        f"bound {self.direct_certificate.bound} * n^"
                        f"{self.direct_certificate.exponent}")
        if isinstance(self.direct_certificate, FiniteSupport):
            D = self.direct_certificate.bound
            top = min(limit + D, self.value_window or (limit + D))
            for n in range(D + 1, top + 1):
                if self.evaluate(n) != 0:
                    raise CertificateError(
                        f"{self.name}: claimed direct support <= {D} "
                        f"but F({n}) != 0")
        if isinstance(self.transform_certificate, GrowthCertificate):
            for d in range(1, limit + 1):
                v = self.transform_value(d)
                if not self.transform_certificate.admits(d, v):
                    raise CertificateError(
                        f"{self.name}: |F'({d})| = {v} violates the claimed "
                        f"bound {self.transform_certificate.bound} * d^"
                        f"{self.transform_certificate.exponent}")
        self._audited = True


# -- catalog -------------------------------------------------------------

def constant_one() -> ArithmeticFunctionSpec:
    """F identically 1; transform is the indicator of 1."""
    spec = ArithmeticFunctionSpec(
        "constant-one",
        values=lambda n: Fraction(1),
        transform=lambda d: Fraction(1 if d == 1 else 0),
        direct_certificate=GrowthCertificate(1, 0),
        transform_certificate=FiniteSupport(1),
    )
    # constant-one is the modulus-1 Ramanujan sum; exact Euler-product
    # evaluation of its smooth series reuses that fact.
    spec.ramanujan_hint = 1
    return spec


def point_mass(n0: int) -> ArithmeticFunctionSpec:
    """Indicator of the single point n0.

    The transform mu(d/n0) on multiples of n0 has infinite support, but
    stays bounded by 1.
    """
    if n0 < 1:
        raise ValueError("point mass needs n0 >= 1")
    return ArithmeticFunctionSpec(
        f"indicator:{n0}",
        values=lambda n: Fraction(1 if n == n0 else 0),
        transform=lambda d: Fraction(mobius(d // n0) if d % n0 == 0 else 0),
        direct_certificate=FiniteSupport(n0),
        transform_certificate=GrowthCertificate(1, 0),
    )


def ramanujan_modulus(q0: int) -> ArithmeticFunctionSpec:
    """n -> c_{q0}(n); transform d * mu(q0/d) supported on divisors of q0."""
    if q0 < 1:
        raise ValueError("ramanujan modulus needs q0 >= 1")
    spec = ArithmeticFunctionSpec(
        f"ramanujan:{q0}",
        values=lambda n: Fraction(ramanujan_sum(q0, n)),
        transform=lambda d: Fraction(d * mobius(q0 // d) if q0 % d == 0 else 0),
        direct_certificate=GrowthCertificate(q0, 0),
        transform_certificate=FiniteSupport(q0),
    )
    spec.ramanujan_hint = q0
    return spec


def mobius_spec() -> ArithmeticFunctionSpec:
    # mu * mu is 2**omega-sized, comfortably under 2 * d**(1/2) at desk scale.
    return ArithmeticFunctionSpec(
        "mu",
        values=lambda n: Fraction(mobius(n)),
        direct_certificate=GrowthCertificate(1, 0),
        transform_certificate=GrowthCertificate(2, Fraction(1, 2)),
    )


def mobius_squared_spec() -> ArithmeticFunctionSpec:
    return ArithmeticFunctionSpec(
        "mu-squared",
        values=lambda n: Fraction(mobius(n) ** 2),
        direct_certificate=GrowthCertificate(1, 0),
        transform_certificate=GrowthCertificate(1, 0),
    )


def totient_ratio_spec() -> ArithmeticFunctionSpec:
    """n -> phi(n)/n, whose transform is mu(d)/d."""
    from .arith import euler_phi

    return ArithmeticFunctionSpec(
        "phi-over-n",
        values=lambda n: Fraction(euler_phi(n), n),
        transform=lambda d: Fraction(mobius(d), d),
        direct_certificate=GrowthCertificate(1, 0),
        transform_certificate=GrowthCertificate(1, 0),
    )


CATALOG = {
    "constant-one": constant_one,
    "mu": mobius_spec,
    "mu-squared": mobius_squared_spec,
    "phi-over-n": totient_ratio_spec,
}


def catalog_spec(identifier: str) -> ArithmeticFunctionSpec:
    """Build a spec from a catalog id.

    Plain ids: constant-one, mu, mu-squared, phi-over-n.  Parametrized:
    indicator:<n0> and ramanujan:<q0>.
    """
    if identifier in CATALOG:
        return CATALOG[identifier]()
    if ":" in identifier:
        kind, _, arg = identifier.partition(":")
        if kind == "indicator":
            return point_mass(int(arg))
        if kind == "ramanujan":
            return ramanujan_modulus(int(arg))
    raise ValueError(f"unknown catalog function {identifier!r}")


# -- table / file backed specs ---------------------------------------------

def spec_from_table(name: str, mode: str, entries: dict[int, Fraction],
                    certificate: Optional[GrowthCertificate] = None,
                    ) -> ArithmeticFunctionSpec:
    """Spec from a finite table.

    mode "direct": the table is a window of F on [1, max index]; values
    beyond the window are unavailable.  mode "eratosthenes": the table is
    the complete transform (finite support at the max index), so F is
    defined everywhere and a direct-side certificate follows from the
    triangle inequality.
    """
    if not entries:
        raise ValueError("empty function table")
    top = max(entries)
    if min(entries) < 1:
        raise ValueError("table indices start at 1")
    filled = {n: Fraction(entries.get(n, 0)) for n in range(1, top + 1)}
    if mode == "direct":
        return ArithmeticFunctionSpec(
            name,
            values=lambda n: filled[n],
            value_window=top,
            direct_certificate=certificate,
        )
    if mode == "eratosthenes":
        mass = sum(abs(v) for v in filled.values())
        return ArithmeticFunctionSpec(
            name,
            transform=lambda d: filled.get(d, Fraction(0)),
            transform_certificate=FiniteSupport(top),
            direct_certificate=GrowthCertificate(max(mass, Fraction(1)), 0),
        )
    raise ValueError(f"unknown table mode {mode!r}")


def format_rational(x: Fraction) -> str:
    """Serialize as numerator/denominator in lowest terms, sign first."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_function_file(path) -> ArithmeticFunctionSpec:
    """Read the tab-separated exact-rational function-table format.

    Header: `#mode=direct|eratosthenes [#C=<rat>] [#eps=<rat>]`.
    Body: one `n<TAB>p/q` record per line.  Exact parsing; duplicate
    indices and malformed rationals are rejected.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    lines = [ln for ln in lines if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{path}: missing header line")
    mode = None
    cert_bound = None
    cert_eps = None
    for token in lines[0].split():
        if not token.startswith("#") or "=" not in token:
            raise ValueError(f"{path}: bad header token {token!r}")
        key, _, val = token[1:].partition("=")
        if key == "mode":
            mode = val
        elif key == "C":
            cert_bound = parse_rational(val)
        elif key == "eps":
            cert_eps = parse_rational(val)
        else:
            raise ValueError(f"{path}: unknown header key {key!r}")
    if mode not in ("direct", "eratosthenes"):
        raise ValueError(f"{path}: header must set #mode=direct|eratosthenes")
    entries: dict[int, Fraction] = {}
    for ln in lines[1:]:
        parts = ln.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}: expected `n<TAB>value`, got {ln!r}")
        n = int(parts[0])
        if n < 1:
            raise ValueError(f"{path}: index {n} out of range")
        if n in entries:
            raise ValueError(f"{path}: duplicate index {n}")
        entries[n] = parse_rational(parts[1])
    certificate = None
    if cert_bound is not None or cert_eps is not None:
        if cert_bound is None or cert_eps is None:
            raise ValueError(f"{path}: #C and #eps must be given together")
        certificate = GrowthCertificate(cert_bound, cert_eps)
    spec = spec_from_table(str(path), mode, entries, certificate)
    spec.audit()
    return spec


# -- smooth restriction and the switch identity ----------------------------

def smooth_restrict(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                    n: int) -> Fraction:
    """Divisor sum of F' restricted to Q-smooth divisors of n.

    Agrees with F(n) whenever n itself is smooth, and the transform of
    the restricted function is F' times the smooth indicator.
    """
    if n < 1:
        raise ValueError("smooth_restrict needs n >= 1")
    sm = ctx.smooth_part(n)
    return sum((spec.transform_value(d) for d in divisors(sm)), Fraction(0))


def mobius_switch_rhs(spec: ArithmeticFunctionSpec, ctx: SmoothContext,
                      a: int) -> Fraction:
    """Sum of F(t) over smooth t | a with a/t sifted.

    The unique smooth-sifted factorization makes this equal to
    smooth_restrict for every F and every a; computing both sides is the
    standard cross-check.
    """
    if a < 1:
        raise ValueError("mobius_switch_rhs needs a >= 1")
    total = Fraction(0)
    for t in divisors(ctx.smooth_part(a)):
        if ctx.is_sifted(a // t):
            total += spec.evaluate(t)
    return total


# -- functions of range Q ---------------------------------------------------

@dataclass(frozen=True)
class RangeQFunction:
    """A truncated divisor sum g(m) = sum_{d|m, d<=Q} g'(d).

    ghat(q) = sum over multiples d of q up to Q of g'(d)/d gives the exact
    finite expansion g(m) = sum_{q<=Q} ghat(q) c_q(m), materialized once
    at construction.
    """

    Q: int
    gprime: tuple[Fraction, ...]
    ghat: tuple[Fraction, ...]

    def transform_value(self, d: int) -> Fraction:
        if d < 1:
            raise ValueError("transform index must be >= 1")
        return self.gprime[d - 1] if d <= self.Q else Fraction(0)

    def coefficient(self, q: int) -> Fraction:
        """ghat(q); zero beyond the range."""
        if q < 1:
            raise ValueError("coefficient index must be >= 1")
        return self.ghat[q - 1] if q <= self.Q else Fraction(0)

    def __call__(self, m: int) -> Fraction:
        if m < 1:
            raise ValueError("range-Q functions are defined on n >= 1")
        return sum((self.gprime[d - 1] for d in range(1, min(self.Q, m) + 1)
                    if m % d == 0), Fraction(0))

    def period_table(self, period: int) -> list[Fraction]:
        """[g(1), ..., g(period)] by sieving g' over the window."""
        out = [Fraction(0)] * (period + 1)
        for d in range(1, self.Q + 1):
            gd = self.gprime[d - 1]
            if gd == 0:
                continue
            for m in range(d, period + 1, d):
                out[m] += gd
        return out[1:]


def build_range_q(Q: int, gprime) -> RangeQFunction:
    """RangeQFunction from transform values g'(1..Q).

    gprime may be a sequence of length Q or a mapping {d: value}.
    """
    if Q < 1:
        raise ValueError("range bound must be >= 1")
    if isinstance(gprime, dict):
        bad = [d for d in gprime if not 1 <= d <= Q]
        if bad:
            raise ValueError(f"transform indices {bad} outside [1, {Q}]")
        vals = [Fraction(gprime.get(d, 0)) for d in range(1, Q + 1)]
    else:
        vals = [Fraction(v) for v in gprime]
        if len(vals) != Q:
            raise ValueError("gprime must cover exactly [1, Q]")
    ghat = []
    for q in range(1, Q + 1):
        ghat.append(sum((vals[d - 1] / d for d in range(q, Q + 1, q)),
                        Fraction(0)))
    return RangeQFunction(Q, tuple(vals), tuple(ghat))


def range_q_constant_one() -> RangeQFunction:
    return build_range_q(1, [Fraction(1)])


def range_q_ramanujan(q0: int, Q: int | None = None) -> RangeQFunction:
    """c_{q0} as a range-Q function (its transform lives on divisors of q0)."""
    if q0 < 1:
        raise ValueError("modulus must be >= 1")
    Q = q0 if Q is None else Q
    if Q < q0:
        raise ValueError("range bound must cover the modulus")
    return build_range_q(Q, {d: d * mobius(q0 // d)
                             for d in divisors(q0)})


def finite_ramanujan_eval(g: RangeQFunction, m: int) -> Fraction:
    """Evaluate g through its finite expansion sum_q ghat(q) c_q(m).

    Exactly equals the truncated divisor sum for every m.
    """
    if m < 1:
        raise ValueError("finite_ramanujan_eval needs m >= 1")
    return sum((g.ghat[q - 1] * ramanujan_sum(q, m) for q in range(1, g.Q + 1)),
               Fraction(0))
