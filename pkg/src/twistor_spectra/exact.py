"""Exact scalar arithmetic.

Three layers live here:

* ``Rational`` is an alias for :class:`fractions.Fraction`: arbitrary
  precision, always in lowest terms with a positive denominator, exact
  arithmetic, and a hard error on division by zero.
* :class:`Phase` is a formal power of sqrt(-1).  No floating complex numbers
  appear anywhere in the library; the imaginary unit is pure bookkeeping and
  even powers fold into the sign of the rational part.
* :class:`GammaQuotient` is a finite product ``prefactor * phase *
  prod Gamma(arg)**exp`` with rational arguments.  Two quotients whose
  arguments are congruent mod 1 class by class have an exactly computable
  rational ratio through the functional equation ``Gamma(x+1) = x*Gamma(x)``;
  :func:`ratio` performs that reduction without ever evaluating a gamma
  function numerically.

Arguments at non-positive integers are tracked as formal pole/zero flags.
A net uncancelled pole is an error; a net uncancelled zero reduces to the
exact value 0 (a finite quantity divided by a pole).  Everything is
immutable, so unrestricted concurrent use is safe.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]

__all__ = [
    "Rational",
    "rational",
    "format_rational",
    "Phase",
    "GammaQuotient",
    "ReducedValue",
    "ratio",
    "ratio_tagged",
    "reduce_exact",
    "evaluate_numeric",
    "pochhammer",
    "NonCommensurableError",
    "UncancelledPoleError",
    "GammaPoleError",
]


class NonCommensurableError(ValueError):
    """Gamma arguments do not match up mod 1 with balanced exponents."""


class UncancelledPoleError(ArithmeticError):
    """A formal pole or zero survived reduction where a finite value is required."""


class GammaPoleError(ArithmeticError):
    """Numeric evaluation requested at a gamma pole."""

    def __init__(self, argument: Fraction):
        self.argument = argument
        super().__init__(f"gamma pole at argument {argument}")


def rational(value: RationalLike) -> Fraction:
    """Parse a rational from an int, Fraction or a 'p/q' / 'k' string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value).strip())


def format_rational(x: Fraction) -> str:
    """Canonical 'p/q' string (plain 'p' when the denominator is 1)."""
    return str(Fraction(x))


@dataclass(frozen=True)
class Phase:
    """Formal power of sqrt(-1); multiplication adds exponents mod 4."""

    exponent: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", self.exponent % 4)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent + other.exponent)

    def __truediv__(self, other: "Phase") -> "Phase":
        return Phase(self.exponent - other.exponent)

    def inverse(self) -> "Phase":
        return Phase(-self.exponent)

    def fold(self, value: Fraction) -> Tuple[Fraction, "Phase"]:
        """Fold the even part into a sign: exponent 2 acts as -1.

        Returns ``(signed_value, residual)`` with residual exponent 0 or 1.
        """
        if self.exponent >= 2:
            return -value, Phase(self.exponent - 2)
        return value, self

    @property
    def is_real(self) -> bool:
        return self.exponent % 2 == 0

    def __str__(self) -> str:
        return ("1", "i", "-1", "-i")[self.exponent]


ONE_PHASE = Phase(0)
IMAG = Phase(1)


def _is_nonpositive_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


def _canonical_factors(factors: Iterable[Tuple[Fraction, int]]) -> Tuple[Tuple[Fraction, int], ...]:
    merged: dict = {}
    for arg, exp in factors:
        a = Fraction(arg)
        merged[a] = merged.get(a, 0) + int(exp)
    return tuple(sorted((a, e) for a, e in merged.items() if e != 0))


@dataclass(frozen=True)
class GammaQuotient:
    """``prefactor * phase * prod Gamma(arg)**exp`` with exact bookkeeping."""

    prefactor: Fraction = Fraction(1)
    phase: Phase = ONE_PHASE
    factors: Tuple[Tuple[Fraction, int], ...] = ()

    def __post_init__(self) -> None:
        pre = Fraction(self.prefactor)
        if pre == 0:
            raise ValueError("GammaQuotient prefactor must be nonzero")
        object.__setattr__(self, "prefactor", pre)
        facs = _canonical_factors(self.factors)
        object.__setattr__(self, "factors", facs)
        object.__setattr__(self, "_pq", tuple(
            (a.numerator, a.denominator, e) for a, e in facs))

    @classmethod
    def unit(cls) -> "GammaQuotient":
        return cls()

    @classmethod
    def single(cls, arg: RationalLike, exp: int = 1) -> "GammaQuotient":
        return cls(factors=((rational(arg), exp),))

    @classmethod
    def from_args(cls, numerator_args: Iterable[RationalLike],
                  denominator_args: Iterable[RationalLike],
                  prefactor: RationalLike = 1,
                  phase: Phase = ONE_PHASE) -> "GammaQuotient":
        facs = [(rational(a), 1) for a in numerator_args]
        facs += [(rational(a), -1) for a in denominator_args]
        return cls(prefactor=rational(prefactor), phase=phase, factors=facs)

    def scale(self, c: RationalLike, phase: Phase = ONE_PHASE) -> "GammaQuotient":
        return GammaQuotient(self.prefactor * rational(c), self.phase * phase, self.factors)

    def __mul__(self, other: "GammaQuotient") -> "GammaQuotient":
        return GammaQuotient(self.prefactor * other.prefactor,
                             self.phase * other.phase,
                             self.factors + other.factors)

    def __truediv__(self, other: "GammaQuotient") -> "GammaQuotient":
        inverted = tuple((a, -e) for a, e in other.factors)
        return GammaQuotient(self.prefactor / other.prefactor,
                             self.phase / other.phase,
                             self.factors + inverted)

    def pole_arguments(self) -> Tuple[Fraction, ...]:
        return tuple(a for a, e in self.factors if e > 0 and _is_nonpositive_integer(a))

    def zero_arguments(self) -> Tuple[Fraction, ...]:
        return tuple(a for a, e in self.factors if e < 0 and _is_nonpositive_integer(a))

    @property
    def is_pole(self) -> bool:
        return bool(self.pole_arguments())

    @property
    def is_zero(self) -> bool:
        return bool(self.zero_arguments())

    def to_json(self) -> dict:
        return {
            "prefactor": format_rational(self.prefactor),
            "phase": self.phase.exponent,
            "factors": [{"arg": format_rational(a), "exp": e} for a, e in self.factors],
        }

    @classmethod
    def from_json(cls, data: dict) -> "GammaQuotient":
        return cls(prefactor=rational(data["prefactor"]),
                   phase=Phase(int(data["phase"])),
                   factors=[(rational(f["arg"]), int(f["exp"])) for f in data["factors"]])


@dataclass(frozen=True)
class ReducedValue:
    """Tagged result of an exact reduction.

    kind is one of ``finite``, ``zero``, ``pole``.  ``value`` is the exact
    rational for ``finite`` (and 0 for ``zero``); ``order`` is the net
    vanishing order (positive for zeros, positive pole order for poles).
    """

    kind: str
    value: Fraction = Fraction(0)
    phase: Phase = ONE_PHASE
    order: int = 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


def pochhammer(x: RationalLike, m: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+m-1)`` as an exact rational."""
    if m < 0:
        raise ValueError("pochhammer length must be non-negative")
    xq = rational(x)
    out = Fraction(1)
    for t in range(m):
        out *= xq + t
    return out


def _reduce_classes(classes: dict) -> Tuple[int, Fraction]:
    """Collapse per-class gamma factor lists to (vanishing order, value).

    ``classes`` maps (p mod q, q) to lists of (p, exp) for arguments p/q.
    Each congruence class mod 1 must have total exponent zero.  Within a
    class every Gamma(p/q) telescopes to the minimal argument via
    Gamma(x+1) = x*Gamma(x); chain factors that hit zero are counted into
    the net vanishing order instead of the product.  Works over plain
    integers per class for speed.
    """
    order = 0
    num = 1
    den = 1
    for (_, q), items in classes.items():
        total = 0
        for _, e in items:
            total += e
        if total != 0:
            raise NonCommensurableError(
                "gamma arguments are not integer-spaced with balanced exponents")
        items.sort()
        p0 = items[0][0]
        for p, e in items:
            steps = (p - p0) // q
            if steps == 0:
                continue
            prod = 1
            zeros = 0
            base = p0
            for _ in range(steps):
                if base == 0:
                    zeros += 1
                else:
                    prod *= base
                base += q
            order += zeros * e
            qk = q ** steps
            if e > 0:
                num *= prod ** e
                den *= qk ** e
            else:
                num *= qk ** (-e)
                den *= prod ** (-e)
    return order, Fraction(num, den)


def _reduce_factor_multiset(factors: Tuple[Tuple[Fraction, int], ...]) -> Tuple[int, Fraction]:
    classes: dict = {}
    for arg, exp in factors:
        p, q = arg.numerator, arg.denominator
        classes.setdefault((p % q, q), []).append((p, exp))
    return _reduce_classes(classes)


def ratio_tagged(a: GammaQuotient, b: GammaQuotient) -> ReducedValue:
    """Exact a/b with pole/zero tagging instead of errors."""
    classes: dict = {}
    for p, q, exp in a._pq:
        classes.setdefault((p % q, q), []).append((p, exp))
    for p, q, exp in b._pq:
        classes.setdefault((p % q, q), []).append((p, -exp))
    order, value = _reduce_classes(classes)
    phase = a.phase / b.phase
    if order > 0:
        return ReducedValue("zero", Fraction(0), phase, order)
    if order < 0:
        return ReducedValue("pole", Fraction(0), phase, -order)
    return ReducedValue("finite", a.prefactor / b.prefactor * value, phase, 0)


def ratio(a: GammaQuotient, b: GammaQuotient) -> Tuple[Fraction, Phase]:
    """Exact value of a/b as (rational, phase).

    Identical pole/zero factors cancel formally before reduction.  A net
    uncancelled zero is the exact value 0; a net uncancelled pole raises
    :class:`UncancelledPoleError`.
    """
    tagged = ratio_tagged(a, b)
    if tagged.kind == "pole":
        raise UncancelledPoleError(
            f"uncancelled pole of order {tagged.order} in gamma quotient ratio")
    return tagged.value, tagged.phase


_UNIT = GammaQuotient()


def reduce_exact(g: GammaQuotient) -> ReducedValue:
    """Reduce a self-commensurable quotient to a tagged rational."""
    return ratio_tagged(g, _UNIT)


def _log_abs_gamma(x: Fraction) -> Tuple[float, int]:
    """(log|Gamma(x)|, sign) for non-pole rational x via lgamma."""
    xf = float(x)
    if x > 0:
        return math.lgamma(xf), 1
    # negative non-integer: lgamma gives log|Gamma|; the sign alternates
    # with the integer cell, Gamma < 0 on (-1,0), > 0 on (-2,-1), ...
    k = -math.floor(xf)
    sign = -1 if k % 2 == 1 else 1
    return math.lgamma(xf), sign


def evaluate_numeric(g: GammaQuotient) -> Union[float, Tuple[float, Phase]]:
    """Floating evaluation via log-gamma.

    Target relative accuracy is about 1e-12 away from poles.  The phase is
    folded into the sign when its exponent is even; otherwise the pair
    ``(signed_value, phase)`` is returned with phase exponent 1.  A formal
    zero evaluates to exactly 0.0; a pole raises :class:`GammaPoleError`.
    """
    poles = g.pole_arguments()
    if poles:
        raise GammaPoleError(poles[0])
    value, residual = g.phase.fold(g.prefactor)
    if g.is_zero:
        result = 0.0
    else:
        logmag = 0.0
        sign = 1 if value > 0 else -1
        for arg, exp in g.factors:
            lg, s = _log_abs_gamma(arg)
            logmag += exp * lg
            if exp % 2 == 1 and s < 0:
                sign = -sign
        result = sign * abs(float(value)) * math.exp(logmag)
    if residual.is_real:
        return result
    return result, residual
