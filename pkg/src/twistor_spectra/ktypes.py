"""Isotypic lattice for twistor fields over a circle times an even sphere.

A K-type is labelled by a global chirality ``xi``, a circle weight ``f``, a
sphere label ``(j, 1/2 + q, 1/2, ..., 1/2, eps/2)`` with ``j in 1/2 + q + N``
and ``eps = +-1``.  Types with ``q = 0`` occur with multiplicity two (the
Clifford-range and twistor-range summands), types with ``q = 1`` with
multiplicity one (the divergence summand).

Sphere eigenvalue data hangs off the label: the Dirac eigenvalue
``J_signed = eps * (j + (n-2)/2)`` and the twistor Laplacian eigenvalue
``lambda(T*T) = ((n-2)/(n-1)) * (J^2 - ((n-1)/2)^2)``, which vanishes exactly
at the bottom label ``j = 1/2``.  Both closed forms sit behind a provider so
an alternate convention can be injected; the divergence-part eigenvalue ``L``
is never hard-coded and comes from a calibration table.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .exact import RationalLike, format_rational, rational

HALF = Fraction(1, 2)

__all__ = [
    "HALF",
    "Params",
    "KType",
    "EigData",
    "Direction",
    "DIRECTIONS",
    "InterfaceSquare",
    "SphereEigenvalues",
    "DEFAULT_EIGENVALUES",
    "LTable",
    "make_ktype",
    "dirac_eigenvalue",
    "twistor_tt_eigenvalue",
    "eig_data",
    "neighbors",
    "interface_square",
    "case1_partners",
    "enumerate_ktypes",
    "BadDimensionError",
    "InvalidWeightError",
]


class BadDimensionError(ValueError):
    """Sphere factor dimension must be even and at least 4."""


class InvalidWeightError(ValueError):
    """Label violates the weight lattice constraints."""


@dataclass(frozen=True)
class Params:
    """Global configuration: dimension n, half-order r, circle weight lattice."""

    n: int
    r: Fraction
    f_lattice: str = "half"  # "half": f in Z + 1/2, "int": f in Z

    def __post_init__(self) -> None:
        if self.n % 2 != 0 or self.n < 4:
            raise BadDimensionError("n must be even and >= 4")
        object.__setattr__(self, "r", rational(self.r))
        if self.f_lattice not in ("half", "int"):
            raise ValueError("f_lattice must be 'half' or 'int'")

    def on_f_lattice(self, f: Fraction) -> bool:
        if self.f_lattice == "half":
            return (f - HALF).denominator == 1
        return f.denominator == 1


@dataclass(frozen=True)
class KType:
    """Isotypic summand label (xi; f; j, q, eps)."""

    xi: int
    f: Fraction
    j: Fraction
    q: int
    eps: int

    @property
    def multiplicity(self) -> int:
        return 2 if self.q == 0 else 1

    def sort_key(self) -> Tuple:
        return (self.xi, self.f, self.j, self.eps, self.q)

    def label(self) -> str:
        return (f"V(xi={self.xi:+d}; f={format_rational(self.f)}, "
                f"j={format_rational(self.j)}, q={self.q}, eps={self.eps:+d})")

    def to_json(self) -> dict:
        return {"xi": self.xi, "f": format_rational(self.f),
                "j": format_rational(self.j), "q": self.q, "eps": self.eps}

    @classmethod
    def from_json(cls, data: dict) -> "KType":
        return cls(int(data["xi"]), rational(data["f"]), rational(data["j"]),
                   int(data["q"]), int(data["eps"]))


def make_ktype(params: Params, xi: int, f: RationalLike, j: RationalLike,
               q: int, eps: int) -> KType:
    """Validated K-type; multiplicity is 2 for q=0 and 1 for q=1."""
    if xi not in (1, -1) or eps not in (1, -1):
        raise InvalidWeightError("xi and eps must be +1 or -1")
    if q not in (0, 1):
        raise InvalidWeightError("q must be 0 or 1")
    fq, jq = rational(f), rational(j)
    if not params.on_f_lattice(fq):
        raise InvalidWeightError(
            f"f={format_rational(fq)} is not on the configured '{params.f_lattice}' lattice")
    step = jq - (HALF + q)
    if step.denominator != 1 or step < 0:
        raise InvalidWeightError(
            f"j={format_rational(jq)} must lie in 1/2 + q + N (q={q})")
    return KType(xi, fq, jq, q, eps)


class SphereEigenvalues:
    """Closed-form sphere spectra used throughout; injectable convention point.

    ``dirac`` must be the unique convention under which the spectral quotient
    identities close; the default is the one the verification suites certify.
    """

    def dirac(self, params: Params, j: Fraction, eps: int) -> Fraction:
        return eps * (j + Fraction(params.n - 2, 2))

    def twistor_tt(self, params: Params, j: Fraction) -> Fraction:
        n = params.n
        J = j + Fraction(n - 2, 2)
        return Fraction(n - 2, n - 1) * (J * J - Fraction(n - 1, 2) ** 2)


DEFAULT_EIGENVALUES = SphereEigenvalues()


def dirac_eigenvalue(params: Params, j: RationalLike, eps: int,
                     eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Fraction:
    """Signed Dirac eigenvalue on the sphere spinor label (j, eps)."""
    return eig.dirac(params, rational(j), eps)


def twistor_tt_eigenvalue(params: Params, j: RationalLike,
                          eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Fraction:
    """Eigenvalue of T*T on the sphere label j; zero exactly at j = 1/2."""
    return eig.twistor_tt(params, rational(j))


@dataclass(frozen=True)
class EigData:
    """Assembled eigenvalue data for one K-type."""

    J_signed: Fraction
    J_unsigned: Fraction
    lambda_tt: Fraction
    L: Optional[Fraction]  # divergence-part eigenvalue; None until calibrated


class LTable:
    """Calibrated divergence-part eigenvalues keyed by (j, eps)."""

    def __init__(self, values: Dict[Tuple[Fraction, int], Fraction]):
        self._values = dict(values)

    def lvalue(self, ktype: KType) -> Optional[Fraction]:
        return self._values.get((ktype.j, ktype.eps))

    def items(self):
        return sorted(self._values.items())

    def __len__(self) -> int:
        return len(self._values)


def eig_data(params: Params, ktype: KType, l_provider: Optional[LTable] = None,
             eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> EigData:
    J_signed = eig.dirac(params, ktype.j, ktype.eps)
    J_unsigned = ktype.eps * J_signed
    lam = eig.twistor_tt(params, ktype.j)
    L = l_provider.lvalue(ktype) if l_provider is not None else None
    return EigData(J_signed, J_unsigned, lam, L)


class Direction(NamedTuple):
    """One arrow of the six-neighbor diagram: df in {-1,+1}, dj in {+1,0,-1}."""

    df: int
    dj: int


# 3x2 layout: rows dj = +1, 0, -1 ; columns df = -1, +1
DIRECTIONS: Tuple[Direction, ...] = (
    Direction(-1, 1), Direction(1, 1),
    Direction(-1, 0), Direction(1, 0),
    Direction(-1, -1), Direction(1, -1),
)


def neighbor_of(ktype: KType, direction: Direction) -> Optional[KType]:
    """The diagram neighbor in one direction, or None off the lattice.

    The middle row (dj = 0) flips eps; the j +- 1 rows keep it.  q and xi
    never change along diagram arrows.
    """
    j2 = ktype.j + direction.dj
    if j2 < HALF + ktype.q:
        return None
    eps2 = -ktype.eps if direction.dj == 0 else ktype.eps
    return KType(ktype.xi, ktype.f + direction.df, j2, ktype.q, eps2)


def neighbors(ktype: KType) -> List[Tuple[Direction, KType]]:
    """Up to six diagram neighbors; bottom-row entries are omitted at j = 1/2 + q."""
    out = []
    for direction in DIRECTIONS:
        nb = neighbor_of(ktype, direction)
        if nb is not None:
            out.append((direction, nb))
    return out


@dataclass(frozen=True)
class InterfaceSquare:
    """Corners of the multiplicity 2/1 interface diagram."""

    alpha1: KType
    alpha2: KType
    beta1: KType
    beta2: KType


def interface_square(center: KType) -> InterfaceSquare:
    """The four-corner interface at a multiplicity-2 center.

    alpha1 = center, alpha2 = (f+1; j+1) with q=0; beta1 = (f+1; j) and
    beta2 = (f; j+1) with q=1.  beta1 requires j >= 3/2.
    """
    if center.multiplicity != 2:
        raise InvalidWeightError("interface square needs a multiplicity-2 center")
    if center.j < Fraction(3, 2):
        raise InvalidWeightError(
            "interface square needs j >= 3/2 (the q=1 corner at the same j "
            "does not exist at the lattice bottom)")
    alpha2 = KType(center.xi, center.f + 1, center.j + 1, 0, center.eps)
    beta1 = KType(center.xi, center.f + 1, center.j, 1, center.eps)
    beta2 = KType(center.xi, center.f, center.j + 1, 1, center.eps)
    return InterfaceSquare(center, alpha2, beta1, beta2)


def case1_partners(ktype: KType) -> List[Tuple[int, KType]]:
    """Cross-multiplicity partners (same j, same eps, f +- 1, q flipped).

    Empty at j = 1/2, where no q=1 label with the same j exists.
    """
    if ktype.j < Fraction(3, 2):
        return []
    q2 = 1 - ktype.q
    return [(df, KType(ktype.xi, ktype.f + df, ktype.j, q2, ktype.eps))
            for df in (1, -1)]


def enumerate_ktypes(params: Params, f_min: RationalLike, f_max: RationalLike,
                     j_max: RationalLike, qs: Sequence[int] = (0, 1),
                     xi_values: Sequence[int] = (-1, 1),
                     eps_values: Sequence[int] = (-1, 1)) -> Iterator[KType]:
    """All K-types in a finite window, in deterministic (xi, f, j, eps, q) order."""
    f_lo, f_hi, j_hi = rational(f_min), rational(f_max), rational(j_max)
    f_start = f_lo
    if not params.on_f_lattice(f_start):
        # snap up to the first lattice point
        offset = HALF if params.f_lattice == "half" else Fraction(0)
        k = f_start - offset
        f_start = offset + k.numerator // k.denominator
        if f_start < f_lo:
            f_start += 1
    types = []
    for xi in sorted(xi_values):
        f = f_start
        while f <= f_hi:
            for q in sorted(qs):
                j = HALF + q
                while j <= j_hi:
                    for eps in sorted(eps_values):
                        types.append(KType(xi, f, j, q, eps))
                    j += 1
            f += 1
    types.sort(key=KType.sort_key)
    return iter(types)
