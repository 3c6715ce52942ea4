"""Compressed operator data between neighboring K-types.

The first-order sphere operator has, on each (j, eps) label, a 3x3 block
matrix relative to the Clifford-range / twistor-range / divergence
decomposition:

    [ (n+1)/(2(n-1)) J      (n-2)/4 - (n-2) J^2/(n-1)^2   0   ]
    [ -n                    (n-3)/(2(n-1)) J              0   ]
    [ 0                     0                             L/2 ]

with J the signed Dirac eigenvalue and L the divergence-part eigenvalue,
supplied by a calibration table (d33 stays unknown without one).

Compressing the conformal factor between neighboring labels multiplies the
twistor-range part by the rational coefficient c_ba; compressing the Bochner
Laplacian commutator gives the quadratic coefficients below.  Together they
produce the three families of transition quantities that drive every spectral
recursion: mixed multiplicity (A1, A2, E-, E+), multiplicity two to two
(F1-+, F2-+, G1, G2), and multiplicity one to one (P-, P+).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from . import faults
from .ktypes import (DEFAULT_EIGENVALUES, KType, LTable, Params,
                     SphereEigenvalues)

__all__ = [
    "DBlock",
    "Case1Data",
    "Case2Data",
    "Case3Data",
    "d_block",
    "c_ba",
    "bochner_compression",
    "case1_data",
    "case2_data",
    "case3_data",
    "classify_pair",
    "DegenerateTargetError",
    "NotNeighborsError",
    "MissingLError",
]


class DegenerateTargetError(ArithmeticError):
    """Target label has lambda(T*T) = 0; the twistor-range compression is undefined."""


class NotNeighborsError(ValueError):
    """The two labels are not a transition pair."""


class MissingLError(LookupError):
    """No calibrated divergence-part eigenvalue available for the label."""


@dataclass(frozen=True)
class DBlock:
    """3x3 operator block at one (j, eps) label; off-diagonal corners vanish."""

    d11: Fraction
    d12: Fraction
    d21: Fraction
    d22: Fraction
    d33: Optional[Fraction]

    @property
    def d33_known(self) -> bool:
        return self.d33 is not None


def _d_entries_raw(n: int, J_signed: Fraction) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    # D11 is perturbed in its Dirac-eigenvalue coefficient: the identities
    # consume only differences of this entry across labels, so a constant
    # shift of it is a gauge freedom no suite could (or should) detect
    d11 = faults.bump("D11", Fraction(n + 1, 2 * (n - 1))) * J_signed
    d12 = faults.bump("D12", Fraction(n - 2, 4) - Fraction(n - 2, (n - 1) ** 2) * J_signed ** 2)
    d21 = faults.bump("D21", Fraction(-n))
    d22 = faults.bump("D22", Fraction(n - 3, 2 * (n - 1)) * J_signed)
    return d11, d12, d21, d22


_d_entries = lru_cache(maxsize=None)(_d_entries_raw)


def d_block(params: Params, ktype: KType, l_provider: Optional[LTable] = None,
            eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> DBlock:
    """Operator block at the label of ``ktype``.

    The upper-left entries depend on the label only through the signed Dirac
    eigenvalue; d33 = L/2 when the provider has L, else it stays unknown.
    """
    J = eig.dirac(params, ktype.j, ktype.eps)
    # perturbed values must never populate the cache
    entries = _d_entries_raw if faults._ACTIVE else _d_entries
    d11, d12, d21, d22 = entries(params.n, J)
    d33 = None
    if l_provider is not None:
        L = l_provider.lvalue(ktype)
        if L is not None:
            d33 = faults.bump("D33", L / 2)
    return DBlock(d11, d12, d21, d22, d33)


def c_ba(params: Params, a: KType, b: KType,
         eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Fraction:
    """Twistor-range compression coefficient for the transition a -> b.

    Exact rational; requires multiplicity-2 neighbor labels and a
    non-degenerate target (lambda_b(T*T) != 0, i.e. b.j != 1/2).
    """
    if a.multiplicity != 2 or b.multiplicity != 2:
        raise NotNeighborsError("c_ba needs two multiplicity-2 labels")
    if classify_pair(a, b) != "same-mult":
        raise NotNeighborsError(f"{a.label()} and {b.label()} are not a transition pair")
    n = params.n
    Ja = eig.dirac(params, a.j, a.eps)
    Jb = eig.dirac(params, b.j, b.eps)
    lam_b = eig.twistor_tt(params, b.j)
    if lam_b == 0:
        raise DegenerateTargetError(
            f"lambda(T*T) = 0 at target {b.label()}; compression undefined")
    numerator = Jb * Jb / 2 + Ja * Ja / 2 - Ja * Jb / Fraction(n - 1) \
        - Fraction(n * (n - 1), 4)
    return numerator / lam_b


def c_ba_numerator(params: Params, a: KType, b: KType,
                   eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Fraction:
    """The symmetric bracket of c_ba before dividing by lambda_b(T*T)."""
    n = params.n
    Ja = eig.dirac(params, a.j, a.eps)
    Jb = eig.dirac(params, b.j, b.eps)
    return Jb * Jb / 2 + Ja * Ja / 2 - Ja * Jb / Fraction(n - 1) - Fraction(n * (n - 1), 4)


def classify_pair(frm: KType, to: KType) -> Optional[str]:
    """'same-mult' for one-step pairs with equal q, 'mixed' for q-flipped partners.

    Same-q transitions allow any eps combination with |df| = 1 and |dj| <= 1
    (the transition quantities are defined for general neighbor labels; the
    six-arrow diagram is the subset the verification suites walk).  Mixed
    pairs keep j and eps and flip q.
    """
    if frm.xi != to.xi or abs(frm.f - to.f) != 1:
        return None
    if frm.q == to.q:
        return "same-mult" if to.j - frm.j in (1, 0, -1) else None
    if frm.j == to.j and frm.eps == to.eps and frm.j >= Fraction(3, 2):
        return "mixed"
    return None


def bochner_compression(params: Params, frm: KType, to: KType,
                        eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Fraction:
    """Compressed Bochner-Laplacian commutator coefficient for frm -> to.

    Antisymmetric under swapping the endpoints.  Same-multiplicity pairs get
    f_to^2 - f_from^2 + J_to^2 - J_from^2; mixed pairs (same j, q flipped)
    get f_to^2 - f_from^2 -+ (n-2), the sign fixed by which side carries the
    multiplicity-2 label.
    """
    kind = classify_pair(frm, to)
    if kind is None:
        raise NotNeighborsError(f"{frm.label()} -> {to.label()} is not a transition pair")
    if kind == "same-mult":
        return _bochner_same_mult(params, frm, to, eig)
    return _bochner_mixed(params, frm, to)


def _bochner_same_mult(params: Params, frm: KType, to: KType,
                       eig: SphereEigenvalues) -> Fraction:
    Jf = eig.dirac(params, frm.j, frm.eps)
    Jt = eig.dirac(params, to.j, to.eps)
    return to.f ** 2 - frm.f ** 2 + Jt * Jt - Jf * Jf


def _bochner_mixed(params: Params, frm: KType, to: KType) -> Fraction:
    sign = -1 if to.multiplicity == 1 else 1
    return to.f ** 2 - frm.f ** 2 - sign * (params.n - 2)


@dataclass(frozen=True)
class Case1Data:
    """Mixed-multiplicity transition quantities; E+ + E- is r-free."""

    a1: Fraction
    a2: Fraction
    e_minus: Fraction
    e_plus: Fraction


def case1_data(params: Params, alpha: KType, beta: KType, l_provider: LTable,
               eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Case1Data:
    """Quantities for a multiplicity-2 label alpha paired with a q=1 label beta.

    Needs the calibrated divergence eigenvalue at beta; raises MissingL
    without one.
    """
    if alpha.multiplicity != 2 or beta.multiplicity != 1:
        raise NotNeighborsError("case1_data wants (multiplicity-2, multiplicity-1)")
    if classify_pair(alpha, beta) != "mixed":
        raise NotNeighborsError(f"{alpha.label()} and {beta.label()} are not a mixed pair")
    d_a = d_block(params, alpha, eig=eig)
    d_b = d_block(params, beta, l_provider, eig=eig)
    if d_b.d33 is None:
        raise MissingLError(f"no divergence eigenvalue for {beta.label()}")
    df = alpha.f - beta.f
    r = params.r
    a1 = alpha.xi * df * d_a.d12
    a2 = -alpha.xi * df * d_a.d21
    mid = (alpha.f ** 2 - beta.f ** 2) / 2 - Fraction(params.n - 2, 2)
    dd = alpha.xi * df * (d_a.d22 - d_b.d33)
    return Case1Data(a1, a2, mid - r + dd, mid + r - dd)


@dataclass(frozen=True)
class Case2Data:
    """Multiplicity 2 -> 2 transition quantities and their relation matrices."""

    f1_minus: Fraction
    f1_plus: Fraction
    f2_minus: Fraction
    f2_plus: Fraction
    g1: Fraction
    g2: Fraction
    c_ba: Fraction

    def m1(self) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
        return ((self.f1_minus, self.g2), (self.g1, self.c_ba * self.f2_minus))

    def m2(self) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
        return ((self.f1_plus, -self.g2), (-self.g1, self.c_ba * self.f2_plus))

    def det_m1(self) -> Fraction:
        return self.c_ba * self.f1_minus * self.f2_minus - self.g1 * self.g2

    def det_m2(self) -> Fraction:
        return self.c_ba * self.f1_plus * self.f2_plus - self.g1 * self.g2


def case2_data(params: Params, alpha: KType, beta: KType,
               eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Case2Data:
    """Quantities for a multiplicity-2 edge alpha -> beta.

    Propagates DegenerateTarget from c_ba when beta sits at the lattice
    bottom.  Note g1 = xi (f'-f) (-n) (1 - c_ba) since the (2,1) operator
    entry is label-independent.
    """
    if classify_pair(alpha, beta) != "same-mult" or alpha.multiplicity != 2:
        raise NotNeighborsError(f"{alpha.label()} -> {beta.label()} is not a multiplicity-2 edge")
    cba = c_ba(params, alpha, beta, eig)
    d_a = d_block(params, alpha, eig=eig)
    d_b = d_block(params, beta, eig=eig)
    Ja = eig.dirac(params, alpha.j, alpha.eps)
    Jb = eig.dirac(params, beta.j, beta.eps)
    df = beta.f - alpha.f
    r = params.r
    mid = (beta.f ** 2 - alpha.f ** 2) / 2 + (Jb * Jb - Ja * Ja) / 2
    dd1 = alpha.xi * df * (d_b.d11 - d_a.d11)
    dd2 = alpha.xi * df * (d_b.d22 - d_a.d22)
    g1 = alpha.xi * df * (d_b.d21 - cba * d_a.d21)
    g2 = alpha.xi * df * (cba * d_b.d12 - d_a.d12)
    return Case2Data(mid - r + dd1, mid + r - dd1,
                     mid - r + dd2, mid + r - dd2, g1, g2, cba)


@dataclass(frozen=True)
class Case3Data:
    """Multiplicity 1 -> 1 transition quantities; P+ + P- is r-free."""

    p_minus: Fraction
    p_plus: Fraction


def case3_data(params: Params, alpha: KType, beta: KType, l_provider: LTable,
               eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Case3Data:
    """Quantities for a multiplicity-1 edge with alpha as center, beta as neighbor."""
    if classify_pair(alpha, beta) != "same-mult" or alpha.multiplicity != 1:
        raise NotNeighborsError(f"{alpha.label()} -> {beta.label()} is not a multiplicity-1 edge")
    d_a = d_block(params, alpha, l_provider, eig=eig)
    d_b = d_block(params, beta, l_provider, eig=eig)
    if d_a.d33 is None:
        raise MissingLError(f"no divergence eigenvalue for {alpha.label()}")
    if d_b.d33 is None:
        raise MissingLError(f"no divergence eigenvalue for {beta.label()}")
    Ja = eig.dirac(params, alpha.j, alpha.eps)
    Jb = eig.dirac(params, beta.j, beta.eps)
    r = params.r
    mid = (alpha.f ** 2 - beta.f ** 2) / 2 + (Ja * Ja - Jb * Jb) / 2
    dd = alpha.xi * (alpha.f - beta.f) * (d_a.d33 - d_b.d33)
    return Case3Data(mid - r + dd, mid + r - dd)
