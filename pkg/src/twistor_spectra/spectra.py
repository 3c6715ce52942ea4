"""Closed-form spectral data on the K-type lattice.

On multiplicity-one summands the operator eigenvalue is carried by the
spectral function ``z_value(r; f, J, s)``, a four-gamma quotient with
prefactor s/2 (s = xi*eps).  At r = 1/2 it collapses to the exact rational
-(f - s J)/4, a quarter of the order-one eigenvalue i(f - s J) divided by i.

On multiplicity-two summands the normalization determinant is carried by the
eight-gamma product ``mult2_gamma_product``; its exact ratios across diagram
edges reproduce the determinant-quotient matrix entry by entry.

``block2x2`` reconstructs the whole 2x2 block on a multiplicity-two summand
as a rational coefficient matrix sharing the factor z(r; f+1, J, s).  The
strict variant of the (2,2) coefficient drops a factor n(n-2) from its
first term; the corrected coefficient is the default and the strict variant
stays available behind ``strict_paper``.  The operator normalization pins
the multiplicity-one block to -4i * z, under which the r = 1/2 block matches
the first-order (exchanged Rarita-Schwinger) matrix entry by entry.

The divergence-part sphere eigenvalue L is never assumed: ``calibrate_L``
solves the overdetermined system of quotient identities for it, checks
consistency, and returns the table the other modules consume.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import faults
from .exact import (GammaQuotient, IMAG, ONE_PHASE, Phase, RationalLike,
                    ReducedValue, format_rational, ratio_tagged, rational)
from .ktypes import (DEFAULT_EIGENVALUES, DIRECTIONS, HALF, Direction, KType,
                     LTable, Params, SphereEigenvalues, case1_partners,
                     neighbor_of)
from .operators import MissingLError, case1_data, case3_data, d_block

__all__ = [
    "Block",
    "QuotientEntry",
    "QuotientMatrix",
    "CalibrationResult",
    "z_value",
    "z_for",
    "mult2_gamma_product",
    "mult1_quotient_matrix",
    "mult2_det_quotient_matrix",
    "block2x2",
    "block_coefficients",
    "mult1_block",
    "first_order_block",
    "exchanged_rs_eigenvalue",
    "calibrate_L",
    "B33_SCALE",
    "B33_PHASE",
    "SingularCoefficientError",
    "InconsistentSystemError",
]

# Multiplicity-one operator value = B33_SCALE * B33_PHASE * z_value:
# the normalization that makes the r = 1/2 degeneration come out as the
# first-order block i(f - sJ) and closes every mixed-multiplicity relation.
B33_SCALE = Fraction(-4)
B33_PHASE = IMAG


class SingularCoefficientError(ArithmeticError):
    """A block denominator coefficient vanished; carries which one."""

    def __init__(self, which: str, ktype: KType):
        self.which = which
        self.ktype = ktype
        super().__init__(f"coefficient {which} vanishes at {ktype.label()}")


class InconsistentSystemError(ArithmeticError):
    """The calibration system has no solution; carries the violating edge."""

    def __init__(self, message: str, witness: Optional[dict] = None):
        self.witness = witness or {}
        super().__init__(message)


@lru_cache(maxsize=None)
def _z_cached(r: Fraction, f: Fraction, J: Fraction, s: int) -> GammaQuotient:
    sh = Fraction(s, 2)
    num = [HALF * (f + J + 1 + r - sh), HALF * (-f + J + 1 + r + sh)]
    den = [HALF * (f + J + 1 - r + sh), HALF * (-f + J + 1 - r - sh)]
    return GammaQuotient.from_args(num, den, prefactor=sh)


def z_value(params: Params, f: RationalLike, J: RationalLike, xi_eps: int) -> GammaQuotient:
    """Spectral function on a multiplicity-one summand, as a gamma quotient.

    J is the unsigned sphere Dirac eigenvalue j + (n-2)/2 of the label and
    xi_eps = xi * eps.  Poles and zeros at non-positive integer arguments are
    flagged on the quotient, never raised.
    """
    if xi_eps not in (1, -1):
        raise ValueError("xi_eps must be +1 or -1")
    return _z_cached(params.r, rational(f), rational(J), xi_eps)


def z_for(params: Params, ktype: KType,
          eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> GammaQuotient:
    """z_value at a K-type's own label data."""
    J = ktype.eps * eig.dirac(params, ktype.j, ktype.eps)
    return z_value(params, ktype.f, J, ktype.xi * ktype.eps)


@lru_cache(maxsize=None)
def _w_cached(r: Fraction, f: Fraction, J: Fraction, s: int) -> GammaQuotient:
    sh = Fraction(s, 2)
    num: List[Fraction] = []
    den: List[Fraction] = []
    for JJ in (J, J + 2):
        num += [HALF * (f + JJ + r - sh), HALF * (-f + JJ + r + sh)]
        den += [HALF * (f + JJ - r + sh), HALF * (-f + JJ - r - sh)]
    return GammaQuotient.from_args(num, den, prefactor=Fraction(1, 4))


def mult2_gamma_product(params: Params, f: RationalLike, J: RationalLike,
                        xi_eps: int) -> GammaQuotient:
    """Eight-gamma normalization product on a multiplicity-two summand."""
    if xi_eps not in (1, -1):
        raise ValueError("xi_eps must be +1 or -1")
    return _w_cached(params.r, rational(f), rational(J), xi_eps)


def w_for(params: Params, ktype: KType,
          eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> GammaQuotient:
    J = ktype.eps * eig.dirac(params, ktype.j, ktype.eps)
    return mult2_gamma_product(params, ktype.f, J, ktype.xi * ktype.eps)


@dataclass(frozen=True)
class QuotientEntry:
    """One quotient-matrix entry as a formal fraction of exact products.

    kind: 'finite' (value = num/den), 'pole' (den = 0), 'zero' (num = 0), or
    'indeterminate' (both vanish: the displayed closed form cannot decide the
    edge and only the gamma-quotient route can).
    """

    direction: Direction
    num: Fraction
    den: Fraction

    @property
    def kind(self) -> str:
        if self.num == 0 and self.den == 0:
            return "indeterminate"
        if self.den == 0:
            return "pole"
        if self.num == 0:
            return "zero"
        return "finite"

    @property
    def value(self) -> Optional[Fraction]:
        return self.num / self.den if self.kind == "finite" else None

    def render(self) -> str:
        k = self.kind
        if k == "finite":
            return format_rational(self.value)
        return {"pole": "POLE", "zero": "0", "indeterminate": "INDET"}[k]


@dataclass(frozen=True)
class QuotientMatrix:
    """Entries of the 3x2 neighbor-quotient layout, keyed by (df, dj).

    Rows are dj = +1, 0, -1 and columns df = -1, +1, matching the diagram;
    the bottom row is omitted at the lattice boundary.  Every entry is the
    spectral quantity at the neighbor divided by the one at the center; the
    middle row's neighbors flip eps.
    """

    center: KType
    entries: Dict[Direction, QuotientEntry]

    def entry(self, df: int, dj: int) -> Optional[QuotientEntry]:
        return self.entries.get(Direction(df, dj))

    def rows(self) -> List[Tuple[int, List[Optional[QuotientEntry]]]]:
        return [(dj, [self.entry(-1, dj), self.entry(1, dj)]) for dj in (1, 0, -1)]


@lru_cache(maxsize=None)
def _corner_pairs(r: Fraction, f: Fraction, J: Fraction, s: int):
    """Linear (numerator, denominator) pairs for all six directions.

    These are the multiplicity-one quotient entries; the determinant
    quotients are the same pairs squared minus one.
    """
    sh = Fraction(s, 2)
    sJ = s * J
    return {
        (1, 1): (f + J + 1 + r - sh, f + J + 1 - r + sh),
        (-1, 1): (-f + J + 1 + r + sh, -f + J + 1 - r - sh),
        (1, 0): (f + HALF + r + sJ, f + HALF - r - sJ),
        (-1, 0): (-f + HALF + r - sJ, -f + HALF - r + sJ),
        (1, -1): (f - J + 1 + r + sh, f - J + 1 - r - sh),
        (-1, -1): (-f - J + 1 + r - sh, -f - J + 1 - r + sh),
    }


def mult1_quotient_matrix(params: Params, center: KType,
                          eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> QuotientMatrix:
    """Eigenvalue quotients around a multiplicity-one center."""
    if center.multiplicity != 1:
        raise ValueError("mult1_quotient_matrix needs a multiplicity-1 center")
    s = center.xi * center.eps
    J = center.eps * eig.dirac(params, center.j, center.eps)
    raw = _corner_pairs(params.r, center.f, J, s)
    entries = {}
    for direction in DIRECTIONS:
        if neighbor_of(center, direction) is None:
            continue
        num, den = raw[(direction.df, direction.dj)]
        entries[direction] = QuotientEntry(direction, faults.bump("Q1", num), den)
    return QuotientMatrix(center, entries)


def mult2_det_quotient_matrix(params: Params, center: KType,
                              strict_paper: bool = False,
                              eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> QuotientMatrix:
    """Determinant quotients around a multiplicity-two center.

    Each entry is a product of two factors over a product of two factors;
    the lone chirality factors pair off as (Y - xi)(Y + xi) = Y^2 - 1, so
    every entry is (Y_num^2 - 1)/(Y_den^2 - 1) on the linear pairs of
    :func:`_corner_pairs`.  The strict middle-right denominator carries
    xi*J where the gamma-product oracle demands eps*xi*J; the corrected
    factor is the default and ``strict_paper`` restores the strict one.
    """
    if center.multiplicity != 2:
        raise ValueError("mult2_det_quotient_matrix needs a multiplicity-2 center")
    f, r = center.f, params.r
    xi, eps = center.xi, center.eps
    s = xi * eps
    J = eps * eig.dirac(params, center.j, center.eps)
    raw = _corner_pairs(r, f, J, s)
    entries = {}
    for direction in DIRECTIONS:
        if neighbor_of(center, direction) is None:
            continue
        y_num, y_den = raw[(direction.df, direction.dj)]
        num = y_num * y_num - 1
        if strict_paper and direction == (1, 0):
            den = (f + HALF - xi - r - s * J) * (f + HALF + xi - r - xi * J)
        else:
            den = y_den * y_den - 1
        entries[direction] = QuotientEntry(direction, faults.bump("Q2", num), den)
    return QuotientMatrix(center, entries)


def _block_coeffs_raw(n: int, r: Fraction, f: Fraction, Ja: Fraction, xi: int,
                      strict_paper: bool) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    c1 = faults.bump("C1", 2*f*n - 2*f - 2*n + 1 + n*n + 2*r*n - 2*r - 2*xi*Ja)
    c2 = faults.bump("C2", 2*f*r + xi*Ja)
    c3 = faults.bump("C3", Fraction(n - 1) + 2*r)
    c4 = faults.bump("C4", (2*f + 2*r - xi + 2*Ja) * (2*f + 2*r + xi - 2*Ja))
    c5 = faults.bump("C5", Fraction(n - 1 + 2*Ja) * (n - 1 - 2*Ja))
    c6 = faults.bump("C6", 2*f*n - 2*f - 2*n + 1 + n*n - 2*r*n + 2*r + 2*xi*Ja)
    for name, c in (("C3", c3), ("C4", c4), ("C1", c1)):
        if c == 0:
            raise _Singular(name)
    b11 = 4*c1*c2 / ((n - 1) * c3 * c4) - 1
    b12 = -2 * (n - 2) * xi * c5 * c2 / ((n - 1) ** 2 * c3 * c4)
    b21 = 8 * n * xi * c2 / (c3 * c4)
    # the strict first term of the (2,2) coefficient drops a factor n(n-2);
    # the corrected value is forced exactly by the mixed-multiplicity relations
    scale = 1 if strict_paper else n * (n - 2)
    b22 = -4 * scale * c5 * c2 / ((n - 1) * c1 * c3 * c4) + c6 / c1
    return b11, b12, b21, b22


class _Singular(Exception):
    def __init__(self, which: str):
        self.which = which


_block_coeffs = lru_cache(maxsize=None)(_block_coeffs_raw)


def block_coefficients(params: Params, center: KType, strict_paper: bool = False,
                       eig: SphereEigenvalues = DEFAULT_EIGENVALUES
                       ) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """The four rational coefficients (b11, b12, b21, b22) of the 2x2 block."""
    Ja = eig.dirac(params, center.j, center.eps)
    fn = _block_coeffs_raw if faults._ACTIVE else _block_coeffs
    try:
        return fn(params.n, params.r, center.f, Ja, center.xi, strict_paper)
    except _Singular as exc:
        raise SingularCoefficientError(exc.which, center) from None


@dataclass(frozen=True)
class Block:
    """Spectral data of the operator on one K-type.

    Multiplicity two: ``coefficients`` is the rational 2x2 matrix sharing the
    common gamma-quotient ``factor`` z(r; f+1, J, s); its determinant is
    rational times factor^2.  Multiplicity one: ``coefficients`` is None and
    ``factor`` is z itself.  ``phase`` is the formal power of i carried in
    front (0 for the raw z-normalized data).
    """

    kind: str  # "mult1" | "mult2"
    ktype: KType
    factor: GammaQuotient
    coefficients: Optional[Tuple[Fraction, Fraction, Fraction, Fraction]] = None
    phase: Phase = ONE_PHASE

    def det_coefficient(self) -> Fraction:
        b11, b12, b21, b22 = self.coefficients
        return b11 * b22 - b12 * b21


def block2x2(params: Params, center: KType, strict_paper: bool = False,
             factor_at: str = "f+1",
             eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Block:
    """The 2x2 block on a multiplicity-two K-type.

    The shared factor sits at circle weight f+1 (``factor_at='f'`` keeps the
    alternate reading available for the resolution check; it fails the
    r = 1/2 degeneration and is not the default).
    """
    if center.multiplicity != 2:
        raise ValueError("block2x2 needs a multiplicity-2 center")
    coeffs = block_coefficients(params, center, strict_paper, eig)
    J = center.eps * eig.dirac(params, center.j, center.eps)
    f_fac = center.f + 1 if factor_at == "f+1" else center.f
    factor = z_value(params, f_fac, J, center.xi * center.eps)
    return Block("mult2", center, factor, coeffs)


def mult1_block(params: Params, center: KType,
                eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> Block:
    """The scalar block on a multiplicity-one K-type (raw z normalization)."""
    if center.multiplicity != 1:
        raise ValueError("mult1_block needs a multiplicity-1 center")
    return Block("mult1", center, z_for(params, center, eig))


def exchanged_rs_eigenvalue(params: Params, f: RationalLike, J: RationalLike,
                            xi_eps: int) -> Tuple[Fraction, Phase]:
    """First-order eigenvalue i (f - s J) on a multiplicity-one summand.

    Equals -4i times z_value at r = 1/2; vanishes exactly on the kernel line
    f = s J.
    """
    return rational(f) - xi_eps * rational(J), IMAG


def first_order_block(params: Params, center: KType, strict_paper: bool = False,
                      eig: SphereEigenvalues = DEFAULT_EIGENVALUES
                      ) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    """The first-order 2x2 block, divided by the common phase i.

    This is the independent target for the r = 1/2 degeneration of
    ``block2x2``.  The strict variant carries +s J inside the (1,1) entry where
    the mixed-multiplicity relations force -s J; corrected by default,
    ``strict_paper`` restores it.
    """
    n = params.n
    f = center.f
    xi = center.xi
    s = center.xi * center.eps
    J = center.eps * eig.dirac(params, center.j, center.eps)
    sign = 1 if strict_paper else -1
    e11 = -Fraction(n - 2, n) * (f + sign * Fraction(n + 1, n - 1) * s * J)
    e12 = -Fraction(2 * xi, n * (n - 1)) * (Fraction((n - 1) * (n - 2), 4)
                                            - Fraction(n - 2, n - 1) * J * J)
    e21 = Fraction(2 * xi)
    e22 = f - Fraction(n - 3, n - 1) * s * J
    return ((e11, e12), (e21, e22))


# ---------------------------------------------------------------------------
# calibration of the divergence-part eigenvalue
# ---------------------------------------------------------------------------

@dataclass
class CalibrationResult:
    """Solved divergence eigenvalues plus the consistency evidence.

    ``table`` maps (j, eps) to L.  ``difference_edges`` counts the quotient
    identities that constrained the solve, ``unconstraining_edges`` the ones
    that degenerate (quotient -1).  The additive constant is pinned by one
    mixed-multiplicity probe; ``issues`` lists every residual inconsistency
    found when re-verifying the full system (empty iff consistent).
    """

    table: LTable
    difference_edges: int
    unconstraining_edges: int
    probe: Optional[dict]
    issues: List[dict] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.issues


def _case3_mid(params: Params, center: KType, nb: KType, eig: SphereEigenvalues) -> Fraction:
    Ja = eig.dirac(params, center.j, center.eps)
    Jb = eig.dirac(params, nb.j, nb.eps)
    return (center.f ** 2 - nb.f ** 2) / 2 + (Ja * Ja - Jb * Jb) / 2


def calibrate_L(params: Params, xi: int, f_min: RationalLike, f_max: RationalLike,
                j_max: RationalLike,
                eig: SphereEigenvalues = DEFAULT_EIGENVALUES) -> CalibrationResult:
    """Solve the quotient identities for the divergence-part eigenvalues.

    Every multiplicity-one edge in the window forces a difference of d33
    values between its endpoint (j, eps) classes; the differences must agree
    across the whole f-window, close around cycles, and leave exactly one
    additive constant free, which a mixed-multiplicity probe then pins.
    Raises :class:`InconsistentSystemError` with the violating edge if the
    overdetermined system has no solution; re-verification residuals of the
    solved table are reported in ``issues``.
    """
    from math import floor
    f_lo, f_hi, j_hi = rational(f_min), rational(f_max), rational(j_max)
    r = params.r

    # nodes are (j, eps) classes: d33 cannot depend on f
    nodes: List[Tuple[Fraction, int]] = []
    j = Fraction(3, 2)
    while j <= j_hi:
        nodes += [(j, 1), (j, -1)]
        j += 1
    if not nodes:
        raise InconsistentSystemError("empty calibration window")
    node_set = set(nodes)

    deltas: Dict[Tuple[Tuple[Fraction, int], Tuple[Fraction, int]], Tuple[Fraction, dict]] = {}
    n_edges = 0
    n_unconstraining = 0

    def f_points():
        f = f_lo
        off = HALF if params.f_lattice == "half" else Fraction(0)
        k = f - off
        f = off + floor(k)
        if f < f_lo:
            f += 1
        while f <= f_hi:
            yield f
            f += 1

    for (j, eps) in nodes:
        for f in f_points():
            center = KType(xi, f, j, 1, eps)
            for direction in DIRECTIONS:
                nb = neighbor_of(center, direction)
                if nb is None or (nb.j, nb.eps) not in node_set:
                    continue
                zr = ratio_tagged(z_for(params, nb, eig), z_for(params, center, eig))
                mid = _case3_mid(params, center, nb, eig)
                xd = xi * (center.f - nb.f)
                if zr.kind == "finite":
                    if zr.value == -1:
                        n_unconstraining += 1
                        continue
                    delta = (zr.value * (mid + r) - (mid - r)) / (xd * (1 + zr.value))
                elif zr.kind == "pole":
                    delta = (mid + r) / xd        # p_plus must vanish
                else:
                    delta = (r - mid) / xd        # p_minus must vanish
                n_edges += 1
                key = ((j, eps), (nb.j, nb.eps))
                info = {"center": center.to_json(), "neighbor": nb.to_json(),
                        "delta": format_rational(delta)}
                prev = deltas.get(key)
                if prev is not None and prev[0] != delta:
                    raise InconsistentSystemError(
                        "conflicting difference constraints for "
                        f"{key[0]} - {key[1]}: {prev[0]} vs {delta}",
                        witness={"edge": info, "previous": prev[1],
                                 "residual": format_rational(delta - prev[0])})
                deltas[key] = (delta, info)

    # spanning solve over the (j, eps) graph; non-tree edges must close
    potential: Dict[Tuple[Fraction, int], Fraction] = {nodes[0]: Fraction(0)}
    frontier = [nodes[0]]
    adj: Dict[Tuple[Fraction, int], List[Tuple[Tuple[Fraction, int], Fraction]]] = {}
    for (a, b), (delta, _) in deltas.items():
        adj.setdefault(a, []).append((b, -delta))   # x_b = x_a - delta
        adj.setdefault(b, []).append((a, delta))
    while frontier:
        a = frontier.pop()
        for b, step in adj.get(a, ()):
            want = potential[a] + step
            have = potential.get(b)
            if have is None:
                potential[b] = want
                frontier.append(b)
            elif have != want:
                raise InconsistentSystemError(
                    f"difference cycle through {b} does not close",
                    witness={"node": [format_rational(b[0]), b[1]],
                             "residual": format_rational(want - have)})
    missing = [nd for nd in nodes if nd not in potential]
    if missing:
        raise InconsistentSystemError(
            f"calibration window leaves {len(missing)} classes unconstrained")

    shift, probe = _pin_constant(params, xi, f_points(), potential, eig)
    table = LTable({nd: 2 * (pot + shift) for nd, pot in potential.items()})

    issues = _reverify(params, xi, f_points, table, eig)
    return CalibrationResult(table, n_edges, n_unconstraining, probe, issues)


def _pin_constant(params, xi, f_points, potential, eig):
    """Fix the additive constant via one mixed-multiplicity relation.

    Uses the f+1 partner, whose z factor coincides with the block's shared
    factor, so the relation A2 b11 - E- b21 = -A2 reduces to rationals.
    """
    for f in f_points:
        for (j, eps), pot in sorted(potential.items()):
            alpha = KType(xi, f, j, 0, eps)
            beta = KType(xi, f + 1, j, 1, eps)
            try:
                b11, _, b21, _ = block_coefficients(params, alpha, eig=eig)
            except SingularCoefficientError:
                continue
            if b21 == 0:
                continue
            d_a = d_block(params, alpha, eig=eig)
            a2 = -xi * (alpha.f - beta.f) * d_a.d21
            if a2 == 0:
                continue
            # E- required by the relation, then solve for the constant in
            # E- = mid - r + xi (f - f') (d22 - (pot + t))
            e_minus = a2 * (b11 + 1) / b21
            mid = (alpha.f ** 2 - beta.f ** 2) / 2 - Fraction(params.n - 2, 2)
            xd = xi * (alpha.f - beta.f)
            # e_minus = mid - r + xd*d22 - xd*pot - xd*t
            t = (mid - params.r + xd * d_a.d22 - xd * pot - e_minus) / xd
            probe = {"alpha": alpha.to_json(), "beta": beta.to_json(),
                     "shift": format_rational(t)}
            return t, probe
    return Fraction(0), None


def _reverify(params, xi, f_points, table, eig):
    """Residuals of the solved table against both transition families."""
    issues: List[dict] = []
    keys = [k for k, _ in table.items()]
    for (j, eps) in keys:
        for f in f_points():
            center = KType(xi, f, j, 1, eps)
            for direction in DIRECTIONS:
                nb = neighbor_of(center, direction)
                if nb is None or table.lvalue(nb) is None:
                    continue
                data = case3_data(params, center, nb, table, eig)
                zr = ratio_tagged(z_for(params, nb, eig), z_for(params, center, eig))
                ok = _case3_edge_ok(data, zr)
                if not ok:
                    issues.append({"kind": "mult1-edge", "center": center.to_json(),
                                   "neighbor": nb.to_json()})
            alpha = KType(xi, f, j, 0, eps)
            for df, beta in case1_partners(alpha):
                if table.lvalue(beta) is None:
                    continue
                bad = _case1_residuals(params, alpha, beta, table, eig)
                if bad:
                    issues.append({"kind": "mixed-edge", "alpha": alpha.to_json(),
                                   "beta": beta.to_json(), "residuals": bad})
    return issues


def _case3_edge_ok(data, zr: ReducedValue) -> bool:
    if data.p_minus == 0 and data.p_plus == 0:
        return True  # the relation holds as 0 = 0 whatever the quotient is
    if zr.kind == "pole":
        return data.p_plus == 0
    if zr.kind == "zero":
        return data.p_minus == 0
    if data.p_plus == 0:
        return False
    return data.p_minus / data.p_plus == zr.value


def _case1_residuals(params, alpha: KType, beta: KType, l_table: LTable,
                     eig) -> Optional[dict]:
    """Check all four scalar mixed-multiplicity relations on one edge.

    Returns None when they hold (or the edge cannot be checked), else a dict
    of the nonzero residuals, keyed by which of the two relation forms
    (column and row form) each equation belongs to.
    """
    try:
        coeffs = block_coefficients(params, alpha, eig=eig)
    except SingularCoefficientError:
        return None
    try:
        data = case1_data(params, alpha, beta, l_table, eig)
    except MissingLError:
        return None
    J = alpha.eps * eig.dirac(params, alpha.j, alpha.eps)
    z_plus = z_value(params, alpha.f + 1, J, alpha.xi * alpha.eps)
    zr = ratio_tagged(z_for(params, beta, eig), z_plus)
    if zr.kind != "finite":
        return None
    rho = zr.value
    b11, b12, b21, b22 = coeffs
    eqs = {
        "column.1": b11 * data.a1 + b12 * data.e_minus + data.a1 * rho,
        "column.2": b21 * data.a1 + b22 * data.e_minus - data.e_plus * rho,
        "row.1": data.a2 * b11 - data.e_minus * b21 + data.a2 * rho,
        "row.2": data.a2 * b12 - data.e_minus * b22 + data.e_plus * rho,
    }
    bad = {k: format_rational(v) for k, v in eqs.items() if v != 0}
    return bad or None
