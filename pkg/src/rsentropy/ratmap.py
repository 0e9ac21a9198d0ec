"""Exact algebra of holomorphic self-maps of the sphere.

A map is a coprime pair of homogeneous forms (P, Q) of equal degree d >= 1
over the Gaussian rationals, stored in canonical form: the first nonzero
coefficient of the concatenated list (numerator then denominator, descending
monomial order) equals 1. Canonical forms make map equality an exact
coefficient comparison, which is the backbone of all multiplicity
bookkeeping downstream.

Inputs sharing a polynomial factor are rejected rather than reduced: the
degree is the central invariant of every entropy formula, so a silently
reduced map would hide a user error about the intended degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CommonFactor,
    DegenerateMap,
    DegreeMismatch,
    NotMobius,
    RootFindingFailure,
)
from .gaussian import GaussianRational, sqrt_exact
from .polynomial import (
    aberth_roots,
    form_add,
    form_d0,
    form_d1,
    form_eval_complex,
    form_eval_exact,
    form_is_zero,
    form_mul,
    form_scale,
    forms_coprime,
    strip_infinite_roots,
)
from .projective import INFINITY, ProjPoint, chordal_dist, normalize

#: numeric preimages within this chordal distance are merged as one root
ROOT_CLUSTER_TOL = 1e-7

#: every reported preimage must map back onto the target this closely
PREIMAGE_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class RationalMap:
    """Canonical coprime homogeneous pair; immutable and hashable."""

    num: tuple
    den: tuple
    degree: int
    exact_coeffs: bool = True
    num_float: tuple = field(compare=False, default=())
    den_float: tuple = field(compare=False, default=())

    def __repr__(self):
        return f"RationalMap(degree={self.degree})"

    def sort_key(self):
        coeffs = tuple(c.sort_key() for c in self.num + self.den)
        return (self.degree, coeffs)


def _coerce_coeffs(seq):
    """Convert a coefficient sequence, remembering whether floats appeared."""
    out = []
    exact = True
    for c in seq:
        if isinstance(c, complex) or isinstance(c, float):
            exact = False
        out.append(GaussianRational.from_value(c))
    return tuple(out), exact


def _canonicalize(num, den):
    for c in num + den:
        if not c.is_zero():
            inv = GaussianRational(1) / c
            return form_scale(num, inv), form_scale(den, inv)
    raise DegenerateMap("all coefficients vanish")


def _build(num, den, exact):
    num, den = _canonicalize(num, den)
    d = len(num) - 1
    return RationalMap(
        num=num,
        den=den,
        degree=d,
        exact_coeffs=exact,
        num_float=tuple(complex(c) for c in num),
        den_float=tuple(complex(c) for c in den),
    )


def make_map(num, den) -> RationalMap:
    """Validated map from homogeneous coefficient sequences.

    Sequences are read in descending monomial order (z0^d first) and must
    have equal length d+1 with d >= 1. Coefficients may be ints, Fractions,
    fraction strings, GaussianRationals, or floats; any float marks the map
    as numerically entered, which excludes it from exact relation detection.
    """
    num_c, exact_n = _coerce_coeffs(num)
    den_c, exact_d = _coerce_coeffs(den)
    if len(num_c) != len(den_c):
        raise DegreeMismatch(
            f"numerator degree {len(num_c) - 1} != denominator degree {len(den_c) - 1}")
    if len(num_c) < 2:
        raise DegenerateMap("homogeneous degree must be at least 1")
    if form_is_zero(num_c) or form_is_zero(den_c):
        raise DegenerateMap("one of the forms is identically zero")
    if not forms_coprime(num_c, den_c):
        raise CommonFactor("numerator and denominator share a polynomial factor")
    return _build(num_c, den_c, exact_n and exact_d)


def from_affine(num_affine, den_affine) -> RationalMap:
    """Map from affine polynomials num(z)/den(z), ascending coefficients.

    Homogenizes both to the common degree max(deg num, deg den), e.g.
    (2z+1)/(z-1) becomes the pair (2 z0 + z1, z0 - z1).
    """
    num_c, exact_n = _coerce_coeffs(num_affine)
    den_c, exact_d = _coerce_coeffs(den_affine)
    dn = _affine_degree(num_c)
    dd = _affine_degree(den_c)
    if dn < 0 or dd < 0:
        raise DegenerateMap("affine numerator or denominator is identically zero")
    d = max(dn, dd, 1)

    def homog(asc):
        return tuple(
            asc[d - k] if d - k < len(asc) else GaussianRational(0)
            for k in range(d + 1)
        )

    return make_map(homog(num_c), homog(den_c))


def _affine_degree(asc):
    for k in range(len(asc) - 1, -1, -1):
        if not asc[k].is_zero():
            return k
    return -1


def maps_equal(f: RationalMap, g: RationalMap) -> bool:
    """Exact equality of canonical forms."""
    return f.num == g.num and f.den == g.den


def compose(f: RationalMap, g: RationalMap) -> RationalMap:
    """The composite f o g by exact substitution; degree multiplies.

    Coprimality of the result is automatic (a common root of the composed
    pair would push forward to a common root of f), but the constructor
    still runs the gcd check as a safety net.
    """
    dn = f.degree
    pg, qg = g.num, g.den
    p_pows = [(GaussianRational(1),)]
    q_pows = [(GaussianRational(1),)]
    for _ in range(dn):
        p_pows.append(form_mul(p_pows[-1], pg))
        q_pows.append(form_mul(q_pows[-1], qg))

    def substitute(form):
        out = None
        for k, c in enumerate(form):
            if c.is_zero():
                continue
            term = form_scale(form_mul(p_pows[dn - k], q_pows[k]), c)
            out = term if out is None else form_add(out, term)
        if out is None:
            raise DegenerateMap("zero form in composition")
        return out

    num = substitute(f.num)
    den = substitute(f.den)
    if not forms_coprime(num, den):
        raise CommonFactor("composition produced a common factor (unexpected)")
    return _build(num, den, f.exact_coeffs and g.exact_coeffs)


def evaluate(f: RationalMap, p: ProjPoint) -> ProjPoint:
    """Image point, canonical.

    Fast Horner evaluation of both forms; if the image vector nearly cancels
    (its norm falls below 1e-8 of the coefficient scale), the evaluation is
    redone once in exact arithmetic at the dyadic coordinates of p, which
    pins the result to full precision.
    """
    w0 = form_eval_complex(f.num_float, p.h0, p.h1)
    w1 = form_eval_complex(f.den_float, p.h0, p.h1)
    scale = max(
        sum(abs(c) for c in f.num_float),
        sum(abs(c) for c in f.den_float),
    )
    if math.hypot(abs(w0), abs(w1)) < 1e-8 * scale:
        z0 = GaussianRational(Fraction(p.h0.real), Fraction(p.h0.imag))
        z1 = GaussianRational(Fraction(p.h1.real), Fraction(p.h1.imag))
        w0 = complex(form_eval_exact(f.num, z0, z1))
        w1 = complex(form_eval_exact(f.den, z0, z1))
    return normalize(w0, w1)


def preimages(f: RationalMap, q: ProjPoint) -> list[tuple[ProjPoint, int]]:
    """All solutions of f(x) = q with multiplicities summing to deg(f).

    Solves the degree-d form q1 P - q0 Q: degree deficiency contributes
    roots at [1 : 0], the rest come from the simultaneous iteration on the
    dehomogenized polynomial. Roots within chordal distance 1e-7 merge into
    one cluster with summed multiplicity; every representative is verified
    to map back onto q within 1e-9.
    """
    d = f.degree
    cross = [q.h1 * f.num_float[k] - q.h0 * f.den_float[k] for k in range(d + 1)]
    finite_desc, inf_mult = strip_infinite_roots(cross)

    points: list[ProjPoint] = []
    if len(finite_desc) > 1:
        if len(finite_desc) == 2:
            roots = [-finite_desc[1] / finite_desc[0]]
        else:
            roots = aberth_roots(list(reversed(finite_desc)))
        points.extend(normalize(z, 1.0) for z in roots)
    points.extend([INFINITY] * inf_mult)

    clusters: list[list[ProjPoint]] = []
    for pt in sorted(points, key=lambda r: (r.h0.real, r.h1.real, r.h1.imag)):
        for cluster in clusters:
            if chordal_dist(cluster[0], pt) <= ROOT_CLUSTER_TOL:
                cluster.append(pt)
                break
        else:
            clusters.append([pt])

    out = []
    for cluster in clusters:
        rep = cluster[0]
        if chordal_dist(evaluate(f, rep), q) > PREIMAGE_RESIDUAL_TOL:
            raise RootFindingFailure(
                "preimage residual check failed; target may be ill-conditioned")
        out.append((rep, len(cluster)))
    out.sort(key=lambda rm: (-rm[1], rm[0].h0.real, rm[0].h1.real, rm[0].h1.imag))
    if sum(m for _, m in out) != d:
        raise RootFindingFailure("preimage multiplicities do not sum to the degree")
    return out


def fs_jacobian(f: RationalMap, p: ProjPoint) -> float:
    """Area-distortion factor of f at p for the chordal geometry.

    Computed chart-free from the homogeneous Wronskian W = P_z0 Q_z1 -
    P_z1 Q_z0 as |W(p)|^2 / (d^2 (|P(p)|^2 + |Q(p)|^2)^2), which equals the
    affine-chart expression |f'(z)|^2 (1+|z|^2)^2 / (1+|f(z)|^2)^2 in
    whichever chart p is best conditioned.
    """
    d = f.degree
    p0 = tuple(complex(c) for c in form_d0(f.num))
    p1 = tuple(complex(c) for c in form_d1(f.num))
    q0 = tuple(complex(c) for c in form_d0(f.den))
    q1 = tuple(complex(c) for c in form_d1(f.den))
    if d == 1:
        w = p0[0] * q1[0] - p1[0] * q0[0]
    else:
        w = (
            form_eval_complex(p0, p.h0, p.h1) * form_eval_complex(q1, p.h0, p.h1)
            - form_eval_complex(p1, p.h0, p.h1) * form_eval_complex(q0, p.h0, p.h1)
        )
    val0 = form_eval_complex(f.num_float, p.h0, p.h1)
    val1 = form_eval_complex(f.den_float, p.h0, p.h1)
    denom = (abs(val0) ** 2 + abs(val1) ** 2) ** 2 * d * d
    return abs(w) ** 2 / denom


@dataclass(frozen=True)
class MobiusClass:
    """Conjugacy type of a degree-1 map with its fixed-point data."""

    kind: str  # identity | elliptic | parabolic | loxodromic
    fixed_points: tuple
    multiplier: complex | None


def classify_mobius(f: RationalMap) -> MobiusClass:
    """Type by the normalized trace tr^2/det; exact when coefficients allow.

    For the non-identity kinds the multiplier reported is the fixed-point
    derivative with modulus >= 1 (ties broken toward nonnegative imaginary
    part), so z -> 2z reports multiplier 2.
    """
    if f.degree != 1:
        raise NotMobius(f"degree {f.degree} map is not a Mobius transformation")
    a, b = f.num
    c, d = f.den
    det = a * d - b * c
    if b.is_zero() and c.is_zero() and a == d:
        return MobiusClass(kind="identity", fixed_points=(), multiplier=None)
    tr = a + d
    sigma = (tr * tr) / det  # projective invariant
    if sigma == GaussianRational(4):
        kind = "parabolic"
    elif sigma.im == 0 and 0 <= sigma.re < 4:
        kind = "elliptic"
    else:
        kind = "loxodromic"

    fixed = _mobius_fixed_points(a, b, c, d, kind)
    if kind == "parabolic":
        return MobiusClass(kind=kind, fixed_points=fixed, multiplier=1.0 + 0.0j)

    ca, cc, cd = complex(a), complex(c), complex(d)
    cdet = complex(det)
    mults = []
    for pt in fixed:
        if pt.is_infinity():
            mults.append(ca / cd if cd != 0 else complex("inf"))
        else:
            z = pt.affine()
            mults.append(cdet / (cc * z + cd) ** 2)
    lam = max(mults, key=lambda m: (abs(m), m.imag))
    return MobiusClass(kind=kind, fixed_points=fixed, multiplier=lam)


def _mobius_fixed_points(a, b, c, d, kind):
    """Roots of c z^2 + (d - a) z - b = 0, exact when the discriminant is."""
    if c.is_zero():
        pts = [INFINITY]
        if kind != "parabolic":
            z = b / (d - a)
            pts.append(normalize(complex(z), 1.0))
        return tuple(pts)
    if kind == "parabolic":
        z = (a - d) / (GaussianRational(2) * c)
        return (normalize(complex(z), 1.0),)
    disc = (d - a) * (d - a) + GaussianRational(4) * b * c
    root = sqrt_exact(disc)
    two_c = GaussianRational(2) * c
    if root is not None:
        z1 = (a - d + root) / two_c
        z2 = (a - d - root) / two_c
        return (normalize(complex(z1), 1.0), normalize(complex(z2), 1.0))
    w = complex(disc) ** 0.5
    z1 = (complex(a) - complex(d) + w) / complex(two_c)
    z2 = (complex(a) - complex(d) - w) / complex(two_c)
    return (normalize(z1, 1.0), normalize(z2, 1.0))
