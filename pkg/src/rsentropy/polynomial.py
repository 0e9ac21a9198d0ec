"""Binary forms over the Gaussian rationals and numeric root finding.

A homogeneous form of degree d in (z0, z1) is a tuple of d+1 coefficients in
descending z0 order: index k holds the coefficient of z0^(d-k) z1^k. The
affine chart is z = z0/z1, so dehomogenizing gives the ascending coefficient
list read back to front, and a vanishing index-0 coefficient means a root at
[1 : 0].

The numeric root finder is a simultaneous (Aberth-Ehrlich) iteration with a
residual stopping rule and one Newton polish per root; companion-matrix
eigenvalues are deliberately left to the test suite as an independent check.
"""

from __future__ import annotations

import cmath
import math

from .errors import RootFindingFailure
from .gaussian import GaussianRational, ZERO

Form = tuple  # tuple[GaussianRational, ...]

ABERTH_TOL = 1e-12
ABERTH_MAX_SWEEPS = 200


# -- exact form algebra --------------------------------------------------------


def form_degree(form: Form) -> int:
    return len(form) - 1

def form_is_zero(form: Form) -> bool:
    return all(c.is_zero() for c in form)


def form_scale(form: Form, s: GaussianRational) -> Form:
    return tuple(c * s for c in form)


def form_add(a: Form, b: Form) -> Form:
    if len(a) != len(b):
        raise ValueError("cannot add forms of different degree")
    return tuple(x + y for x, y in zip(a, b))


def form_mul(a: Form, b: Form) -> Form:
    """Convolution product; skips zero coefficients (forms are often sparse)."""
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero():
            continue
        for j, cb in enumerate(b):
            if cb.is_zero():
                continue
            out[i + j] = out[i + j] + ca * cb
    return tuple(out)


def form_pow(base: Form, n: int) -> Form:
    result = (GaussianRational(1),)
    for _ in range(n):
        result = form_mul(result, base)
    return result


def form_d0(form: Form) -> Form:
    """Partial derivative with respect to z0."""
    d = form_degree(form)
    return tuple(form[k] * (d - k) for k in range(d))


def form_d1(form: Form) -> Form:
    """Partial derivative with respect to z1."""
    d = form_degree(form)
    return tuple(form[k] * k for k in range(1, d + 1))


def form_eval_exact(form: Form, z0: GaussianRational, z1: GaussianRational) -> GaussianRational:
    acc = form[0]
    zp = GaussianRational(1)
    for k in range(1, len(form)):
        zp = zp * z1
        acc = acc * z0 + form[k] * zp
    return acc


def form_eval_complex(coeffs, z0: complex, z1: complex) -> complex:
    """Horner evaluation of a form given as complex coefficients."""
    acc = coeffs[0]
    zp = 1.0 + 0.0j
    for k in range(1, len(coeffs)):
        zp = zp * z1
        acc = acc * z0 + coeffs[k] * zp
    return acc


def dehomogenize(form: Form) -> list:
    """Affine polynomial p(z) = form(z, 1) as ascending coefficients."""
    return list(reversed(form))


# -- univariate gcd over the Gaussian rationals ---------------------------------


def poly_trim(coeffs: list) -> list:
    """Drop zero leading (highest-degree) coefficients of an ascending list."""
    out = list(coeffs)
    while out and out[-1].is_zero():
        out.pop()
    return out


def poly_gcd(a: list, b: list) -> list:
    """Monic gcd of ascending-coefficient polynomials over Q(i)."""
    a = poly_trim(a)
    b = poly_trim(b)
    while b:
        a, b = b, _poly_mod(a, b)
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _poly_mod(a: list, b: list) -> list:
    r = list(a)
    db, lead = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        factor = r[-1] / lead
        shift = len(r) - 1 - db
        for i in range(db + 1):
            r[shift + i] = r[shift + i] - factor * b[i]
        r.pop()
        while r and r[-1].is_zero():
            r.pop()
    return r


def forms_coprime(p: Form, q: Form) -> bool:
    """True iff the two same-degree forms share no projective root.

    Shared roots are either affine (nontrivial univariate gcd) or the point
    [1 : 0] (both index-0 coefficients vanish).
    """
    if p[0].is_zero() and q[0].is_zero():
        return False
    g = poly_gcd(dehomogenize(p), dehomogenize(q))
    return len(g) <= 1


# -- numeric root finding --------------------------------------------------------


def aberth_roots(coeffs_ascending, tol: float = ABERTH_TOL,
                 max_sweeps: int = ABERTH_MAX_SWEEPS) -> list[complex]:
    """All complex roots of an ascending-coefficient polynomial.

    Simultaneous third-order iteration from a deterministic circle of start
    values; stops when every residual |p(z_k)| falls below tol relative to
    sum_k |c_k| |z|^k, then applies one Newton polish per root.
    """
    coeffs = [complex(c) for c in coeffs_ascending]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    m = len(coeffs) - 1
    if m <= 0:
        return []
    if m == 1:
        return [-coeffs[0] / coeffs[1]]

    lead = coeffs[-1]
    radius = 1.0 + max(abs(c / lead) for c in coeffs[:-1])
    center = -coeffs[-2] / (m * lead)
    roots = [
        center + 0.9 * radius * cmath.exp(2j * math.pi * (k + 0.35) / m)
        for k in range(m)
    ]
    deriv = [coeffs[k] * k for k in range(1, m + 1)]

    def p_of(z):
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def dp_of(z):
        acc = 0j
        for c in reversed(deriv):
            acc = acc * z + c
        return acc

    def residual_ok(z):
        # backward-error scale max(1, |z|)^k keeps the test meaningful at
        # roots near 0 (e.g. the monomial z^m, where sum |c_k| |z|^k would
        # equal |p(z)| identically and certify nothing)
        scale = 0.0
        zp = 1.0
        az = max(abs(z), 1.0)
        for c in coeffs:
            scale += abs(c) * zp
            zp *= az
        return abs(p_of(z)) <= tol * max(scale, 1e-300)

    for _ in range(max_sweeps):
        moved = 0.0
        for i in range(m):
            z = roots[i]
            pz = p_of(z)
            dz = dp_of(z)
            if dz == 0:
                roots[i] = z + 1e-8 * (1.0 + abs(z))
                moved = math.inf
                continue
            w = pz / dz
            s = 0j
            for j in range(m):
                if j != i:
                    diff = z - roots[j]
                    if diff == 0:
                        diff = 1e-14 * (1.0 + abs(z))
                    s += 1.0 / diff
            denom = 1.0 - w * s
            step = w if denom == 0 else w / denom
            roots[i] = z - step
            moved = max(moved, abs(step))
        # require localization as well as small residuals: at a multiple
        # root the residual passes while the iterates still straddle it at
        # ~tol^(1/mult), which would defeat the downstream cluster merge
        if moved <= 1e-9 * (1.0 + radius) and all(residual_ok(z) for z in roots):
            break
        if moved <= 1e-15 * (1.0 + radius):
            break  # stagnated; the residual check below decides
    if not all(residual_ok(z) for z in roots):
        raise RootFindingFailure(
            f"simultaneous iteration did not converge for degree {m}")

    polished = []
    for z in roots:
        dz = dp_of(z)
        if dz != 0:
            z = z - p_of(z) / dz
        polished.append(z)
    return polished


def strip_infinite_roots(coeffs_descending, rel_tol: float = 1e-13):
    """Split a possibly degree-deficient form into (finite part, inf count).

    Input is a complex coefficient list in descending z0 order; leading
    entries negligible relative to the largest coefficient are treated as
    exact zeros, each contributing one root at [1 : 0].
    """
    biggest = max(abs(c) for c in coeffs_descending)
    if biggest == 0.0:
        raise RootFindingFailure("zero form has no well-defined roots")
    idx = 0
    while idx < len(coeffs_descending) - 1 and abs(coeffs_descending[idx]) <= rel_tol * biggest:
        idx += 1
    finite = list(coeffs_descending[idx:])
    return finite, idx
