"""Shared fixtures-by-hand for the test modules."""

import rsentropy as rs


def monomial(power):
    """z -> z^power as an exact map."""
    num = [1] + [0] * power
    den = [0] * power + [1]
    return rs.make_map(num, den)


Z2 = monomial(2)
Z3 = monomial(3)
Z4 = monomial(4)
IDENTITY = rs.make_map([1, 0], [0, 1])


def affine_translation(a):
    """z -> z + a with an exact Gaussian-rational constant."""
    return rs.make_map([1, rs.GaussianRational.from_value(a)], [0, 1])


def scaling(a):
    """z -> a z."""
    return rs.make_map([rs.GaussianRational.from_value(a), 0], [0, 1])


def random_exact_map(rng, max_degree=3, coeff_bound=3):
    """A random coprime pair with small integer coefficients."""
    while True:
        d = int(rng.integers(1, max_degree + 1))
        num = [int(rng.integers(-coeff_bound, coeff_bound + 1)) for _ in range(d + 1)]
        den = [int(rng.integers(-coeff_bound, coeff_bound + 1)) for _ in range(d + 1)]
        try:
            return rs.make_map(num, den)
        except rs.errors.RsentropyError:
            continue


def brute_force_max_separated(orbits, epsilon, symbols_count):
    """Independent-set oracle: try every subset of the pool."""
    k = len(orbits)
    best = 0
    for mask in range(1, 1 << k):
        members = [orbits[i] for i in range(k) if mask >> i & 1]
        ok = True
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                a, b = members[i], members[j]
                gap = max(
                    rs.chordal_dist(p, q)
                    for p, q in zip(a.points, b.points)
                )
                separated = gap > epsilon
                if symbols_count:
                    separated = separated or a.symbols != b.symbols
                if not separated:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            best = max(best, bin(mask).count("1"))
    return best
