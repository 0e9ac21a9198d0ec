import itertools

import numpy as np
import pytest

import rsentropy as rs
from rsentropy.errors import EmptyPool, MixedNu
from util import IDENTITY, Z2, Z3, brute_force_max_separated


def corr(*maps, mults=None):
    return rs.build_correspondence(rs.GeneratorSet(list(maps)), mults)


def circle_orbits(nu, count=8):
    starts = [rs.point_at(np.exp(2j * np.pi * k / count)) for k in range(count)]
    return rs.forward_orbits(corr(Z2), starts, nu)


def test_single_orbit_pool():
    pool = rs.forward_orbits(corr(Z2), rs.sample_points(1, 0), 3)
    for mode in ("dinh_sibony", "friedland"):
        res = rs.count_separated(pool, 0.3, mode)
        assert res.count == 1 and res.exact


def test_decorated_identity_pool():
    # all 2^nu label decorations of a single constant itinerary
    nu = 4
    pool = rs.forward_orbits(corr(IDENTITY, mults=[2]), [rs.point_at(1)], nu)
    ds = rs.count_separated(pool, 0.1, "dinh_sibony")
    fr = rs.count_separated(pool, 0.1, "friedland")
    assert ds.count == 2 ** nu and ds.exact
    assert fr.count == 1


def test_exact_count_matches_brute_force():
    pool = circle_orbits(3)
    for eps in (0.3, 0.1):
        res = rs.count_separated(pool, eps, "dinh_sibony")
        assert res.exact
        assert res.count == brute_force_max_separated(pool, eps, symbols_count=True)
        fr = rs.count_separated(pool, eps, "friedland")
        assert fr.count == brute_force_max_separated(pool, eps, symbols_count=False)


def test_per_word_mode():
    pool = rs.forward_orbits(corr(Z2, Z3), rs.sample_points(3, 1), 2)
    res = rs.count_separated(pool, 0.2, "per_word", word=(1, 2))
    assert res.count <= 3
    assert res.mode == "per_word(1, 2)"
    with pytest.raises(EmptyPool):
        rs.count_separated(pool, 0.2, "per_word", word=(9, 9))


def test_pool_validation():
    pool = circle_orbits(2)
    with pytest.raises(EmptyPool):
        rs.count_separated([], 0.2, "friedland")
    with pytest.raises(MixedNu):
        rs.count_separated(pool + circle_orbits(3), 0.2, "friedland")
    with pytest.raises(ValueError):
        rs.count_separated(pool, 1.5, "friedland")


def test_monotonicity_in_epsilon_exact():
    pool = circle_orbits(3)
    counts = [rs.count_separated(pool, eps, "dinh_sibony").count
              for eps in (0.02, 0.05, 0.1, 0.2, 0.4)]
    assert counts == sorted(counts, reverse=True)


def test_monotonicity_under_pool_extension():
    big = circle_orbits(3, count=14)
    for eps in (0.1, 0.3):
        small = rs.count_separated(big[:7], eps, "dinh_sibony")
        full = rs.count_separated(big, eps, "dinh_sibony")
        assert full.count >= small.count
    # greedy path with order-preserving extension
    grown = rs.forward_orbits(corr(Z2), rs.sample_points(40, 2), 3)
    c1 = rs.count_separated(grown[:25], 0.1, "friedland", seed=None, exact_cutoff=5)
    c2 = rs.count_separated(grown, 0.1, "friedland", seed=None, exact_cutoff=5)
    assert c2.count >= c1.count
    assert not c2.exact


def test_friedland_below_dinh_sibony():
    pool = rs.forward_orbits(corr(Z2, Z3), rs.sample_points(2, 5), 2)
    for eps in (0.05, 0.1, 0.2):
        ds = rs.count_separated(pool, eps, "dinh_sibony")
        fr = rs.count_separated(pool, eps, "friedland")
        assert fr.count <= ds.count


def test_sum_up_partition_identity():
    pool = rs.forward_orbits(corr(Z2, Z3), rs.sample_points(2, 7), 2)
    per_word, joint, ok = rs.sum_up_partition(pool, 0.2)
    assert ok and joint == sum(per_word.values())
    assert set(per_word) == set(itertools.product((1, 2), repeat=2))


def test_sum_up_single_word():
    pool = rs.forward_orbits(corr(Z2), rs.sample_points(5, 8), 3)
    per_word, joint, ok = rs.sum_up_partition(pool, 0.1)
    assert ok and list(per_word.values()) == [joint]


def test_sum_up_symbol_only_separation():
    nu = 3
    pool = rs.forward_orbits(corr(IDENTITY, mults=[2]), [rs.point_at(1)], nu)
    per_word, joint, ok = rs.sum_up_partition(pool, 0.4)
    assert ok
    assert joint == 2 ** nu and all(v == 1 for v in per_word.values())


def test_spanning_examples():
    single = [rs.forward_orbits(corr(Z2), rs.sample_points(1, 0), 3)[0].as_path()]
    assert rs.spanning_number(single, 0.2, 3) == 1

    nu = 4
    pool = [o.as_path() for o in rs.forward_orbits(corr(IDENTITY, mults=[2]), [rs.point_at(1)], nu)]
    assert rs.spanning_number(pool, 0.5, nu) == 2 ** nu
    assert rs.spanning_number(pool, 1.0, nu) == 1  # everything within diameter


def test_spanning_greedy_matches_exact_on_classes():
    nu = 6
    pool = [o.as_path() for o in rs.forward_orbits(corr(IDENTITY, mults=[2]), [rs.point_at(1)], nu)]
    count, exact = rs.spanning_number(pool, 0.5, nu, return_details=True)
    assert count == 2 ** nu and not exact  # greedy, but classes are disjoint


def test_c_of_eps_edges():
    assert rs.c_of_eps(0.25) == 1   # log2(4) integral: strictly-less rule
    assert rs.c_of_eps(0.2) == 2
    assert rs.c_of_eps(0.1) == 3
    assert rs.c_of_eps(0.05) == 4
    assert rs.c_of_eps(0.02) == 5
    assert rs.c_of_eps(0.5) == 0


def _sandwich_pool(gens, eps, nu, n_starts, n_words, seed):
    rng = np.random.default_rng(seed)
    depth = nu + rs.c_of_eps(eps)
    words = list(itertools.product(range(1, len(gens.maps) + 1), repeat=depth))
    pick_idx = rng.choice(len(words), size=min(n_words, len(words)), replace=False)
    paths = []
    for s in rs.sample_points(n_starts, seed + 1):
        for i in sorted(pick_idx):
            w = words[i]
            pts = [s]
            for a in w:
                pts.append(rs.evaluate(gens.maps[a - 1], pts[-1]))
            paths.append(rs.TruncatedPath(points=tuple(pts), symbols=w))
    return paths


def test_sandwich_chain_holds():
    gens = rs.GeneratorSet([Z2, Z3])
    cases = [(0.2, 2, 2, 6, 11), (0.1, 2, 3, 5, 12), (0.05, 2, 1, 15, 13)]
    for eps, nu, n_starts, n_words, seed in cases:
        paths = _sandwich_pool(gens, eps, nu, n_starts, n_words, seed)
        res = rs.sandwich_counts(paths, eps, nu)
        assert res["N_nu"] <= res["M_nu"] <= res["N_ext"]
