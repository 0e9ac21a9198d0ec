import pytest

import rsentropy as rs
from rsentropy.errors import BudgetExceeded, DuplicateGenerator, LengthMismatch
from util import Z2, Z3, Z4, monomial


def test_build_correspondence_basic():
    c = rs.build_correspondence(rs.GeneratorSet([Z2, Z3]))
    assert len(c.components) == 2 and c.M == 2


def test_build_correspondence_doubled():
    c = rs.build_correspondence(rs.GeneratorSet([Z2]), [2])
    assert c.M == 2
    assert rs.d_top(c) == 4
    assert rs.support_degree(c) == 2


def test_duplicate_generator_rejected():
    with pytest.raises(DuplicateGenerator):
        rs.GeneratorSet([Z2, Z3, rs.make_map([2, 0, 0], [0, 0, 2])])


def test_multiplicity_length_checked():
    with pytest.raises(LengthMismatch):
        rs.build_correspondence(rs.GeneratorSet([Z2, Z3]), [1])


def test_compose_corr_monomials():
    a = rs.build_correspondence(rs.GeneratorSet([Z2]))
    b = rs.build_correspondence(rs.GeneratorSet([Z3]))
    c = rs.compose_corr(a, b)
    assert len(c.components) == 1
    f, m = c.components[0]
    assert m == 1 and rs.maps_equal(f, monomial(6))


def test_compose_corr_relation_multiplicity():
    c = rs.build_correspondence(rs.GeneratorSet([Z2, Z4]))
    sq = rs.compose_corr(c, c)
    profile = [(f.degree, m) for f, m in sq.components]
    assert profile == [(4, 1), (8, 2), (16, 1)]
    assert rs.d_top(sq) == 36 == rs.d_top(c) ** 2
    assert rs.support_degree(sq) == 28 < 36


def test_compose_corr_free_pair():
    z2p1 = rs.from_affine([1, 0, 1], [1])
    c = rs.build_correspondence(rs.GeneratorSet([Z2, z2p1]))
    sq = rs.compose_corr(c, c)
    assert [m for _, m in sq.components] == [1, 1, 1, 1]


def test_d_top_examples():
    assert rs.d_top(rs.build_correspondence(rs.GeneratorSet([Z2, Z3]))) == 5
    assert rs.support_degree(rs.build_correspondence(rs.GeneratorSet([Z2, Z3]))) == 5


def test_d_top_multiplicative_on_random_powers():
    c = rs.build_correspondence(rs.GeneratorSet([Z2, Z3]))
    for nu in (2, 3):
        assert rs.d_top(rs.corr_pow(c, nu)) == rs.d_top(c) ** nu


def test_support_degree_vs_relations():
    c = rs.build_correspondence(rs.GeneratorSet([Z2, Z4]))
    gens = rs.GeneratorSet([Z2, Z4])
    for nu in (1, 2, 3, 4):
        power = rs.corr_pow(c, nu) if nu > 1 else c
        ledger = rs.enumerate_words(gens, nu)
        strict = rs.support_degree(power) < rs.d_top(c) ** nu
        has_relation = any(
            rs.enumerate_words(gens, k).relations > 0 for k in range(1, nu + 1)
        )
        assert rs.support_degree(power) <= rs.d_top(c) ** nu
        assert strict == has_relation
        # the word ledger at length nu matches the composed component multiset
        by_map = {f: m for f, m in power.components}
        assert len(by_map) == ledger.distinct
        for f, (mult, _) in ledger.entries.items():
            assert by_map[f] == mult


def test_enumerate_words_examples():
    # monomial generators commute (z^a o z^b = z^(ab)), so {z^2, z^3} already
    # carries one length-2 relation; a free pair needs a non-monomial member
    mono = rs.enumerate_words(rs.GeneratorSet([Z2, Z3]), 2)
    assert mono.distinct == 3 and mono.relations == 1

    z2p1 = rs.from_affine([1, 0, 1], [1])
    free = rs.enumerate_words(rs.GeneratorSet([Z2, z2p1]), 2)
    assert free.distinct == 4 and free.relations == 0

    rel = rs.enumerate_words(rs.GeneratorSet([Z2, Z4]), 2)
    assert rel.distinct == 3 and rel.relations == 1
    assert rel.total_words == 4

    single = rs.enumerate_words(rs.GeneratorSet([Z2]), 5)
    assert single.distinct == 1
    (mult, words), = single.entries.values()
    assert mult == 1 and len(words) == 1


def test_enumerate_words_total_is_power():
    ledger = rs.enumerate_words(rs.GeneratorSet([Z2, Z3]), 3)
    assert sum(m for m, _ in ledger.entries.values()) == 2 ** 3


def test_enumerate_words_budget():
    with pytest.raises(BudgetExceeded):
        rs.enumerate_words(rs.GeneratorSet([Z2, Z3]), 4, word_budget=10)
    with pytest.raises(BudgetExceeded):
        rs.enumerate_words(rs.GeneratorSet([Z2, Z3]), 10, degree_budget=100)


def test_inexact_generators_disable_relation_detection():
    f = rs.make_map([1.0, 0.0, 0.0], [0.0, 0.0, 1.0])
    g = rs.make_map([1.0, 0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0, 1.0])
    ledger = rs.enumerate_words(rs.GeneratorSet([f, g]), 2)
    assert not ledger.exact
    assert ledger.relations is None
    assert ledger.distinct == 4  # every word its own entry
