import pytest

from reduktor.corpus import PROFILES, corpus_instance, generate_corpus
from reduktor.groebner import krull_dimension


def test_empty():
    assert generate_corpus(0) == []
    with pytest.raises(ValueError):
        generate_corpus(-1)
    with pytest.raises(ValueError):
        corpus_instance(0, 0, "cubic")


def test_reproducible_and_prefix_stable():
    a = generate_corpus(12, seed=4)
    b = generate_corpus(20, seed=4)
    assert [P.gens for P in a] == [P.gens for P in b[:12]]
    assert [P.gens for P in generate_corpus(12, seed=5)] != [P.gens for P in a]


def test_shape_limits():
    for P in generate_corpus(60, seed=1):
        assert P.nvars <= 4 and len(P.gens) <= 4
        assert max(P.degrees) <= 4 and min(P.degrees) >= 2
        assert all(g.is_homogeneous() for g in P.gens)
        assert P.dim >= 0


def test_mixed_cycles_profiles():
    assert [P.meta["profile"] for P in generate_corpus(8)] == list(PROFILES) * 2


def test_monomial_profile():
    for P in generate_corpus(15, seed=2, profile="monomial"):
        assert all(len(g) == 1 for g in P.gens)


def test_binomial_profile():
    for P in generate_corpus(15, seed=2, profile="binomial"):
        assert all(len(g) == 2 for g in P.gens)


def test_complete_intersection_profile():
    for P in generate_corpus(20, seed=2, profile="complete-intersection"):
        assert krull_dimension(P.ideal) == P.nvars - len(P.gens) == P.nvars - P.meta["codim"]
        assert P.dim >= 1
