import numpy as np
import pytest

from treequiver import corpus
from treequiver.counterexample import (CounterexampleError, build_witness_family, forced_components,
                                       interchange_check, root_inclusion, source_conditions_check,
                                       sum_is_direct, forcing_certificate)
from treequiver.linalg import FgModule
from treequiver.representation import (Representation, check_morphism, costalk_functor, direct_sum, injective_envelope,
                                       is_injective_rep, is_morphism, representation, stalk_functor)

K2 = FgModule((2,))


# ---------------------------------------------------------------------------
# source conditions


@pytest.mark.parametrize("name", sorted(corpus.FINITE_TREES))
def test_source_conditions_on_indecomposables(name):
    Q = corpus.FINITE_TREES[name]()
    for v in Q.vertices:
        assert source_conditions_check(Q, costalk_functor(v, K2, Q, 2)).overall


def test_source_conditions_failures():
    A2 = corpus.a2()
    r = source_conditions_check(A2, stalk_functor("w", K2, A2, 2))
    assert not r.overall and r.failures() == ["v"] and not r.vertices["v"].cond_ii
    X = Representation(A2, 4, {"v": FgModule((2,)), "w": FgModule(())}, {})
    r = source_conditions_check(A2, X)
    assert not r.vertices["v"].cond_i
    with pytest.raises(CounterexampleError):
        source_conditions_check(corpus.a3(), X)


def test_source_conditions_match_injectivity(rng):
    for _ in range(30):
        Q = corpus.random_tree(rng, int(rng.integers(1, 5)))
        dims = {v: int(rng.integers(0, 3)) for v in Q.vertices}
        X = representation(Q, 2, dims, {a.id: rng.integers(0, 2, size=(dims[a.dst], dims[a.src]))
                                        for a in Q.arrows})
        assert source_conditions_check(Q, X).overall == is_injective_rep(X)[0]


# ---------------------------------------------------------------------------
# witness families


def test_binary_family_n3():
    F = build_witness_family(corpus.binary_scheme(), 2, 3, 5)
    assert F.N == 3 and len(F.envelopes) == 3 and F.depth == 5
    assert check_morphism(F.phi) == []
    assert [F.vertex(j) for j in (1, 2, 3)] == [".R.L", ".R.R.L", ".R.R.R.L"]


def test_family_n1_is_degenerate():
    F = build_witness_family(corpus.binary_scheme(), 2, 1)
    assert F.envelopes[0].total_dimension() == 0
    assert all(not C.any() for C in F.phi.components.values())


def test_family_errors():
    with pytest.raises(CounterexampleError):
        build_witness_family(corpus.a_infinity_scheme(), 2, 3)
    with pytest.raises(CounterexampleError):
        build_witness_family(corpus.binary_scheme(), 2, 3, 3)


@pytest.mark.parametrize("name", corpus.NON_BARREN)
def test_family_invariants(name):
    S = corpus.SCHEMES[name]()
    for N in range(1, 5):
        F = build_witness_family(S, 2, N)
        assert sum_is_direct(F)
        assert is_morphism(root_inclusion(F))
        assert is_morphism(F.phi)
        for i, E in enumerate(F.envelopes, 1):
            assert is_injective_rep(E)[0]
            tail = F.stalks[i:]
            if tail:
                # envelope oracle: E is the envelope of the tail sum, dimension for dimension
                E2, _ = injective_envelope(direct_sum(tail, F.quiver, 2))
                assert E2.dimension_vector() == E.dimension_vector()


# ---------------------------------------------------------------------------
# forced components


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_forced_sets_binary(N):
    F = build_witness_family(corpus.binary_scheme(), 2, N)
    reports = forced_components(F)
    assert [sorted(r.forced) for r in reports] == [list(range(1, i + 1)) for i in range(1, N)]
    assert all(r.lift_exists for r in reports)
    assert all(r.support == r.forced for r in reports)


@pytest.mark.parametrize("name", corpus.NON_BARREN)
def test_forced_sets_all_schemes(name):
    S = corpus.SCHEMES[name]()
    for m in (2, 3):
        F = build_witness_family(S, m, 4)
        assert [sorted(r.forced) for r in forced_components(F)] == [[1], [1, 2], [1, 2, 3]]


# ---------------------------------------------------------------------------
# certificates


def test_binary_certificate():
    cert = forcing_certificate(corpus.binary_scheme(), 2, 5)
    assert cert.forced_counts == [0, 1, 2, 3, 4]
    assert cert.conditions_hold and cert.growing
    js = cert.to_json()
    assert js["forced_counts"] == [0, 1, 2, 3, 4] and len(js["stages"]) == 5
    assert "forced counts: [0, 1, 2, 3, 4]" in cert.summary()


def test_certificate_m3_same_shape():
    assert forcing_certificate(corpus.binary_scheme(), 3, 4).forced_counts == [0, 1, 2, 3]


def test_certificate_rejects_barren():
    with pytest.raises(CounterexampleError):
        forcing_certificate(corpus.three_branch_scheme(), 2, 3)


def test_certificate_fixed_depth():
    cert = forcing_certificate(corpus.binary_scheme(), 2, 3, depth=6)
    assert [s.depth for s in cert.stages] == [6, 6, 6]
    assert cert.forced_counts == [0, 1, 2]


# ---------------------------------------------------------------------------
# interchange of finite sums and products


def test_interchange_examples():
    assert interchange_check(2, 3, 2, modules=[[K2, K2]] * 3).ok
    for n in (1, 2, 5):
        assert interchange_check(1, n, 3).ok
    mixed = [[FgModule((2,)), FgModule((4,)), FgModule((2, 4))], [FgModule((4, 4)), FgModule(()), FgModule((2,))]]
    r = interchange_check(3, 2, 4, modules=mixed)
    assert r.ok and "star" in r.note


def test_interchange_random(seed):
    for s in range(20):
        assert interchange_check(1 + s % 4, 1 + s % 3, [2, 4, 6, 12][s % 4], seed=seed + s).ok
