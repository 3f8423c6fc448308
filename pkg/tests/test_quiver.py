import numpy as np
import pytest

from treequiver import corpus
from treequiver.quiver import (CyclicQuiverError, FiniteQuiver, RationalTreeScheme, TreeError, address_name,
                               connected, infinite_antichain, is_barren, is_prefix, is_right_rooted,
                               is_tree, level_counts, parse_address, path_space, paths_between,
                               structural_growth_witness, tree_signature, unfold, validate_tree)


def unfold_counts(S, depth):
    """Level sizes read off the materialized unfolding."""
    U = unfold(S, depth)
    counts = [0] * (depth + 1)
    for v in U.vertices:
        counts[len(parse_address(v))] += 1
    return counts


def brute_paths(Q, v, w):
    """Depth-first enumeration of all arrow sequences from v to w."""
    out = []

    def go(u, path):
        if u == w:
            out.append(tuple(path))
        for a in Q.arrows:
            if a.src == u:
                go(a.dst, path + [a.id])

    go(v, [])
    return sorted(out)


# ---------------------------------------------------------------------------
# validate_tree


def test_validate_a2():
    validate_tree(corpus.a2(), "v")


def test_parallel_arrows_reported():
    Q = FiniteQuiver(("v", "w"), (("a", "v", "w"), ("b", "v", "w")), "v")
    with pytest.raises(TreeError) as e:
        validate_tree(Q)
    assert e.value.kind == "ambiguous"
    assert set(e.value.witness) == {("a",), ("b",)}


def test_kronecker_with_tail():
    Q = FiniteQuiver(("v", "w", "u"), (("a", "v", "w"), ("b", "v", "w"), ("c", "w", "u")), "v")
    assert len(brute_paths(Q, "v", "u")) == 2
    with pytest.raises(TreeError) as e:
        validate_tree(Q)
    assert e.value.kind == "ambiguous"


def test_unreachable_and_cycle():
    Q = FiniteQuiver(("v", "w", "x"), (("a", "v", "w"),), "v")
    with pytest.raises(TreeError) as e:
        validate_tree(Q)
    assert e.value.kind == "unreachable" and e.value.witness == "x"
    C = FiniteQuiver(("v", "w"), (("a", "v", "w"), ("b", "w", "v")), "v")
    with pytest.raises(TreeError) as e:
        validate_tree(C)
    assert e.value.kind == "cycle"
    with pytest.raises(TreeError):
        validate_tree(corpus.a2(), "nope")


@pytest.mark.parametrize("name", sorted(corpus.FINITE_TREES))
def test_corpus_trees_are_trees(name):
    Q = corpus.FINITE_TREES[name]()
    assert len(Q.vertices) <= 8
    validate_tree(Q)
    assert is_right_rooted(Q)


# ---------------------------------------------------------------------------
# paths


def test_paths_between_a2():
    Q = corpus.a2()
    assert paths_between(Q, "v", "w") == [("a",)]
    assert paths_between(Q, "w", "v") == []
    assert paths_between(Q, "v", "v") == [()]


def test_paths_between_refuses_cycles():
    Q = FiniteQuiver(("v",), (("l", "v", "v"),))
    with pytest.raises(CyclicQuiverError):
        paths_between(Q, "v", "v")


def test_paths_between_matches_brute_force(rng):
    Q = FiniteQuiver(("a", "b", "c", "d"),
                     (("x", "a", "b"), ("y", "a", "b"), ("z", "b", "c"), ("u", "a", "c"), ("t", "c", "d")))
    for v in Q.vertices:
        for w in Q.vertices:
            assert paths_between(Q, v, w) == brute_paths(Q, v, w)


def test_right_rooted():
    assert is_right_rooted(corpus.a2())
    assert not is_right_rooted(FiniteQuiver(("v",), (("l", "v", "v"),)))
    assert is_right_rooted(corpus.star(5))


# ---------------------------------------------------------------------------
# unfolding and level counts


def test_unfold_examples():
    B = unfold(corpus.binary_scheme(), 2)
    assert len(B.vertices) == 7 and is_tree(B)
    assert tree_signature(B) == tree_signature(corpus.binary_depth2())
    A = unfold(corpus.a_infinity_scheme(), 3)
    assert tree_signature(A) == tree_signature(corpus._chain(4))
    for f in corpus.SCHEMES.values():
        assert unfold(f(), 0).vertices == (".",)


def test_addresses():
    assert address_name(()) == "." and address_name(("R", "L")) == ".R.L"
    assert parse_address(".R.L") == ("R", "L") and parse_address(".") == ()
    assert is_prefix(("R",), ("R", "L")) and not is_prefix(("L",), ("R", "L"))
    assert connected(("R",), ("R", "L")) and not connected(("L",), ("R", "L"))


@pytest.mark.parametrize("name", sorted(corpus.SCHEMES))
def test_level_counts_match_unfolding(name):
    S = corpus.SCHEMES[name]()
    depth = 12 if len(S.transitions) <= 2 * len(S.states) and name != "ternary" else 8
    assert level_counts(S, depth) == unfold_counts(S, depth)
    for n in range(0, 9):
        validate_tree(unfold(S, n))


def test_level_count_examples():
    assert level_counts(corpus.binary_scheme(), 5) == [1, 2, 4, 8, 16, 32]
    assert level_counts(corpus.a_infinity_scheme(), 4) == [1] * 5
    assert level_counts(corpus.three_branch_scheme(), 4) == [1, 3, 3, 3, 3]


def test_random_schemes_unfold_consistently(rng):
    for _ in range(30):
        S = corpus.random_scheme(rng, int(rng.integers(1, 6)))
        assert level_counts(S, 9) == unfold_counts(S, 9)


# ---------------------------------------------------------------------------
# barren decision


def test_barren_examples():
    r = is_barren(corpus.three_branch_scheme())
    assert r.barren and r.stable == 3
    assert r.describe() == "barren, stable level count 3"
    b = is_barren(corpus.binary_scheme())
    assert not b.barren and b.witness["kind"] == "branching-cycle"
    a = is_barren(corpus.a_infinity_scheme())
    assert a.barren and a.stable == 1


@pytest.mark.parametrize("name", sorted(corpus.SCHEMES))
def test_barren_matches_long_counts(name):
    S = corpus.SCHEMES[name]()
    counts = level_counts(S, 60)
    assert is_barren(S).barren == (len(set(counts[20:])) == 1)
    assert is_barren(S).barren == (name not in corpus.NON_BARREN)


def test_periodic_bounded_scheme_is_not_barren():
    S = corpus.alternating_leaves_scheme()
    assert structural_growth_witness(S) is None
    r = is_barren(S)
    assert not r.barren and r.witness["kind"] == "non-constant-window"


def test_barren_random_agreement(rng):
    for _ in range(150):
        S = corpus.random_scheme(rng, int(rng.integers(1, 7)), p_edge=float(rng.uniform(0.2, 1.5)))
        counts = level_counts(S, 50)
        r = is_barren(S)
        assert r.barren == (len(set(counts[25:])) == 1)
        if r.barren:
            assert counts[r.transient:] == [r.stable] * (51 - r.transient)
            assert r.transient == 0 or counts[r.transient - 1] != r.stable


def test_finite_schemes_are_barren_with_zero():
    r = is_barren(corpus.finite_scheme())
    assert r.barren and r.stable == 0


# ---------------------------------------------------------------------------
# antichains


def test_binary_comb():
    comb = infinite_antichain(corpus.binary_scheme())
    assert comb.describe() == "w_j = (R)^j L"
    assert [address_name(w) for w in comb.members(3)] == [".R.L", ".R.R.L", ".R.R.R.L"]


@pytest.mark.parametrize("name", sorted(corpus.SCHEMES))
def test_antichain_dichotomy(name):
    S = corpus.SCHEMES[name]()
    comb = infinite_antichain(S)
    if is_barren(S):
        assert comb is None
        return
    ws = comb.members(10)
    assert len(set(ws)) == 10
    for i, u in enumerate(ws):
        assert S.is_valid_address(u)
        for w in ws[i + 1:]:
            assert not connected(u, w)


def test_antichain_random(rng):
    for _ in range(60):
        S = corpus.random_scheme(rng, int(rng.integers(1, 7)), p_edge=1.2)
        comb = infinite_antichain(S)
        assert (comb is None) == is_barren(S).barren
        if comb is not None:
            ws = comb.members(6)
            assert all(S.is_valid_address(w) for w in ws)
            assert not any(connected(u, w) for i, u in enumerate(ws) for w in ws[i + 1:])


# ---------------------------------------------------------------------------
# path spaces


def signature_at(S, depth):
    return tree_signature(unfold(S, depth))


def test_path_space_examples():
    A = corpus.a_infinity_scheme()
    P = path_space(A, ())
    assert signature_at(P, 5) == signature_at(A, 5)
    B = corpus.binary_scheme()
    for v in [(), ("L",), ("R", "L", "L")]:
        assert signature_at(path_space(B, v), 4) == signature_at(B, 4)
    one = FiniteQuiver(("v",), ())
    assert level_counts(path_space(one, "v"), 3) == [1, 0, 0, 0]


@pytest.mark.parametrize("name", sorted(corpus.SCHEMES))
def test_path_space_at_root_is_self(name):
    S = corpus.SCHEMES[name]()
    for d in range(7 if name != "ternary" else 5):
        assert signature_at(path_space(S, ()), d) == signature_at(S, d)


def test_path_space_of_finite_tree():
    Q = corpus.y_tree()
    P = path_space(Q, "m")
    assert level_counts(P, 3) == [1, 2, 0, 0]


def test_invalid_address_rejected():
    with pytest.raises(Exception):
        path_space(corpus.binary_scheme(), ("Z",))
    with pytest.raises(Exception):
        RationalTreeScheme(("s", "t"), (("a", "s", "s"),), "s")
