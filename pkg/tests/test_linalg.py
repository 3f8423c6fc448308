import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from treequiver import linalg as la
from treequiver.linalg import FgModule


def elements(M: FgModule):
    return itertools.product(*[range(d) for d in M.invariant_factors])


def all_matrices(rows, cols, m):
    for flat in itertools.product(range(m), repeat=rows * cols):
        yield np.array(flat, dtype=np.int64).reshape(rows, cols)


# ---------------------------------------------------------------------------
# Smith normal form


def det(A):
    return round(np.linalg.det(np.array(A, dtype=float)))


@pytest.mark.parametrize("A", [
    [[2, 0], [0, 3]], [[0, 0], [0, 0]], [[1, 0], [0, 1]], [[4, 6, 8], [6, 9, 12]],
    [[0, 5], [7, 0], [0, 0]], [[12]],
])
def test_smith_decompose(A):
    U, D, V = la.smith_decompose(A)
    assert (np.array(U, dtype=object) @ np.array(A, dtype=object) @ np.array(V, dtype=object)).tolist() == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


def test_smith_examples():
    assert la.smith_decompose([[2, 0], [0, 3]])[1] == [[1, 0], [0, 6]]
    U, D, V = la.smith_decompose([[0, 0], [0, 0]])
    assert D == [[0, 0], [0, 0]] and U == [[1, 0], [0, 1]] and V == [[1, 0], [0, 1]]


@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_property(A):
    U, D, V = la.smith_decompose(A)
    assert (np.array(U, dtype=object) @ np.array(A, dtype=object) @ np.array(V, dtype=object)).tolist() == D


# ---------------------------------------------------------------------------
# solving


def test_solve_examples():
    assert la.solve_linear(np.array([[2]]), [2], 4).tolist() == [1]
    assert la.solve_linear(np.array([[2]]), [1], 4) is None
    assert la.solve_linear(la.identity(2), [5, 3], 6).tolist() == [5, 3]
    with pytest.raises(la.DimensionError):
        la.solve_linear(la.identity(2), [1, 2, 3], 6)


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_solve_against_exhaustive_search(m, rng):
    for _ in range(40):
        rows, cols = rng.integers(1, 4), rng.integers(1, 4)
        A = rng.integers(0, m, size=(rows, cols))
        b = rng.integers(0, m, size=rows)
        x = la.solve_linear(A, b, m)
        found = any(((A @ np.array(c)) % m == b).all() for c in itertools.product(range(m), repeat=cols))
        if x is None:
            assert not found
        else:
            assert ((A @ x) % m == b).all()


@pytest.mark.parametrize("m", [4, 6])
def test_kernel_count_matches_enumeration(m, rng):
    for _ in range(20):
        A = rng.integers(0, m, size=(2, 3))
        kernel = [c for c in itertools.product(range(m), repeat=3) if not ((A @ np.array(c)) % m).any()]
        assert la.SmithSolver(A, m).count_solutions() == len(kernel)
        K = la.kernel_generators(A, m)
        assert not ((A @ K) % m).any()
        span = {tuple(int(v) for v in (K @ np.array(c)) % m) for c in itertools.product(range(m), repeat=K.shape[1])}
        assert span == set(kernel)


# ---------------------------------------------------------------------------
# right inverses


def test_right_inverse_examples():
    assert la.right_inverse(np.array([[1, 0]]), 2).tolist() == [[1], [0]]
    assert la.right_inverse(np.array([[2]]), 4) is None
    assert la.right_inverse(la.zeros(0, 0), 5).shape == (0, 0)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_right_inverse_exhaustive_free(m, rng):
    for _ in range(25):
        t, s = rng.integers(1, 3), rng.integers(1, 3)
        f = rng.integers(0, m, size=(t, s))
        g = la.right_inverse(f, m)
        exists = any(((f @ c) % m == np.eye(t, dtype=np.int64)).all() for c in all_matrices(s, t, m))
        assert (g is not None) == exists
        if g is not None:
            assert ((f @ g) % m == np.eye(t, dtype=np.int64)).all()


def test_right_inverse_exhaustive_torsion():
    m = 4
    mods = [FgModule((2,)), FgModule((4,)), FgModule((2, 4)), FgModule((4, 4))]
    for S, T in itertools.product(mods, repeat=2):
        homs = [f for f in all_matrices(T.rank, S.rank, m) if la.is_homomorphism(f, S, T)]
        g_homs = [g for g in all_matrices(S.rank, T.rank, m) if la.is_homomorphism(g, T, S)]
        for f in homs:
            f = la.reduce_rows(f, T)
            g = la.right_inverse(f, m, S, T)
            want = any(la.maps_equal(f @ c, la.identity(T.rank), T) for c in g_homs)
            assert (g is not None) == want, (S, T, f)
            if g is not None:
                assert la.is_homomorphism(g, T, S)
                assert la.maps_equal(la.matmul(f, g, m), la.identity(T.rank), T)


# ---------------------------------------------------------------------------
# injectivity of modules (Baer criterion by brute force)


def baer_injective(M: FgModule, m: int) -> bool:
    """Every map from an ideal gZ/m into M extends to Z/m."""
    elems = [np.array(x, dtype=np.int64) for x in elements(M)]
    d = np.array(M.invariant_factors, dtype=np.int64)
    for g in (g for g in range(1, m + 1) if m % g == 0):
        # a map I = gZ/m -> M is x = f(g) with (m/g) x = 0
        images = {tuple(g * y % d) for y in elems}
        for x in elems:
            if not ((m // g) * x % d).any() and tuple(x % d) not in images:
                return False
    return True


def modules_up_to(m, rank):
    divs = [d for d in range(2, m + 1) if m % d == 0]
    for r in range(rank + 1):
        for facs in itertools.combinations_with_replacement(divs, r):
            yield FgModule(facs)


@pytest.mark.parametrize("m", [2, 3, 4, 6, 8, 9])
def test_injective_module_matches_baer(m):
    for M in modules_up_to(m, 3 if m <= 6 else 2):
        assert la.is_injective_module(M, m) == baer_injective(M, m), M


def test_injective_module_examples():
    assert la.is_injective_module(FgModule((5,)), 5)
    assert not la.is_injective_module(FgModule((2,)), 4)
    assert la.is_injective_module(FgModule((4,)), 4)


def endomorphisms(M: FgModule, m: int):
    for f in all_matrices(M.rank, M.rank, m):
        if la.is_homomorphism(f, M, M):
            yield la.reduce_rows(f, M)


def is_indecomposable(M: FgModule, m: int) -> bool:
    if M.rank == 0:
        return False
    idem = {tuple(map(tuple, e)) for e in endomorphisms(M, m)
            if la.maps_equal(la.matmul(e, e, m), e, M)}
    return len(idem) == 2  # only 0 and the identity


@pytest.mark.parametrize("m, want", [(2, [(2,)]), (4, [(4,)]), (6, [(2,), (3,)]), (12, [(4,), (3,)])])
def test_indecomposable_injectives(m, want):
    got = la.indecomposable_injective_modules(m)
    assert sorted(M.invariant_factors for M in got) == sorted(want)
    oracle = [M for M in modules_up_to(m, 2)
              if baer_injective(M, m) and is_indecomposable(M, m)]
    assert sorted(M.invariant_factors for M in oracle) == sorted(M.invariant_factors for M in got)


# ---------------------------------------------------------------------------
# modules and matrices


def test_modulus_factorization():
    assert la.Modulus(360).factorization == ((2, 3), (3, 2), (5, 1))
    assert la.is_prime(7) and not la.is_prime(9)
    with pytest.raises(la.UnsupportedModulus):
        la.require_prime(6)


def test_module_validation():
    with pytest.raises(ValueError):
        FgModule((1,))
    with pytest.raises(ValueError):
        FgModule((3,)).check_divides(4)
    assert str(FgModule(())) == "0"
    assert (FgModule((2,)) + FgModule((4,))).invariant_factors == (2, 4)


def test_json_round_trip():
    A = np.array([[1, 2], [3, 0]])
    assert la.matrix_from_json(la.matrix_to_json(A), 4).tolist() == A.tolist()
    assert la.module_from_json(la.module_to_json(FgModule((2, 4)))) == FgModule((2, 4))
    with pytest.raises(la.DimensionError):
        la.matrix_from_json({"rows": 2, "cols": 1, "entries": [[1]]}, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_field_helpers(p, rng):
    for _ in range(20):
        A = rng.integers(0, p, size=(3, 4))
        N = la.nullspace_mod_p(A, p)
        assert not ((A @ N) % p).any()
        assert N.shape[1] + la.rank_mod_p(A, p) == 4
    B = np.array([[1, 0], [1, 1], [0, 1]])
    P = la.complement_projection(B, p)
    assert ((P @ B) % p == np.eye(2, dtype=np.int64)).all()
