"""Acceptance criteria, each at its stated scale, tolerance and time limit.

Every test records one ``criterion N: PASS|FAIL`` line, printed in the
terminal summary.  Run just these with ``pytest tests/test_acceptance.py -v``.
"""

import contextlib
import glob
import io
import itertools
import json
import os
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from treequiver import corpus
from treequiver import linalg as la
from treequiver import serialize as ser
from treequiver.cli import COMMANDS, run
from treequiver.counterexample import build_witness_family, forced_components, source_conditions_check
from treequiver.dot import is_valid_dot
from treequiver.linalg import FgModule
from treequiver.ordinal import OMEGA, ZERO, Ordinal
from treequiver.quiver import FiniteQuiver, is_barren, level_counts, tree_signature, unfold
from treequiver.representation import (adjunction_left_check, adjunction_right_check, base_change,
                                       costalk_functor, direct_sum, injective_envelope,
                                       is_indecomposable_injective, is_injective_rep, matlis_decompose,
                                       representation)
from treequiver.transfinite import (TransfiniteAddress, build_indec_injective, check_cocontinuous, classify,
                                    complete, is_complete, segments_from_tree, strata_profile, stratum,
                                    truncate)

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "demos", "data")


@contextlib.contextmanager
def criterion(n, title, limit=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        late = limit is not None and dt >= limit
        verdict = "PASS" if ok and not late else "FAIL"
        budget = f", limit {limit:g}s" if limit else ""
        ACCEPTANCE_LINES.append(f"criterion {n}: {verdict}  {title}  ({dt:.2f}s{budget})")
        print(ACCEPTANCE_LINES[-1])
    assert not late, f"criterion {n} took {dt:.2f}s, limit {limit}s"


def envelope_says_injective(X):
    """Oracle: X is injective iff its envelope adds nothing."""
    E, _ = injective_envelope(X)
    return E.dimension_vector() == X.dimension_vector()


# ---------------------------------------------------------------------------
# 1. classification


def presentations():
    """Finite trees, segment schemes up to w*2, and truncations of the binary and A^inf schemes."""
    out = {f"tree:{k}": segments_from_tree(f()) for k, f in corpus.FINITE_TREES.items()}
    out.update({k: f() for k, f in corpus.SEGMENT_SCHEMES.items()})
    out["binary@3"] = segments_from_tree(unfold(corpus.binary_scheme(), 3))
    out["A_inf@6"] = segments_from_tree(unfold(corpus.a_infinity_scheme(), 6))
    return out


def test_criterion_1_classification():
    with criterion(1, "classification: built injectives pass all three checks", 10):
        P = presentations()
        assert len(P) >= 20
        checked = 0
        for name, T in P.items():
            for m in (2, 3):
                cl = classify(T, m)
                tr = truncate(cl.scheme, 3)
                for v, a in tr.addresses.items():
                    for lab in cl.labels_at(stratum(cl.scheme, a)):
                        if lab.address != a:
                            continue
                        X = cl.build(lab)
                        assert check_cocontinuous(X) == [], (name, lab)
                        R = X.restrict(tr)
                        assert R == costalk_functor(v, lab.module, tr.quiver, m), (name, lab)
                        assert is_injective_rep(R)[0], (name, lab)
                        assert envelope_says_injective(R), (name, lab)
                        assert is_indecomposable_injective(R), (name, lab)
                        checked += 1
            # Z/4: the local criterion accepts I_v(Z/4) and rejects I_v(Z/2)
            tr = truncate(complete(T).scheme, 2)
            for v in tr.quiver.vertices:
                assert is_injective_rep(costalk_functor(v, FgModule((4,)), tr.quiver, 4))[0]
                ok, rep = is_injective_rep(costalk_functor(v, FgModule((2,)), tr.quiver, 4))
                assert not ok and not rep[v].cond_i
        assert checked > 200


# ---------------------------------------------------------------------------
# 2. Matlis round-trip


def random_invertible(rng, n, m):
    while True:
        A = rng.integers(0, m, size=(n, n))
        if la.rank_mod_p(A, m) == n:
            return A


def test_criterion_2_matlis(rng):
    with criterion(2, "Matlis round-trip recovers the multiset in 200/200", 5):
        hits = 0
        for _ in range(200):
            m = int(rng.choice([2, 3]))
            Q = corpus.random_tree(rng, int(rng.integers(1, 7)))
            k = FgModule((m,))
            want, parts, total = {}, [], 0
            for _ in range(int(rng.integers(0, 6))):
                v = Q.vertices[int(rng.integers(0, len(Q.vertices)))]
                I = costalk_functor(v, k, Q, m)
                if total + I.total_dimension() > 12:
                    continue
                total += I.total_dimension()
                parts.append(I)
                want[v] = want.get(v, 0) + 1
            X = direct_sum(parts, Q, m) if parts else representation(Q, m, {})
            Y = base_change(X, {v: random_invertible(rng, X.dim(v), m) for v in Q.vertices})
            hits += matlis_decompose(Y) == want
        assert hits == 200


# ---------------------------------------------------------------------------
# 3. exhaustive criterion equivalence


def rooted_trees(n):
    """All rooted trees on n vertices, arrows away from the root, up to isomorphism."""
    seen = {}
    for parents in itertools.product(*[range(i) for i in range(1, n)]):
        vs = tuple(f"t{i}" for i in range(n))
        Q = FiniteQuiver(vs, tuple((f"e{i}", vs[p], vs[i]) for i, p in enumerate(parents, 1)), "t0")
        seen.setdefault(tree_signature(Q), Q)
    return list(seen.values())


def all_reps(Q, max_total):
    """Every F_2 representation of Q with total dimension <= max_total."""
    vs = Q.vertices
    for dims in itertools.product(range(max_total + 1), repeat=len(vs)):
        if sum(dims) > max_total:
            continue
        d = dict(zip(vs, dims))
        shapes = [(a.id, d[a.dst], d[a.src]) for a in Q.arrows]
        sizes = [r * c for _, r, c in shapes]
        for bits in itertools.product((0, 1), repeat=sum(sizes)):
            maps, pos = {}, 0
            for (aid, r, c), s in zip(shapes, sizes):
                maps[aid] = np.array(bits[pos:pos + s], dtype=np.int64).reshape(r, c)
                pos += s
            yield representation(Q, 2, d, maps)


def test_criterion_3_exhaustive_equivalence():
    with criterion(3, "local criterion equals envelope oracle on all small F_2 reps", 60):
        trees = [Q for n in range(1, 5) for Q in rooted_trees(n)]
        assert len(trees) == 8
        total = disagree = 0
        for Q in trees:
            for X in all_reps(Q, 6):
                total += 1
                disagree += is_injective_rep(X)[0] != envelope_says_injective(X)
        print(f"  {total} representations, {disagree} disagreements")
        assert total == 58162 and disagree == 0


# ---------------------------------------------------------------------------
# 4. adjunctions


def test_criterion_4_adjunctions(rng):
    with criterion(4, "both adjunction identities hold in 200/200", 5):
        hits = 0
        for _ in range(200):
            m = int(rng.choice([2, 3]))
            Q = corpus.random_tree(rng, int(rng.integers(1, 6)))
            dims = {v: int(rng.integers(0, 3)) for v in Q.vertices}
            X = representation(Q, m, dims, {a.id: rng.integers(0, m, size=(dims[a.dst], dims[a.src]))
                                            for a in Q.arrows})
            v = Q.vertices[int(rng.integers(0, len(Q.vertices)))]
            M = FgModule.free(int(rng.integers(0, 3)), m)
            hits += adjunction_left_check(v, M, X) and adjunction_right_check(v, M, X)
        assert hits == 200


# ---------------------------------------------------------------------------
# 5. empty strata propagate


def ordinals_below(bound, k):
    """Ordinals w^2*a + w*b + c below ``bound`` with a, b, c < k."""
    out = []
    for a, b, c in itertools.product(range(k), repeat=3):
        o = ZERO
        for e, coef in ((2, a), (1, b), (0, c)):
            if coef:
                o = o + Ordinal(((e, coef),))
        if o < bound:
            out.append(o)
    return out


def test_criterion_5_initial_segment(rng):
    with criterion(5, "nonempty strata form an initial segment; w+1 for the w-chain with top"):
        schemes = [f() for f in corpus.SEGMENT_SCHEMES.values()]
        schemes += [segments_from_tree(f()) for f in corpus.FINITE_TREES.values()]
        schemes += [corpus.random_segments(rng, int(rng.integers(1, 6))) for _ in range(30)]
        for T in schemes:
            p = strata_profile(T)
            lam = p.least_empty
            addrs = truncate(T, 4).addresses.values()
            assert all(stratum(T, a) < lam for a in addrs)
            present = {stratum(T, a) for a in addrs}
            # every sampled stratum below a present one is present too (via the profile)
            for s in present:
                assert p.count(s) > 0
            for alpha in (lam, lam + 1, lam + OMEGA):
                assert p.count(alpha) == 0
            for alpha in ordinals_below(lam, 4):
                assert p.count(alpha) > 0, alpha
        assert strata_profile(corpus.omega_with_top()).least_empty == OMEGA + 1


# ---------------------------------------------------------------------------
# 6. barren decision


def test_criterion_6_barren(rng):
    with criterion(6, "structural barren decision agrees with brute-force level counts"):
        named = {k: f() for k, f in corpus.SCHEMES.items()}
        schemes = list(named.values())
        schemes += [corpus.random_scheme(rng, int(rng.integers(1, 7)), p_edge=float(rng.uniform(0.2, 1.5)))
                    for _ in range(50)]
        for S in schemes:
            counts = level_counts(S, 50)
            U = unfold(S, 12)
            depth = {U.root: 0}
            for a in U.arrows:  # unfold lists arrows parent-first
                depth[a.dst] = depth[a.src] + 1
            assert [sum(1 for d in depth.values() if d == i) for i in range(13)] == counts[:13]
            r = is_barren(S)
            assert r.barren == (len(set(counts[25:])) == 1)
            if r.barren:
                assert counts[r.transient:] == [r.stable] * (51 - r.transient)
        assert is_barren(named["three_branch"]).barren
        assert not is_barren(named["binary"]).barren
        assert is_barren(named["A_inf"]).barren


# ---------------------------------------------------------------------------
# 7. counterexample mechanism


def test_criterion_7_counterexample():
    with criterion(7, "binary scheme: forced component sets {1..i} for N = 2..5", 10):
        for N in range(2, 6):
            F = build_witness_family(corpus.binary_scheme(), 2, N)
            reports = forced_components(F)
            assert [sorted(r.forced) for r in reports] == [list(range(1, i + 1)) for i in range(1, N)]
            assert all(r.lift_exists for r in reports)
            assert source_conditions_check(F.quiver, F.envelope_sum).overall


# ---------------------------------------------------------------------------
# 8. completion


def test_criterion_8_completion():
    with criterion(8, "completion is complete; A^inf gains one top and classifies as E_n plus E^inf"):
        for f in corpus.SEGMENT_SCHEMES.values():
            assert is_complete(complete(f()).scheme)
        C = complete(corpus.a_infinity_segments())
        assert len(C.added) == 1
        cl = classify(corpus.a_infinity_segments(), 2)
        Tbar = cl.scheme
        tr = truncate(Tbar, 6)
        chain = [TransfiniteAddress(("a",), ZERO + n) for n in range(6)] + [TransfiniteAddress(("a",), OMEGA)]
        assert sorted(tr.addresses.values(), key=lambda a: a.offset) == chain
        k = FgModule((2,))
        labels = cl.take(6) + cl.labels_at(OMEGA)
        assert [lab.address for lab in labels] == chain
        for j, lab in enumerate(labels):
            R = cl.build(lab).restrict(tr)
            # E_n is k on positions 0..n and zero beyond; E^inf is k everywhere
            want = [int(i <= j) for i in range(6)] + [int(j == 6)]
            assert [R.modules[tr.vertex_of(a)].rank for a in chain] == want
            assert R == costalk_functor(tr.vertex_of(lab.address), k, tr.quiver, 2)
            assert R == build_indec_injective(Tbar, lab.address, k, 2).restrict(tr)


# ---------------------------------------------------------------------------
# 9. CLI determinism


def _call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_criterion_9_cli(seed):
    with criterion(9, "CLI: byte-identical reruns, canonical JSON round-trip, valid DOT"):
        files = sorted(glob.glob(os.path.join(DATA, "*.json")))
        assert files
        for f in files:
            with open(f, encoding="utf-8") as fh:
                text = fh.read()
            assert ser.dumps(ser.to_json(ser.load(ser.loads(text)))) == text, f
            for cmd in COMMANDS:
                for fmt in ("json", "text", "dot"):
                    argv = [cmd, f, "--format", fmt, "--seed", str(seed)]
                    first = _call(argv)
                    assert first == _call(argv), argv
                    code, out, _ = first
                    if fmt == "json":
                        doc = json.loads(out)
                        assert doc["seed"] == seed and ser.dumps(doc) == out
                    elif fmt == "dot" and code != 2:
                        assert is_valid_dot(out), argv
