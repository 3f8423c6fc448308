"""Representations of finite (tree) quivers over Z/m.

A representation assigns an :class:`FgModule` to each vertex and a matrix to
each arrow.  Socles, envelopes and Matlis decompositions are field-only
(prime m); the local injectivity conditions work for any m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .linalg import FgModule, UnsupportedModulus
from .quiver import FiniteQuiver, QuiverError, find_root, is_right_rooted, paths_between, validate_tree


class RepresentationError(ValueError):
    pass


class NotInjectiveError(RepresentationError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: FiniteQuiver
    modulus: int
    modules: Mapping[str, FgModule]
    maps: Mapping[str, np.ndarray]

    def __post_init__(self):
        m = int(self.modulus)
        object.__setattr__(self, "modulus", m)
        modules = {}
        for v in self.quiver.vertices:
            M = self.modules.get(v, la.ZERO_MODULE)
            if not isinstance(M, FgModule):
                M = FgModule(tuple(M))
            M.check_divides(m)
            modules[v] = M
        extra = set(self.modules) - set(self.quiver.vertices)
        if extra:
            raise RepresentationError(f"modules given for unknown vertices {sorted(extra)}")
        maps = {}
        for a in self.quiver.arrows:
            shape = (modules[a.dst].rank, modules[a.src].rank)
            A = self.maps.get(a.id)
            if A is None:
                A = la.zeros(*shape)
            else:
                A = np.asarray(A, dtype=np.int64)
                if A.size == 0 and shape[0] * shape[1] == 0:
                    A = A.reshape(shape)
                if A.shape != shape:
                    raise la.DimensionError(f"matrix on arrow {a.id} has shape {A.shape}, expected {shape}")
                A = A % m
            if not la.is_homomorphism(A, modules[a.src], modules[a.dst]):
                raise RepresentationError(f"matrix on arrow {a.id} is not a module homomorphism")
            maps[a.id] = la.reduce_rows(A, modules[a.dst])
        object.__setattr__(self, "modules", modules)
        object.__setattr__(self, "maps", maps)

    def dim(self, v: str) -> int:
        return self.modules[v].rank

    def dimension_vector(self) -> Dict[str, int]:
        return {v: self.modules[v].rank for v in self.quiver.vertices}

    def total_dimension(self) -> int:
        return sum(self.dimension_vector().values())

    def is_zero(self) -> bool:
        return self.total_dimension() == 0

    def path_map(self, path: Sequence[str], start: str) -> np.ndarray:
        """Composite of the arrow matrices along ``path`` (first arrow first)."""
        M = la.identity(self.dim(start))
        for aid in path:
            M = la.matmul(self.maps[aid], M, self.modulus)
        end = self.quiver.target_of(tuple(path), start)
        return la.reduce_rows(M, self.modules[end])

    def outgoing_map(self, v: str) -> Tuple[np.ndarray, FgModule]:
        """The map ``X(v) -> prod_{s(a)=v} X(t(a))`` stacked as one matrix."""
        outs = self.quiver.out_arrows(v)
        target = FgModule(sum((self.modules[a.dst].invariant_factors for a in outs), ()))
        if not outs:
            return la.zeros(0, self.dim(v)), target
        return np.concatenate([self.maps[a.id] for a in outs], axis=0), target

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return (self.quiver == other.quiver and self.modulus == other.modulus
                and self.modules == other.modules
                and all(np.array_equal(self.maps[a], other.maps[a]) for a in self.maps))

    def __repr__(self):
        dims = ",".join(f"{v}:{self.dim(v)}" for v in self.quiver.vertices)
        return f"Representation(m={self.modulus}, dims={{{dims}}})"


@dataclass(frozen=True, eq=False)
class RepMorphism:
    source: Representation
    target: Representation
    components: Mapping[str, np.ndarray]

    def __post_init__(self):
        if self.source.quiver != self.target.quiver or self.source.modulus != self.target.modulus:
            raise RepresentationError("morphism between representations of different quivers or rings")
        comps = {}
        m = self.source.modulus
        for v in self.source.quiver.vertices:
            shape = (self.target.dim(v), self.source.dim(v))
            C = self.components.get(v)
            C = la.zeros(*shape) if C is None else np.asarray(C, dtype=np.int64)
            if C.shape != shape:
                raise la.DimensionError(f"component at {v} has shape {C.shape}, expected {shape}")
            comps[v] = la.reduce_rows(C % m, self.target.modules[v])
        object.__setattr__(self, "components", comps)

    def is_injective(self) -> bool:
        """Every component has zero kernel (field case)."""
        p = self.source.modulus
        la.require_prime(p, "monomorphism test")
        return all(la.rank_mod_p(C, p) == C.shape[1] for C in self.components.values())


def representation(quiver: FiniteQuiver, modulus: int, dims: Mapping[str, int] = None,
                   maps: Mapping[str, object] = None, modules: Mapping[str, FgModule] = None) -> Representation:
    """Convenience constructor using free modules of the given ranks."""
    if modules is None:
        dims = dims or {}
        modules = {v: FgModule.free(dims.get(v, 0), modulus) for v in quiver.vertices}
    return Representation(quiver, modulus, modules, dict(maps or {}))


def zero_rep(Q: FiniteQuiver, m: int) -> Representation:
    return representation(Q, m)


def identity_morphism(X: Representation) -> RepMorphism:
    return RepMorphism(X, X, {v: la.identity(X.dim(v)) for v in X.quiver.vertices})


def compose(g: RepMorphism, f: RepMorphism) -> RepMorphism:
    m = f.source.modulus
    return RepMorphism(f.source, g.target, {v: la.matmul(g.components[v], f.components[v], m)
                                            for v in f.source.quiver.vertices})


def check_morphism(eta: RepMorphism) -> List[str]:
    """Arrows whose naturality square fails; empty list means ``eta`` is a morphism."""
    X, Y = eta.source, eta.target
    m = X.modulus
    bad = []
    for a in X.quiver.arrows:
        lhs = la.matmul(Y.maps[a.id], eta.components[a.src], m)
        rhs = la.matmul(eta.components[a.dst], X.maps[a.id], m)
        if not la.maps_equal(lhs, rhs, Y.modules[a.dst]):
            bad.append(a.id)
    return bad


def is_morphism(eta: RepMorphism) -> bool:
    return not check_morphism(eta)


def check_well_formed(X: Representation) -> List[str]:
    """Problems with shapes or module compatibility (empty when fine)."""
    problems = []
    for a in X.quiver.arrows:
        A = X.maps[a.id]
        if A.shape != (X.dim(a.dst), X.dim(a.src)):
            problems.append(f"{a.id}: shape {A.shape}")
        elif not la.is_homomorphism(A, X.modules[a.src], X.modules[a.dst]):
            problems.append(f"{a.id}: not a homomorphism")
    for a in X.quiver.arrows:
        for b in X.quiver.out_arrows(a.dst):
            composite = X.path_map((a.id, b.id), a.src)
            direct = la.matmul(X.maps[b.id], X.maps[a.id], X.modulus)
            if not la.maps_equal(composite, direct, X.modules[b.dst]):
                problems.append(f"{a.id},{b.id}: composition mismatch")
    return problems


# ---------------------------------------------------------------------------
# hom spaces


def _naturality_system(X: Representation, Y: Representation):
    """Matrix over Z/m whose kernel is the set of natural transformations X -> Y.

    Unknowns are the entries of every component, vertex by vertex, row-major.
    Congruences modulo an invariant factor ``e`` are scaled by ``m / e``.
    """
    m = X.modulus
    Q = X.quiver
    offsets, n = {}, 0
    for v in Q.vertices:
        offsets[v] = n
        n += Y.dim(v) * X.dim(v)
    rows = []
    for a in Q.arrows:
        s, t = a.src, a.dst
        Xa, Ya = X.maps[a.id], Y.maps[a.id]
        for i in range(Y.dim(t)):
            scale = m // Y.modules[t].invariant_factors[i]
            for j in range(X.dim(s)):
                row = np.zeros(n, dtype=np.int64)
                # (Y(a) eta_s)[i, j] = sum_k Ya[i, k] eta_s[k, j]
                for k in range(Y.dim(s)):
                    row[offsets[s] + k * X.dim(s) + j] += Ya[i, k]
                # (eta_t X(a))[i, j] = sum_k eta_t[i, k] Xa[k, j]
                for k in range(X.dim(t)):
                    row[offsets[t] + i * X.dim(t) + k] -= Xa[k, j]
                rows.append(row * scale % m)
    for v in Q.vertices:
        for i in range(Y.dim(v)):
            e = Y.modules[v].invariant_factors[i]
            for j in range(X.dim(v)):
                d = X.modules[v].invariant_factors[j]
                if (d * (m // e)) % m:
                    row = np.zeros(n, dtype=np.int64)
                    row[offsets[v] + i * X.dim(v) + j] = d * (m // e) % m
                    rows.append(row)
    A = np.stack(rows) if rows else la.zeros(0, n)
    return A, offsets, n


def _unpack(vec, X, Y, offsets):
    comps = {}
    for v in X.quiver.vertices:
        r, c = Y.dim(v), X.dim(v)
        comps[v] = np.asarray(vec[offsets[v]:offsets[v] + r * c], dtype=np.int64).reshape(r, c)
    return RepMorphism(X, Y, comps)


def hom_basis(X: Representation, Y: Representation) -> List[RepMorphism]:
    """Basis of ``Hom(X, Y)`` for prime m; generators of the solution module otherwise."""
    if X.quiver != Y.quiver or X.modulus != Y.modulus:
        raise RepresentationError("hom between representations of different quivers or rings")
    m = X.modulus
    A, offsets, n = _naturality_system(X, Y)
    if la.is_prime(m):
        K = la.nullspace_mod_p(A, m) if n else la.zeros(0, 0)
    else:
        K = la.kernel_generators(A, m) if n else la.zeros(0, 0)
    homs = [_unpack(K[:, k], X, Y, offsets) for k in range(K.shape[1])]
    if not la.is_prime(m):
        homs = [h for h in homs if any(c.any() for c in h.components.values())]
    return homs


def hom_dimension(X: Representation, Y: Representation) -> int:
    la.require_prime(X.modulus, "hom dimension")
    return len(hom_basis(X, Y))


def hom_cardinality(X: Representation, Y: Representation) -> int:
    """Number of morphisms ``X -> Y``, exact for any m."""
    m = X.modulus
    A, offsets, n = _naturality_system(X, Y)
    total = la.SmithSolver(A, m).count_solutions() if n else 1
    # entries congruent modulo the row's invariant factor describe the same map
    redundant = 1
    for v in X.quiver.vertices:
        for e in Y.modules[v].invariant_factors:
            redundant *= (m // e) ** X.dim(v)
    return total // redundant


def module_hom_cardinality(M: FgModule, N: FgModule, m: int) -> int:
    """``|Hom(M, N)|`` counted directly as a product over cyclic pieces."""
    from math import gcd
    total = 1
    for d in M.invariant_factors:
        for e in N.invariant_factors:
            total *= gcd(d, e)
    return total


# ---------------------------------------------------------------------------
# stalk and costalk functors


def _require_acyclic(Q: FiniteQuiver):
    if not is_right_rooted(Q):
        raise QuiverError("stalk/costalk functors need an acyclic quiver")


def stalk_functor(v: str, M: FgModule, Q: FiniteQuiver, m: int) -> Representation:
    """``S_v(M)``: a copy of M for every path from v to w; arrow a sends copy p to copy ap."""
    _require_acyclic(Q)
    r = M.rank
    paths = {w: paths_between(Q, v, w) for w in Q.vertices}
    modules = {w: FgModule(M.invariant_factors * len(paths[w])) for w in Q.vertices}
    maps = {}
    for a in Q.arrows:
        src_paths, dst_paths = paths[a.src], paths[a.dst]
        pos = {p: i for i, p in enumerate(dst_paths)}
        A = la.zeros(r * len(dst_paths), r * len(src_paths))
        for i, p in enumerate(src_paths):
            j = pos[p + (a.id,)]
            A[j * r:(j + 1) * r, i * r:(i + 1) * r] = la.identity(r)
        maps[a.id] = A
    return Representation(Q, m, modules, maps)


def costalk_functor(v: str, M: FgModule, Q: FiniteQuiver, m: int) -> Representation:
    """``e_*^v(M)``: a copy of M for every path from w to v; component q of the
    image of arrow a is component ``a`` then ``q`` of the source."""
    return _costalk(v, M, Q, m)


@lru_cache(maxsize=4096)
def _costalk(v: str, M: FgModule, Q: FiniteQuiver, m: int) -> Representation:
    _require_acyclic(Q)
    r = M.rank
    paths = {w: paths_between(Q, w, v) for w in Q.vertices}
    modules = {w: FgModule(M.invariant_factors * len(paths[w])) for w in Q.vertices}
    maps = {}
    for a in Q.arrows:
        src_paths, dst_paths = paths[a.src], paths[a.dst]
        pos = {p: i for i, p in enumerate(src_paths)}
        A = la.zeros(r * len(dst_paths), r * len(src_paths))
        for j, q in enumerate(dst_paths):
            i = pos[(a.id,) + q]
            A[j * r:(j + 1) * r, i * r:(i + 1) * r] = la.identity(r)
        maps[a.id] = A
    X = Representation(Q, m, modules, maps)
    for A in X.maps.values():
        A.setflags(write=False)  # shared through the cache
    return X


def simple_rep(v: str, Q: FiniteQuiver, m: int) -> Representation:
    return representation(Q, m, {v: 1})


# ---------------------------------------------------------------------------
# adjunctions


def _module_rep(M: FgModule, m: int) -> Tuple[FiniteQuiver, Representation]:
    point = FiniteQuiver(("*",))
    return point, Representation(point, m, {"*": M}, {})


def adjunction_left_check(v: str, M: FgModule, X: Representation) -> bool:
    """``Hom(S_v(M), X) = Hom(M, X(v))`` via restriction to the trivial-path copy."""
    Q, m = X.quiver, X.modulus
    S = stalk_functor(v, M, Q, m)
    point, Mrep = _module_rep(M, m)
    _, Xv = _module_rep(X.modules[v], m)
    if not la.is_prime(m):
        return hom_cardinality(S, X) == hom_cardinality(Mrep, Xv) == module_hom_cardinality(M, X.modules[v], m)
    left = hom_basis(S, X)
    right_dim = len(hom_basis(Mrep, Xv))
    if len(left) != right_dim:
        return False
    # trivial path at v is the first path in lexicographic order
    r = M.rank
    images = [h.components[v][:, :r].reshape(-1) for h in left]
    if not images:
        return True
    return la.rank_mod_p(np.stack(images, axis=1), m) == len(left)


def adjunction_right_check(v: str, M: FgModule, X: Representation) -> bool:
    """``Hom(X, e_*^v(M)) = Hom(X(v), M)`` via the trivial-path component at v."""
    Q, m = X.quiver, X.modulus
    E = costalk_functor(v, M, Q, m)
    _, Mrep = _module_rep(M, m)
    _, Xv = _module_rep(X.modules[v], m)
    if not la.is_prime(m):
        return hom_cardinality(X, E) == hom_cardinality(Xv, Mrep) == module_hom_cardinality(X.modules[v], M, m)
    left = hom_basis(X, E)
    right_dim = len(hom_basis(Xv, Mrep))
    if len(left) != right_dim:
        return False
    r = M.rank
    images = [h.components[v][:r, :].reshape(-1) for h in left]
    if not images:
        return True
    return la.rank_mod_p(np.stack(images, axis=1), m) == len(left)


# ---------------------------------------------------------------------------
# socle, envelope, injectivity


def socle(X: Representation) -> Dict[str, np.ndarray]:
    """Basis (as columns) of ``soc(X)(v)``: the joint kernel of the arrows leaving v."""
    p = X.modulus
    la.require_prime(p, "socle")
    out = {}
    for v in X.quiver.vertices:
        F, _ = X.outgoing_map(v)
        if F.shape[0] == 0:
            out[v] = la.identity(X.dim(v))
        else:
            out[v] = la.nullspace_mod_p(F, p)
    return out


def socle_dimensions(X: Representation) -> Dict[str, int]:
    return {v: B.shape[1] for v, B in socle(X).items()}


def direct_sum(reps: Sequence[Representation], Q: FiniteQuiver = None, m: int = None) -> Representation:
    if not reps:
        if Q is None or m is None:
            raise RepresentationError("empty direct sum needs a quiver and modulus")
        return zero_rep(Q, m)
    Q, m = reps[0].quiver, reps[0].modulus
    modules = {v: FgModule(sum((X.modules[v].invariant_factors for X in reps), ())) for v in Q.vertices}
    maps = {a.id: la.block_diag([X.maps[a.id] for X in reps]) for a in Q.arrows}
    return Representation(Q, m, modules, maps)


def injective_envelope(X: Representation) -> Tuple[Representation, RepMorphism]:
    """``E = sum_v I_v^{dim soc(X)(v)}`` with a monomorphism ``X -> E``.

    The component of the embedding at u, towards a copy of ``I_v`` (u <= v),
    pushes x along the path to v and projects onto ``soc(X)(v)``.
    """
    p = X.modulus
    la.require_prime(p, "injective envelope")
    Q = X.quiver
    root = find_root(Q)
    validate_tree(Q, root)
    soc = socle(X)
    k = FgModule((p,))
    pieces, labels = [], []
    for v in Q.vertices:
        for c in range(soc[v].shape[1]):
            pieces.append(costalk_functor(v, k, Q, p))
            labels.append((v, c))
    E = direct_sum(pieces, Q, p)
    retract = {v: la.complement_projection(soc[v], p) for v in Q.vertices}
    comps = {}
    for u in Q.vertices:
        rows = []
        for v, c in labels:
            paths = paths_between(Q, u, v)
            if paths:
                row = la.matmul(retract[v][c:c + 1, :], X.path_map(paths[0], u), p)
                rows.append(row)
        comps[u] = np.concatenate(rows, axis=0) if rows else la.zeros(0, X.dim(u))
    return E, RepMorphism(X, E, comps)


@dataclass
class VertexConditions:
    vertex: str
    cond_i: bool
    cond_ii: bool

    @property
    def ok(self) -> bool:
        return self.cond_i and self.cond_ii


def local_conditions(X: Representation) -> Dict[str, VertexConditions]:
    """Per vertex: X(v) injective, and ``X(v) -> prod X(t(a))`` split epi."""
    m = X.modulus
    report = {}
    for v in X.quiver.vertices:
        c1 = la.is_injective_module(X.modules[v], m)
        F, target = X.outgoing_map(v)
        c2 = la.right_inverse(F, m, X.modules[v], target) is not None
        report[v] = VertexConditions(v, c1, c2)
    return report


def is_injective_rep(X: Representation) -> Tuple[bool, Dict[str, VertexConditions]]:
    """Local injectivity criterion.

    This coincides with injectivity in the category of representations when
    the quiver is right rooted (every finite acyclic quiver is).  On quivers
    with cycles the answer only reports the local conditions.
    """
    report = local_conditions(X)
    return all(c.ok for c in report.values()), report


def matlis_decompose(X: Representation) -> Dict[str, int]:
    """Multiplicity of each indecomposable injective ``I_v`` in X (field case)."""
    la.require_prime(X.modulus, "Matlis decomposition")
    validate_tree(X.quiver, find_root(X.quiver))
    ok, report = is_injective_rep(X)
    if not ok:
        bad = sorted(v for v, c in report.items() if not c.ok)
        raise NotInjectiveError(f"representation is not injective (fails at {bad})", report)
    return {v: d for v, d in socle_dimensions(X).items() if d}


def is_indecomposable_injective(X: Representation) -> bool:
    mult = matlis_decompose(X)
    return sum(mult.values()) == 1


def base_change(X: Representation, P: Mapping[str, np.ndarray]) -> Representation:
    """Conjugate X by invertible per-vertex matrices: ``X'(a) = P_t X(a) P_s^{-1}`` (field case)."""
    p = X.modulus
    inv = {v: la.inverse_mod_p(P[v], p) if X.dim(v) else la.zeros(0, 0) for v in X.quiver.vertices}
    maps = {a.id: la.matmul(la.matmul(P[a.dst], X.maps[a.id], p), inv[a.src], p) for a in X.quiver.arrows}
    return Representation(X.quiver, p, X.modules, maps)
