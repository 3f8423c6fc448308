"""Non-barren trees are not source injective representation quivers.

Everything happens on a finite truncation of the tree: the stalk
representations on an antichain, their injective envelopes, the morphism
``phi`` into the sum of envelopes, and the components that any extension of
``phi`` to the whole tree is forced to have.  The infinite statement is the
limit of these finite stages and is reported, never asserted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .linalg import FgModule
from .quiver import (Address, Comb, FiniteQuiver, RationalTreeScheme, address_name, infinite_antichain,
                     is_barren, unfold)
from .representation import (RepMorphism, Representation, VertexConditions, check_morphism, direct_sum,
                             injective_envelope, is_injective_rep, local_conditions, stalk_functor)


class CounterexampleError(ValueError):
    pass


@dataclass(frozen=True)
class SourceConditionsReport:
    vertices: Dict[str, VertexConditions]

    @property
    def overall(self) -> bool:
        return all(c.ok for c in self.vertices.values())

    def failures(self) -> List[str]:
        return [v for v, c in self.vertices.items() if not c.ok]

    def to_json(self) -> dict:
        return {"overall": self.overall,
                "vertices": {v: {"cond_i": c.cond_i, "cond_ii": c.cond_ii} for v, c in self.vertices.items()}}


def source_conditions_check(Q: FiniteQuiver, X: Representation) -> SourceConditionsReport:
    """Module injectivity and the split-epi condition at every vertex."""
    if X.quiver != Q:
        raise CounterexampleError("representation lives on a different quiver")
    return SourceConditionsReport(local_conditions(X))


@dataclass(eq=False)
class WitnessFamily:
    scheme: RationalTreeScheme
    modulus: int
    comb: Comb
    antichain: List[Address]
    depth: int
    quiver: FiniteQuiver
    stalks: List[Representation]
    envelopes: List[Representation]
    embeddings: List[RepMorphism]
    phi: RepMorphism

    @property
    def N(self) -> int:
        return len(self.antichain)

    @property
    def source_sum(self) -> Representation:
        return self.phi.source

    @property
    def envelope_sum(self) -> Representation:
        return self.phi.target

    def vertex(self, j: int) -> str:
        """Vertex name of ``w_j`` (1-based)."""
        return address_name(self.antichain[j - 1])


def _block_offsets(X_list: Sequence[Representation], v: str) -> List[int]:
    out, acc = [], 0
    for X in X_list:
        out.append(acc)
        acc += X.dim(v)
    out.append(acc)
    return out


def build_witness_family(S: RationalTreeScheme, m: int, N: int, depth: Optional[int] = None) -> WitnessFamily:
    """The stalks ``S_{w_j}(R)``, envelopes ``E_{w_i}`` of ``sum_{j>i} S_{w_j}(R)`` and ``phi``.

    ``phi`` restricted to summand ``j`` has component ``d_i pi_i tau_j`` into
    ``E_{w_i}``: the envelope embedding when ``j > i`` and zero otherwise.
    """
    la.require_prime(m, "witness family")
    if N < 1:
        raise CounterexampleError("N must be >= 1")
    if is_barren(S):
        raise CounterexampleError("scheme is barren: the forcing argument needs a non-barren tree")
    comb = infinite_antichain(S)
    W = comb.members(N)
    needed = len(W[-1]) + 1
    if depth is None:
        depth = needed
    if depth < needed:
        raise CounterexampleError(f"depth {depth} too small: need {needed} to hold w_1..w_{N} and a level beyond")
    Q = unfold(S, depth)
    R = FgModule((m,))
    stalks = [stalk_functor(address_name(w), R, Q, m) for w in W]
    envelopes, embeddings = [], []
    for i in range(1, N + 1):
        tail = stalks[i:]  # summands j > i
        src = direct_sum(tail, Q, m)
        E, d = injective_envelope(src)
        envelopes.append(E)
        embeddings.append(d)
    source = direct_sum(stalks, Q, m)
    target = direct_sum(envelopes, Q, m)
    comps = {}
    for u in Q.vertices:
        col_off = _block_offsets(stalks, u)
        row_off = _block_offsets(envelopes, u)
        C = la.zeros(target.dim(u), source.dim(u))
        for i in range(1, N + 1):
            d = embeddings[i - 1].components[u]
            inner = _block_offsets(stalks[i:], u)
            for j in range(i + 1, N + 1):
                block = d[:, inner[j - i - 1]:inner[j - i]]
                C[row_off[i - 1]:row_off[i], col_off[j - 1]:col_off[j]] = block
        comps[u] = C
    phi = RepMorphism(source, target, comps)
    return WitnessFamily(S, m, comb, W, depth, Q, stalks, envelopes, embeddings, phi)


def root_inclusion(F: WitnessFamily) -> RepMorphism:
    """``sum_j S_{w_j}(R) -> S_root(R)``, summand-wise the canonical inclusion."""
    Q, m = F.quiver, F.modulus
    S_root = stalk_functor(Q.root, FgModule((m,)), Q, m)
    comps = {}
    for u in Q.vertices:
        cols = [la.identity(1) if X.dim(u) else la.zeros(1, 0) for X in F.stalks]
        comps[u] = np.concatenate(cols, axis=1) if cols else la.zeros(1, 0)
    return RepMorphism(F.source_sum, S_root, comps)


def sum_is_direct(F: WitnessFamily) -> bool:
    """The images of the stalks inside ``S_root(R)`` are independent at every vertex."""
    inc = root_inclusion(F)
    for u, C in inc.components.items():
        if la.rank_mod_p(C, F.modulus) != C.shape[1]:
            return False
    return True


@dataclass(frozen=True)
class ForcedReport:
    index: int                       # i: evaluating at w_{i+1}
    support: FrozenSet[int]          # envelope summands where phi(1_{w_{i+1}}) is nonzero
    forced: FrozenSet[int]           # summands where every lift has a nonzero root value
    lift_exists: bool

    def to_json(self) -> dict:
        return {"i": self.index, "support": sorted(self.support), "forced": sorted(self.forced),
                "lift_exists": self.lift_exists}


def _root_path(F: WitnessFamily, j: int) -> Tuple[str, ...]:
    return tuple(address_name(F.antichain[j - 1][:k]) for k in range(1, len(F.antichain[j - 1]) + 1))


def forced_components(F: WitnessFamily) -> List[ForcedReport]:
    """For each ``i < N``: which components of ``psi(1_root)`` are forced nonzero.

    ``psi`` is any extension of ``phi`` along ``sum_j S_{w_j}(R) -> S_root(R)``;
    it is fixed by ``x = psi(1_root)`` and must satisfy ``h_k x = phi(1_{w_k})``
    where ``h_k`` is the path map from the root to ``w_k``.
    """
    if F.N != len(F.stalks) or len(F.envelopes) != F.N:
        raise CounterexampleError("malformed witness family")
    m = F.modulus
    target = F.envelope_sum
    root = F.quiver.root
    root_blocks = _block_offsets(F.envelopes, root)

    def generator_image(k):
        v = F.vertex(k)
        cols = _block_offsets(F.stalks, v)
        return F.phi.components[v][:, cols[k - 1]]

    h = {k: target.path_map(_root_path(F, k), root) for k in range(1, F.N + 1)}
    A_all = np.concatenate([h[k] for k in range(1, F.N + 1)], axis=0)
    b_all = np.concatenate([generator_image(k) for k in range(1, F.N + 1)])
    lift = la.solve_linear(A_all, b_all, m) is not None

    reports = []
    for i in range(1, F.N):
        k = i + 1
        v = F.vertex(k)
        rows = _block_offsets(F.envelopes, v)
        img = generator_image(k)
        support = frozenset(c for c in range(1, F.N + 1) if img[rows[c - 1]:rows[c]].any())
        forced = set()
        for c in range(1, F.N + 1):
            lo, hi = root_blocks[c - 1], root_blocks[c]
            pin = la.zeros(hi - lo, A_all.shape[1])
            pin[:, lo:hi] = la.identity(hi - lo)
            A = np.concatenate([h[k], pin], axis=0)
            b = np.concatenate([img, np.zeros(hi - lo, dtype=np.int64)])
            if la.solve_linear(A, b, m) is None:
                forced.add(c)
        reports.append(ForcedReport(i, support, frozenset(forced), lift))
    return reports


@dataclass
class CertificateStage:
    N: int
    depth: int
    antichain: List[str]
    conditions: SourceConditionsReport
    forced: List[ForcedReport]
    phi_is_morphism: bool
    sum_direct: bool

    @property
    def forced_count(self) -> int:
        return max((len(r.forced) for r in self.forced), default=0)

    def to_json(self) -> dict:
        return {"N": self.N, "depth": self.depth, "antichain": self.antichain,
                "source_conditions": self.conditions.overall,
                "failing_vertices": self.conditions.failures(),
                "forced": [r.to_json() for r in self.forced],
                "forced_count": self.forced_count,
                "phi_is_morphism": self.phi_is_morphism, "sum_is_direct": self.sum_direct}


@dataclass
class Certificate:
    scheme: RationalTreeScheme
    modulus: int
    comb: str
    stages: List[CertificateStage] = field(default_factory=list)

    @property
    def forced_counts(self) -> List[int]:
        return [s.forced_count for s in self.stages]

    @property
    def conditions_hold(self) -> bool:
        return all(s.conditions.overall for s in self.stages)

    @property
    def growing(self) -> bool:
        c = self.forced_counts
        return all(a < b for a, b in zip(c, c[1:]))

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "comb": self.comb,
                "forced_counts": self.forced_counts,
                "conditions_hold": self.conditions_hold, "forced_counts_grow": self.growing,
                "interpretation": ("each finite sum of envelopes satisfies the local conditions, while "
                                   "the number of forced nonzero root components grows with N; "
                                   "in the limit the sum cannot be injective"),
                "stages": [s.to_json() for s in self.stages]}

    def summary(self) -> str:
        lines = [f"comb: {self.comb}", f"modulus: {self.modulus}"]
        for s in self.stages:
            lines.append(f"N={s.N} depth={s.depth} local conditions={'hold' if s.conditions.overall else 'FAIL'} "
                         f"forced={[sorted(r.forced) for r in s.forced]}")
        lines.append(f"forced counts: {self.forced_counts}")
        return "\n".join(lines)


def forcing_certificate(S: RationalTreeScheme, m: int, N_max: int,
                            depth: Optional[int] = None) -> Certificate:
    """Stages N = 1..N_max; ``depth`` fixes one truncation depth for all stages."""
    if is_barren(S):
        raise CounterexampleError("scheme is barren: the forcing argument needs a non-barren tree")
    comb = infinite_antichain(S)
    cert = Certificate(S, m, comb.describe())
    for N in range(1, N_max + 1):
        F = build_witness_family(S, m, N, depth)
        target = F.envelope_sum
        cert.stages.append(CertificateStage(
            N, F.depth, [address_name(w) for w in F.antichain],
            source_conditions_check(F.quiver, target), forced_components(F),
            not check_morphism(F.phi), sum_is_direct(F)))
    return cert


# ---------------------------------------------------------------------------
# finite sums commute with finite products


@dataclass(frozen=True)
class InterchangeReport:
    ok: bool
    out_degree: int
    summands: int
    modulus: int
    note: str = ("for a vertex with infinitely many outgoing arrows (the star tree) the product "
                 "and the direct sum no longer agree, which is where the argument breaks")


def interchange_check(d: int, n: int, m: int, seed: int = 0, modules=None) -> InterchangeReport:
    """``sum_{j<=n} prod_{k<=d} M_jk`` vs ``prod_k sum_j M_jk`` via the canonical map.

    The canonical map is the coordinate reshuffle ``(j, k) -> (k, j)``; it is
    checked to be a homomorphism with a two-sided inverse.
    """
    if d < 1 or n < 1:
        raise ValueError("out-degree and summand count must be >= 1")
    rng = random.Random(seed)
    divisors = [q for q in range(2, m + 1) if m % q == 0]
    if modules is None:
        modules = [[FgModule(tuple(rng.choice(divisors) for _ in range(rng.randint(0, 2))))
                    for _ in range(d)] for _ in range(n)]
    left_order = [(j, k) for j in range(n) for k in range(d)]
    right_order = [(j, k) for k in range(d) for j in range(n)]

    def coords(order):
        out = []
        for j, k in order:
            out.extend((j, k, c) for c in range(modules[j][k].rank))
        return out

    lc, rc = coords(left_order), coords(right_order)
    left = FgModule(tuple(modules[j][k].invariant_factors[c] for j, k, c in lc))
    right = FgModule(tuple(modules[j][k].invariant_factors[c] for j, k, c in rc))
    pos = {t: i for i, t in enumerate(lc)}
    P = la.zeros(len(rc), len(lc))
    for r, t in enumerate(rc):
        P[r, pos[t]] = 1
    ok = la.is_homomorphism(P, left, right)
    g = la.right_inverse(P, m, left, right)
    ok = ok and g is not None
    if ok:
        back = la.matmul(g, P, m)
        ok = la.maps_equal(back, la.identity(left.rank), left)
    return InterchangeReport(bool(ok), d, n, m)
