"""Transfinite trees presented as finite trees of ordinal-length segments.

Segment node ``n`` of length ``L`` contributes the elements ``(n, b)`` for
``b < L``; a limit-length node with ``has_top`` also contains ``(n, L)``, the
supremum of its chain.  Successor-length nodes always end in their last
element.  The elements of a node's children sit above everything in the
node: when the node has a last element they start right after it, and when
it is a limit without its top the (single) child starts at the supremum
position itself.

The stratum of an element is the order type of its strict down-set, i.e.
the ordinal sum of the spans of the ancestor nodes plus the offset.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .linalg import FgModule
from .ordinal import OMEGA, ONE, ZERO, Ordinal
from .quiver import Arrow, FiniteQuiver, QuiverError, RationalTreeScheme, find_root, is_barren, path_space, validate_tree
from .representation import Representation


class SegmentError(ValueError):
    pass


@dataclass(frozen=True)
class SegmentNode:
    id: str
    length: Ordinal
    has_top: bool = False
    children: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "length", Ordinal.of(self.length))
        object.__setattr__(self, "children", tuple(str(c) for c in self.children))
        if self.length.is_zero():
            raise SegmentError(f"segment {self.id!r} must have length >= 1")
        if self.length.is_successor():
            # the last element is the top; nothing to choose
            object.__setattr__(self, "has_top", True)
        else:
            object.__setattr__(self, "has_top", bool(self.has_top))

    @property
    def last(self) -> Optional[Ordinal]:
        """Offset of the greatest element, if the node has one."""
        if self.length.is_successor():
            return self.length.pred()
        return self.length if self.has_top else None

    @property
    def span(self) -> Ordinal:
        """Order type of the node's own elements."""
        if self.length.is_limit() and self.has_top:
            return self.length + 1
        return self.length

    def contains(self, offset: Ordinal) -> bool:
        return offset < self.length or (self.last is not None and offset == self.last)


@dataclass(frozen=True)
class TransfiniteAddress:
    path: Tuple[str, ...]
    offset: Ordinal = ZERO

    def __post_init__(self):
        object.__setattr__(self, "path", tuple(str(p) for p in self.path))
        object.__setattr__(self, "offset", Ordinal.of(self.offset))
        if not self.path:
            raise SegmentError("an address needs at least the root node")

    @property
    def node(self) -> str:
        return self.path[-1]

    def name(self) -> str:
        return f"{self.node}@{self.offset.pretty()}"

    def __str__(self):
        return self.name()


@dataclass(frozen=True)
class SegmentScheme:
    nodes: Tuple[SegmentNode, ...]
    root: str

    def __post_init__(self):
        object.__setattr__(self, "root", str(self.root))
        object.__setattr__(self, "nodes", tuple(self.nodes))
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            raise SegmentError("segment ids must be unique")
        by_id = {n.id: n for n in self.nodes}
        if self.root not in by_id:
            raise SegmentError(f"root segment {self.root!r} not found")
        parent = {}
        for n in self.nodes:
            for c in n.children:
                if c not in by_id:
                    raise SegmentError(f"segment {n.id!r} lists unknown child {c!r}")
                if c in parent or c == self.root:
                    raise SegmentError(f"segment {c!r} has more than one parent")
                parent[c] = n.id
        # every node reachable from the root, no cycles
        seen, stack = set(), [self.root]
        while stack:
            u = stack.pop()
            if u in seen:
                raise SegmentError("segment tree contains a cycle")
            seen.add(u)
            stack.extend(by_id[u].children)
        if seen != set(ids):
            raise SegmentError(f"segments unreachable from root: {sorted(set(ids) - seen)}")
        for n in self.nodes:
            if n.last is None and len(n.children) > 1:
                raise SegmentError(
                    f"segment {n.id!r} has limit length without its top and several children: "
                    "its chain would have several minimal upper bounds")
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_parent", parent)

    def node(self, node_id: str) -> SegmentNode:
        return self._by_id[node_id]

    def parent(self, node_id: str) -> Optional[str]:
        return self._parent.get(node_id)

    def path_to(self, node_id: str) -> Tuple[str, ...]:
        path = [node_id]
        while path[-1] != self.root:
            path.append(self._parent[path[-1]])
        return tuple(reversed(path))

    @cached_property
    def starts(self) -> Dict[str, Ordinal]:
        out = {self.root: ZERO}
        stack = [self.root]
        while stack:
            u = stack.pop()
            n = self._by_id[u]
            for c in n.children:
                out[c] = out[u] + n.span
                stack.append(c)
        return out

    def start(self, node_id: str) -> Ordinal:
        return self.starts[node_id]

    def end(self, node_id: str) -> Ordinal:
        return self.starts[node_id] + self._by_id[node_id].span

    def ordered_ids(self) -> List[str]:
        """Node ids in depth-first order of segment paths (children by listed order)."""
        out, stack = [], [self.root]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self._by_id[u].children))
        return out

    def address(self, node_id: str, offset=0) -> TransfiniteAddress:
        a = TransfiniteAddress(self.path_to(str(node_id)), Ordinal.of(offset))
        check_address(self, a)
        return a

    def root_address(self) -> TransfiniteAddress:
        return TransfiniteAddress((self.root,), ZERO)

    def is_finite(self) -> bool:
        return all(n.length.is_finite() for n in self.nodes)


def check_address(T: SegmentScheme, a: TransfiniteAddress) -> None:
    if a.path[0] != T.root:
        raise SegmentError(f"address {a} does not start at the root segment")
    for u, c in zip(a.path, a.path[1:]):
        if c not in T.node(u).children:
            raise SegmentError(f"{c!r} is not a child of {u!r}")
    if a.node not in T._by_id:
        raise SegmentError(f"unknown segment {a.node!r}")
    if not T.node(a.node).contains(a.offset):
        raise SegmentError(f"offset {a.offset.pretty()} is not an element of segment {a.node!r}")


def leq(T: SegmentScheme, a: TransfiniteAddress, b: TransfiniteAddress) -> bool:
    if a.path == b.path:
        return a.offset <= b.offset
    return len(a.path) < len(b.path) and b.path[:len(a.path)] == a.path


# ---------------------------------------------------------------------------
# stratification


def stratum(T: SegmentScheme, a: TransfiniteAddress) -> Ordinal:
    """Order type of the strict down-set of ``a``."""
    check_address(T, a)
    return T.start(a.node) + a.offset


@dataclass(frozen=True)
class StrataProfile:
    least_empty: Ordinal
    intervals: Tuple[Tuple[str, Ordinal, Ordinal], ...]  # (node, start, end)

    def count(self, alpha) -> int:
        alpha = Ordinal.of(alpha)
        return sum(1 for _, s, e in self.intervals if s <= alpha < e)

    def nodes_at(self, alpha) -> List[str]:
        alpha = Ordinal.of(alpha)
        return [n for n, s, e in self.intervals if s <= alpha < e]

    def blocks(self) -> List[Tuple[Ordinal, Ordinal, int]]:
        """Maximal ``[start, end)`` ranges on which the stratum size is constant."""
        cuts = sorted({s for _, s, _ in self.intervals} | {e for _, _, e in self.intervals})
        out = []
        for lo, hi in zip(cuts, cuts[1:]):
            c = self.count(lo)
            if out and out[-1][2] == c and out[-1][1] == lo:
                out[-1] = (out[-1][0], hi, c)
            else:
                out.append((lo, hi, c))
        return out


def strata_profile(T: SegmentScheme) -> StrataProfile:
    """Least ``L`` with an empty stratum ``T_L``, plus symbolic stratum sizes."""
    intervals = tuple((n, T.start(n), T.end(n)) for n in T.ordered_ids())
    return StrataProfile(max(e for _, _, e in intervals), intervals)


# ---------------------------------------------------------------------------
# completeness


def is_complete(T: SegmentScheme) -> bool:
    """Every chain has a least upper bound.

    The only chains that can lack one are the cofinal chains of a
    limit-length segment with neither a top nor a child to sit above them.
    """
    return not missing_suprema(T)


def missing_suprema(T: SegmentScheme) -> List[str]:
    return [n.id for n in T.nodes if n.last is None and not n.children]


def lub_of_chain(T: SegmentScheme, chain) -> Optional[TransfiniteAddress]:
    """Least upper bound of a finitely described chain, if it lies in ``T``.

    ``chain`` is either ``(node_id, beta)``, meaning every element of the
    ancestor segments together with the offsets ``< beta`` of ``node_id``
    (``1 <= beta <= span``), or an iterable of addresses forming a chain.
    """
    if isinstance(chain, tuple) and len(chain) == 2 and isinstance(chain[0], str):
        node_id, beta = chain[0], Ordinal.of(chain[1])
        if node_id not in T._by_id:
            raise SegmentError(f"unknown segment {node_id!r}")
        n = T.node(node_id)
        if beta.is_zero() or beta > n.span:
            raise SegmentError(f"chain bound {beta.pretty()} outside 1..{n.span.pretty()}")
        path = T.path_to(node_id)
        if beta.is_successor():
            return TransfiniteAddress(path, beta.pred())
        if n.contains(beta):
            return TransfiniteAddress(path, beta)
        if len(n.children) == 1:
            return TransfiniteAddress(path + (n.children[0],), ZERO)
        return None
    members = list(chain)
    if not members:
        raise SegmentError("empty chain")
    for a in members:
        check_address(T, a)
    top = members[0]
    for a in members[1:]:
        if leq(T, top, a):
            top = a
        elif not leq(T, a, top):
            raise SegmentError(f"{a} and {top} are incomparable: not a chain")
    return top


@dataclass(frozen=True)
class Completion:
    scheme: SegmentScheme
    added: Tuple[TransfiniteAddress, ...]

    def embed(self, a: TransfiniteAddress) -> TransfiniteAddress:
        # addresses of T keep their meaning (and their strata) in the completion
        check_address(self.scheme, a)
        return a


def complete(T: SegmentScheme) -> Completion:
    """Add the missing suprema ("vertices at infinity").

    Each added element is the top of a limit-length leaf segment: it is the
    least upper bound of that segment's chain and nothing in ``T`` lies above
    it, so ``T`` stays down-closed.
    """
    missing = set(missing_suprema(T))
    nodes = tuple(replace(n, has_top=True) if n.id in missing else n for n in T.nodes)
    Tbar = SegmentScheme(nodes, T.root)
    added = tuple(TransfiniteAddress(Tbar.path_to(n), Tbar.node(n).length) for n in sorted(missing))
    return Completion(Tbar, added)


# ---------------------------------------------------------------------------
# finite samples


def _ordinals_with_small_coefficients(bound: Ordinal, k: int) -> List[Ordinal]:
    """All ordinals below ``bound`` whose CNF coefficients are all ``< k``."""
    if bound.is_zero():
        return []
    top_exp = bound.terms[0][0]
    out = []
    for coeffs in product(range(k), repeat=top_exp + 1):
        terms = tuple((top_exp - i, c) for i, c in enumerate(coeffs) if c)
        o = Ordinal(terms)
        if o < bound:
            out.append(o)
    return sorted(out)


def sample_offsets(n: SegmentNode, k: int) -> List[Ordinal]:
    offs = set(_ordinals_with_small_coefficients(n.length, k))
    if n.last is not None:
        offs.add(n.last)
    return sorted(offs)


@dataclass(frozen=True)
class Truncation:
    """A finite sub-tree of a segment scheme together with its vertex addresses."""

    quiver: FiniteQuiver
    addresses: Mapping[str, TransfiniteAddress]

    def vertex_of(self, a: TransfiniteAddress) -> Optional[str]:
        for v, b in self.addresses.items():
            if b == a:
                return v
        return None


def truncate(T: SegmentScheme, k: int) -> Truncation:
    """Finite sub-poset: offsets with CNF coefficients ``< k`` plus every last element.

    Arrows join each sampled element to the greatest sampled element below
    it, so the result is a finite tree whose order is the restricted order.
    """
    if k < 1:
        raise ValueError("sample size must be >= 1")
    vertices, arrows, addrs = [], [], {}
    last_vertex: Dict[str, Optional[str]] = {}

    def visit(node_id, below):
        n = T.node(node_id)
        path = T.path_to(node_id)
        prev = below
        for off in sample_offsets(n, k):
            a = TransfiniteAddress(path, off)
            name = a.name()
            vertices.append(name)
            addrs[name] = a
            if prev is not None:
                arrows.append(Arrow(name, prev, name))
            prev = name
        for c in n.children:
            visit(c, prev)

    visit(T.root, None)
    root_name = T.root_address().name()
    return Truncation(FiniteQuiver(tuple(vertices), tuple(arrows), root_name), addrs)


def segments_from_tree(Q: FiniteQuiver, root: Optional[str] = None) -> SegmentScheme:
    """A finite tree quiver as a segment scheme with one length-1 node per vertex."""
    root = find_root(Q) if root is None else root
    validate_tree(Q, root)
    nodes = tuple(SegmentNode(v, ONE, True, tuple(a.dst for a in Q.out_arrows(v))) for v in Q.vertices)
    return SegmentScheme(nodes, root)


# ---------------------------------------------------------------------------
# cocontinuous representations


@dataclass(frozen=True, eq=False)
class SegmentValues:
    """Eventually constant data along one segment.

    ``breakpoints[k] = (offset, module)``: the value from that offset until
    the next breakpoint.  ``connecting[k]`` maps module ``k`` to module
    ``k + 1``; between breakpoints every map is the identity.
    """

    breakpoints: Tuple[Tuple[Ordinal, FgModule], ...]
    connecting: Tuple[np.ndarray, ...] = ()

    def __post_init__(self):
        bps = tuple((Ordinal.of(o), M if isinstance(M, FgModule) else FgModule(tuple(M)))
                    for o, M in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "connecting", tuple(np.asarray(c, dtype=np.int64) for c in self.connecting))
        if not bps or bps[0][0] != ZERO:
            raise SegmentError("the first breakpoint must sit at offset 0")
        for (a, _), (b, _) in zip(bps, bps[1:]):
            if not a < b:
                raise SegmentError("breakpoint offsets must increase strictly")
        if len(self.connecting) != len(bps) - 1:
            raise SegmentError("need one connecting matrix per consecutive pair of breakpoints")
        for k, C in enumerate(self.connecting):
            shape = (bps[k + 1][1].rank, bps[k][1].rank)
            if C.shape != shape:
                raise la.DimensionError(f"connecting matrix {k} has shape {C.shape}, expected {shape}")

    def index_at(self, offset: Ordinal) -> int:
        k = 0
        for i, (o, _) in enumerate(self.breakpoints):
            if o <= offset:
                k = i
        return k

    def module_at(self, offset: Ordinal) -> FgModule:
        return self.breakpoints[self.index_at(offset)][1]

    @property
    def tail(self) -> FgModule:
        return self.breakpoints[-1][1]


@dataclass(frozen=True, eq=False)
class CocontinuousRep:
    scheme: SegmentScheme
    modulus: int
    segments: Mapping[str, SegmentValues]
    attachments: Mapping[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        m = self.modulus
        for n in self.scheme.nodes:
            if n.id not in self.segments:
                raise SegmentError(f"no values given for segment {n.id!r}")
            sv = self.segments[n.id]
            for o, M in sv.breakpoints:
                M.check_divides(m)
                if not n.contains(o):
                    raise SegmentError(f"breakpoint {o.pretty()} outside segment {n.id!r}")
            for k, C in enumerate(sv.connecting):
                if not la.is_homomorphism(C % m, sv.breakpoints[k][1], sv.breakpoints[k + 1][1]):
                    raise SegmentError(f"connecting matrix {k} of {n.id!r} is not a homomorphism")
        atts = {}
        for n in self.scheme.nodes:
            for c in n.children:
                shape = (self.segments[c].breakpoints[0][1].rank, self.segments[n.id].tail.rank)
                A = self.attachments.get(c)
                A = la.zeros(*shape) if A is None else np.asarray(A, dtype=np.int64) % m
                if A.shape != shape:
                    raise la.DimensionError(f"attachment into {c!r} has shape {A.shape}, expected {shape}")
                atts[c] = A
        object.__setattr__(self, "attachments", atts)

    def value(self, a: TransfiniteAddress) -> FgModule:
        check_address(self.scheme, a)
        return self.segments[a.node].module_at(a.offset)

    def _within(self, node_id, lo: Optional[Ordinal], hi: Optional[Ordinal]) -> np.ndarray:
        """Map from offset ``lo`` to offset ``hi`` inside one segment (None = past the end)."""
        sv = self.segments[node_id]
        m = self.modulus
        i = sv.index_at(lo) if lo is not None else 0
        j = sv.index_at(hi) if hi is not None else len(sv.breakpoints) - 1
        M = la.identity(sv.breakpoints[i][1].rank)
        for k in range(i, j):
            M = la.matmul(sv.connecting[k], M, m)
        return M

    def map_between(self, a: TransfiniteAddress, b: TransfiniteAddress) -> np.ndarray:
        """``X(a -> b)`` for ``a <= b``."""
        T = self.scheme
        if not leq(T, a, b):
            raise SegmentError(f"{a} is not below {b}")
        m = self.modulus
        if a.path == b.path:
            return la.reduce_rows(self._within(a.node, a.offset, b.offset), self.value(b))
        M = self._within(a.node, a.offset, None)
        for child in b.path[len(a.path):]:
            M = la.matmul(self.attachments[child], M, m)
            hi = b.offset if child == b.node else None
            M = la.matmul(self._within(child, ZERO, hi), M, m)
        return la.reduce_rows(M, self.value(b))

    def restrict(self, tr: Truncation) -> Representation:
        Q = tr.quiver
        modules = {v: self.value(tr.addresses[v]) for v in Q.vertices}
        maps = {a.id: self.map_between(tr.addresses[a.src], tr.addresses[a.dst]) for a in Q.arrows}
        return Representation(Q, self.modulus, modules, maps)


@dataclass(frozen=True)
class CocontinuityViolation:
    address: TransfiniteAddress
    reason: str


def check_cocontinuous(X: CocontinuousRep) -> List[CocontinuityViolation]:
    """Limit positions whose value is not the colimit of the values below.

    Below a limit position the data is eventually an identity chain on the
    previous tail module, so the colimit is that module and the required
    transition is the identity.
    """
    T, m = X.scheme, X.modulus
    bad = []
    for n in T.nodes:
        sv = X.segments[n.id]
        path = T.path_to(n.id)
        for k in range(1, len(sv.breakpoints)):
            off, M = sv.breakpoints[k]
            if not off.is_limit():
                continue
            prev = sv.breakpoints[k - 1][1]
            C = sv.connecting[k - 1]
            if M != prev or not la.maps_equal(C, la.identity(prev.rank), M):
                bad.append(CocontinuityViolation(TransfiniteAddress(path, off),
                                                 f"value {M} is not the colimit {prev} via the identity"))
        if n.last is None:
            # a child sitting at the supremum position must carry the colimit
            for c in n.children:
                M = X.segments[c].breakpoints[0][1]
                A = X.attachments[c]
                if M != sv.tail or not la.maps_equal(A, la.identity(sv.tail.rank), M):
                    bad.append(CocontinuityViolation(TransfiniteAddress(path + (c,), ZERO),
                                                     f"value {M} is not the colimit {sv.tail} via the identity"))
    return bad


def build_indec_injective(Tbar: SegmentScheme, v: TransfiniteAddress, E: FgModule, m: int) -> CocontinuousRep:
    """``e_*^v(E)``: E with identities on the chain up to ``v``, zero elsewhere."""
    if E not in la.indecomposable_injective_modules(m):
        raise la.UnsupportedModulus(f"{E} is not an indecomposable injective Z/{m}-module")
    check_address(Tbar, v)
    r = E.rank
    on_path = set(v.path)
    segments, atts = {}, {}
    for n in Tbar.nodes:
        if n.id not in on_path:
            segments[n.id] = SegmentValues(((ZERO, la.ZERO_MODULE),))
        elif n.id != v.node:
            segments[n.id] = SegmentValues(((ZERO, E),))
        else:
            nxt = v.offset + 1
            if n.contains(nxt):
                segments[n.id] = SegmentValues(((ZERO, E), (nxt, la.ZERO_MODULE)), (la.zeros(0, r),))
            else:
                segments[n.id] = SegmentValues(((ZERO, E),))
    for n in Tbar.nodes:
        for c in n.children:
            src = segments[n.id].tail.rank
            dst = segments[c].breakpoints[0][1].rank
            atts[c] = la.identity(r) if (src == dst == r and c in on_path) else la.zeros(dst, src)
    return CocontinuousRep(Tbar, m, segments, atts)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Label:
    address: TransfiniteAddress
    module: FgModule
    stratum: Ordinal

    def __str__(self):
        return f"{self.address.name()} {self.module}"


class Classification:
    """Indecomposable injectives of ``(Tbar, R-Mod)``: one per (address of Tbar, E).

    Iteration is lazy and ordered by (stratum, segment path, module).  When
    the completion has infinitely many finite strata the stream never
    reaches the infinite ones; use :meth:`labels_at` for those.
    """

    def __init__(self, T: SegmentScheme, m: int):
        self.original = T
        self.completion = complete(T)
        self.scheme = self.completion.scheme
        self.modulus = m
        self.modules = la.indecomposable_injective_modules(m)
        self.profile = strata_profile(self.scheme)
        self._order = {nid: i for i, nid in enumerate(self.scheme.ordered_ids())}

    def labels_at(self, alpha) -> List[Label]:
        alpha = Ordinal.of(alpha)
        out = []
        nodes = sorted(self.profile.nodes_at(alpha), key=lambda n: self.scheme.path_to(n))
        for nid in nodes:
            off = alpha.left_subtract(self.scheme.start(nid))
            addr = TransfiniteAddress(self.scheme.path_to(nid), off)
            for E in self.modules:
                out.append(Label(addr, E, alpha))
        return out

    def count_at(self, alpha) -> int:
        return self.profile.count(alpha) * len(self.modules)

    def __iter__(self) -> Iterator[Label]:
        alpha = ZERO
        limit = self.profile.least_empty
        while alpha < limit:
            yield from self.labels_at(alpha)
            alpha = alpha + 1

    def take(self, k: int) -> List[Label]:
        out = []
        for lab in self:
            if len(out) == k:
                break
            out.append(lab)
        return out

    def build(self, label: Label) -> CocontinuousRep:
        return build_indec_injective(self.scheme, label.address, label.module, self.modulus)


def classify(T, m: int) -> Classification:
    if isinstance(T, FiniteQuiver):
        T = segments_from_tree(T)
    if not isinstance(T, SegmentScheme):
        raise TypeError("classify expects a segment scheme or a finite tree quiver")
    return Classification(T, m)


# ---------------------------------------------------------------------------
# noetherian check


@dataclass(frozen=True)
class PathSpaceClass:
    """Level behaviour of the finite-path space at a class of vertices."""

    description: str
    stable: int
    transient: int


def _pieces_from(T: SegmentScheme, node_id: str, offset: Ordinal, level: int, out: list):
    """Collect ``(start_level, end_level or None)`` chains of the finite-path space."""
    n = T.node(node_id)
    last = n.last
    if last is None or last.limit_part != offset.limit_part or last < offset:
        out.append((level, None))
        return
    steps = last.left_subtract(offset).finite_part
    out.append((level, level + steps))
    for c in n.children:
        # children start at a successor position exactly when a last element exists
        _pieces_from(T, c, ZERO, level + steps + 1, out)


def _class_summary(T, node_id, offset) -> Tuple[int, int]:
    pieces = []
    _pieces_from(T, node_id, offset, 0, pieces)
    stable = sum(1 for _, e in pieces if e is None)
    transient = max([e + 1 for _, e in pieces if e is not None] + [s for s, e in pieces if e is None] + [0])
    return stable, transient


def is_noetherian(T) -> Tuple[bool, List[PathSpaceClass]]:
    """Every path space is barren.

    Segment schemes always pass (finitely many segments, so level counts
    settle); each node yields at most two vertex classes.  Rational schemes
    are checked state by state.
    """
    if isinstance(T, RationalTreeScheme):
        classes = []
        for q in T.states:
            sub = path_space(FiniteQuiver(T.states, T.transitions), q)
            res = is_barren(sub)
            classes.append(PathSpaceClass(f"state {q}", res.stable if res.barren else -1,
                                          res.transient if res.barren else -1))
        return all(c.stable >= 0 for c in classes), classes
    if isinstance(T, FiniteQuiver):
        T = segments_from_tree(T)
    classes = []
    for nid in T.ordered_ids():
        n = T.node(nid)
        last = n.last
        if last is None or not last.limit_part.is_zero():
            s, t = _class_summary(T, nid, ZERO)
            lo = "all offsets" if last is None else f"offsets below {last.limit_part.pretty()}"
            classes.append(PathSpaceClass(f"{nid}: {lo}", s, t))
        if last is not None:
            rep = last.limit_part
            s, t = _class_summary(T, nid, rep)
            classes.append(PathSpaceClass(f"{nid}: offsets {rep.pretty()}..{last.pretty()}", s, t))
    return True, classes
