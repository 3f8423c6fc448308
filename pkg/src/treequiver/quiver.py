"""Finite quivers and finitely presented infinite trees.

A :class:`RationalTreeScheme` is a finite digraph (cycles allowed) read as
the tree of all transition paths leaving its root state.  Vertices of that
tree are addresses: tuples of transition ids.  ``unfold`` materialises the
tree to a given depth as a :class:`FiniteQuiver`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

Path = Tuple[str, ...]
Address = Tuple[str, ...]


class QuiverError(ValueError):
    pass


class TreeError(QuiverError):
    """A quiver failed ``validate_tree``; ``kind`` and ``witness`` say why."""

    def __init__(self, kind: str, message: str, witness=None):
        super().__init__(message)
        self.kind = kind
        self.witness = witness


class CyclicQuiverError(QuiverError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    dst: str


def _arrows(items) -> Tuple[Arrow, ...]:
    out = []
    for a in items:
        if isinstance(a, Arrow):
            out.append(a)
        elif isinstance(a, dict):
            out.append(Arrow(str(a["id"]), str(a["src"]), str(a["dst"])))
        else:
            i, s, d = a
            out.append(Arrow(str(i), str(s), str(d)))
    return tuple(out)


class _Digraph:
    """Shared plumbing for quivers and schemes (vertex set + labelled arrows)."""

    _nodes: Tuple[str, ...]
    _edges: Tuple[Arrow, ...]

    def _index(self):
        ids = [a.id for a in self._edges]
        if len(set(ids)) != len(ids):
            raise QuiverError("arrow ids must be unique")
        nodes = set(self._nodes)
        if len(nodes) != len(self._nodes):
            raise QuiverError("duplicate vertex ids")
        out: Dict[str, List[Arrow]] = {v: [] for v in self._nodes}
        inc: Dict[str, List[Arrow]] = {v: [] for v in self._nodes}
        for a in self._edges:
            if a.src not in nodes or a.dst not in nodes:
                raise QuiverError(f"arrow {a.id} references an unknown vertex")
            out[a.src].append(a)
            inc[a.dst].append(a)
        for v in out:
            out[v].sort(key=lambda a: a.id)
            inc[v].sort(key=lambda a: a.id)
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inc)
        object.__setattr__(self, "_by_id", {a.id: a for a in self._edges})

    def out_arrows(self, v: str) -> List[Arrow]:
        return self._out[v]

    def in_arrows(self, v: str) -> List[Arrow]:
        return self._in[v]

    def arrow(self, arrow_id: str) -> Arrow:
        return self._by_id[arrow_id]

    def digraph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self._nodes)
        for a in self._edges:
            g.add_edge(a.src, a.dst, key=a.id)
        return g

    def reachable_from(self, v: str) -> List[str]:
        seen = {v}
        order = [v]
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for a in self._out[u]:
                if a.dst not in seen:
                    seen.add(a.dst)
                    order.append(a.dst)
                    queue.append(a.dst)
        return order

    def shortest_paths_from(self, v: str) -> Dict[str, Path]:
        """Lexicographically least shortest arrow path from ``v`` to each reachable vertex."""
        best = {v: ()}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for a in self._out[u]:
                if a.dst not in best:
                    best[a.dst] = best[u] + (a.id,)
                    queue.append(a.dst)
        return best


@dataclass(frozen=True)
class FiniteQuiver(_Digraph):
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()
    root: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", _arrows(self.arrows))
        if self.root is not None:
            object.__setattr__(self, "root", str(self.root))
            if self.root not in self.vertices:
                raise QuiverError(f"root {self.root!r} is not a vertex")
        object.__setattr__(self, "_nodes", self.vertices)
        object.__setattr__(self, "_edges", self.arrows)
        self._index()

    def sources_of(self, path: Path, start: str) -> str:
        return start if not path else self.arrow(path[0]).src

    def target_of(self, path: Path, start: str) -> str:
        return start if not path else self.arrow(path[-1]).dst

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    @cached_property
    def acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.digraph())

    @cached_property
    def _paths_from(self) -> Dict[str, Dict[str, List[Path]]]:
        table = {}
        for v in self.vertices:
            found: Dict[str, List[Path]] = {w: [] for w in self.vertices}
            stack = [(v, ())]
            while stack:
                u, acc = stack.pop()
                found[u].append(acc)
                for a in self._out[u]:
                    stack.append((a.dst, acc + (a.id,)))
            table[v] = {w: sorted(ps) for w, ps in found.items()}
        return table


@dataclass(frozen=True)
class RationalTreeScheme(_Digraph):
    states: Tuple[str, ...]
    transitions: Tuple[Arrow, ...]
    root: str

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(str(s) for s in self.states))
        object.__setattr__(self, "transitions", _arrows(self.transitions))
        object.__setattr__(self, "root", str(self.root))
        if self.root not in self.states:
            raise QuiverError(f"root state {self.root!r} is not a state")
        object.__setattr__(self, "_nodes", self.states)
        object.__setattr__(self, "_edges", self.transitions)
        self._index()
        missing = set(self.states) - set(self.reachable_from(self.root))
        if missing:
            raise QuiverError(f"states unreachable from root: {sorted(missing)}")

    def state_at(self, address: Address) -> str:
        state = self.root
        for tid in address:
            if tid not in self._by_id:
                raise QuiverError(f"unknown transition {tid!r} in address")
            t = self._by_id[tid]
            if t.src != state:
                raise QuiverError(f"transition {tid!r} does not leave state {state!r}")
            state = t.dst
        return state

    def is_valid_address(self, address: Address) -> bool:
        try:
            self.state_at(address)
        except QuiverError:
            return False
        return True

    def children(self, address: Address) -> List[Address]:
        return [address + (t.id,) for t in self._out[self.state_at(address)]]


# ---------------------------------------------------------------------------
# addresses


def address_name(address: Address) -> str:
    """``()`` -> ``"."``, ``("L", "R")`` -> ``".L.R"``.

    Round-trips through :func:`parse_address` only for dot-free transition ids.
    """
    return "." + ".".join(address) if address else "."


def parse_address(name: str) -> Address:
    if not name.startswith("."):
        raise QuiverError(f"address names start with '.': {name!r}")
    return tuple(name[1:].split(".")) if name != "." else ()


def is_prefix(a: Sequence, b: Sequence) -> bool:
    return len(a) <= len(b) and tuple(b[:len(a)]) == tuple(a)


def connected(a: Address, b: Address) -> bool:
    """Two tree vertices are connected iff one lies on the root path of the other."""
    return is_prefix(a, b) or is_prefix(b, a)


# ---------------------------------------------------------------------------
# finite quivers


def validate_tree(Q: FiniteQuiver, root: Optional[str] = None) -> None:
    """Raise :class:`TreeError` unless every vertex has exactly one path from ``root``."""
    root = Q.root if root is None else str(root)
    problem = _tree_problem(Q, root)
    if problem is not None:
        raise TreeError(*problem)


@lru_cache(maxsize=2048)
def _tree_problem(Q: FiniteQuiver, root: Optional[str]):
    try:
        _check_tree(Q, root)
    except TreeError as e:
        return e.kind, str(e), e.witness
    return None


def _check_tree(Q: FiniteQuiver, root: Optional[str]) -> None:
    if root is None or root not in Q.vertices:
        raise TreeError("root", f"root {root!r} is not a vertex of the quiver", root)
    reach = Q.reachable_from(root)
    if len(reach) != len(Q.vertices):
        missing = sorted(set(Q.vertices) - set(reach))
        raise TreeError("unreachable", f"vertex {missing[0]!r} is unreachable from {root!r}", missing[0])
    g = Q.digraph()
    try:
        cycle = nx.find_cycle(g, source=root)
    except nx.NetworkXNoCycle:
        cycle = None
    if cycle:
        witness = tuple(key for _, _, key, *_ in cycle)
        raise TreeError("cycle", f"cycle through arrows {witness}", witness)
    shortest = Q.shortest_paths_from(root)
    for v in Q.vertices:
        inc = Q.in_arrows(v)
        if len(inc) >= 2:
            a, b = inc[0], inc[1]
            p1, p2 = shortest[a.src] + (a.id,), shortest[b.src] + (b.id,)
            raise TreeError("ambiguous", f"two distinct paths from {root!r} to {v!r}: {p1} and {p2}",
                            (p1, p2))


def is_tree(Q: FiniteQuiver, root: Optional[str] = None) -> bool:
    try:
        validate_tree(Q, root)
    except TreeError:
        return False
    return True


def find_root(Q: FiniteQuiver) -> str:
    """The declared root, or the unique vertex without incoming arrows."""
    if Q.root is not None:
        return Q.root
    sources = [v for v in Q.vertices if not Q.in_arrows(v)]
    if len(sources) != 1:
        raise TreeError("root", f"cannot infer a root: sources {sources}", sources)
    return sources[0]


def is_right_rooted(Q: FiniteQuiver) -> bool:
    """No infinite forward path; for a finite quiver that means no directed cycle."""
    return Q.acyclic


def paths_between(Q: FiniteQuiver, v: str, w: str) -> List[Path]:
    """All paths from ``v`` to ``w`` (the trivial path ``()`` when ``v == w``),
    sorted lexicographically by arrow ids."""
    if not Q.acyclic:
        raise CyclicQuiverError("path enumeration needs an acyclic quiver")
    if v not in Q._paths_from or w not in Q._paths_from:
        raise QuiverError(f"unknown vertex in ({v!r}, {w!r})")
    return list(Q._paths_from[v][w])


def topological_order(Q: FiniteQuiver) -> List[str]:
    return list(nx.lexicographical_topological_sort(Q.digraph()))


def tree_signature(Q: FiniteQuiver, root: Optional[str] = None) -> str:
    """Canonical string of the rooted unlabelled tree (AHU encoding)."""
    root = find_root(Q) if root is None else root

    def enc(v):
        return "(" + "".join(sorted(enc(a.dst) for a in Q.out_arrows(v))) + ")"

    return enc(root)


# ---------------------------------------------------------------------------
# schemes


def unfold(S: RationalTreeScheme, depth: int) -> FiniteQuiver:
    """The tree of transition paths of length <= ``depth``; vertices are address names."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    vertices, arrows = [address_name(())], []
    frontier = [((), S.root)]
    for _ in range(depth):
        nxt = []
        for addr, state in frontier:
            for t in S.out_arrows(state):
                child = addr + (t.id,)
                name = address_name(child)
                vertices.append(name)
                arrows.append(Arrow(name, address_name(addr), name))
                nxt.append((child, t.dst))
        frontier = nxt
    return FiniteQuiver(tuple(vertices), tuple(arrows), address_name(()))


def adjacency_counts(S: RationalTreeScheme) -> List[List[int]]:
    idx = {s: i for i, s in enumerate(S.states)}
    A = [[0] * len(S.states) for _ in S.states]
    for t in S.transitions:
        A[idx[t.src]][idx[t.dst]] += 1
    return A


def level_counts(S: RationalTreeScheme, i_max: int) -> List[int]:
    """``n_0 .. n_{i_max}``: numbers of transition paths of each length."""
    if i_max < 0:
        raise ValueError("i_max must be >= 0")
    A = adjacency_counts(S)
    k = len(S.states)
    vec = [0] * k
    vec[S.states.index(S.root)] = 1
    counts = []
    for _ in range(i_max + 1):
        counts.append(sum(vec))
        vec = [sum(vec[i] * A[i][j] for i in range(k)) for j in range(k)]
    return counts


def _nontrivial_components(S: RationalTreeScheme) -> List[List[str]]:
    g = S.digraph()
    comps = []
    for comp in nx.strongly_connected_components(g):
        comp = sorted(comp)
        if len(comp) > 1 or any(t.dst == comp[0] for t in S.out_arrows(comp[0])):
            comps.append(comp)
    comps.sort()
    return comps


@dataclass(frozen=True)
class BarrenResult:
    barren: bool
    transient: Optional[int] = None
    stable: Optional[int] = None
    witness: Optional[dict] = None
    window: Tuple[int, ...] = ()

    def __bool__(self):
        return self.barren

    def describe(self) -> str:
        if self.barren:
            return f"barren, stable level count {self.stable}"
        kind = self.witness.get("kind") if self.witness else "unknown"
        return f"not barren ({kind})"


def structural_growth_witness(S: RationalTreeScheme) -> Optional[dict]:
    """A reason the level counts are unbounded, or ``None`` if they stay bounded.

    Unbounded iff some cycle component is not a single chordless cycle, or
    one cycle component reaches another.
    """
    comps = _nontrivial_components(S)
    for comp in comps:
        members = set(comp)
        for q in comp:
            inside = [t.id for t in S.out_arrows(q) if t.dst in members]
            if len(inside) >= 2:
                return {"kind": "branching-cycle", "state": q, "transitions": inside[:2]}
    for i, c1 in enumerate(comps):
        reach = set()
        for q in c1:
            reach.update(S.reachable_from(q))
        for j, c2 in enumerate(comps):
            if i != j and reach & set(c2):
                src, dst = c1[0], sorted(reach & set(c2))[0]
                # a concrete walk from the first cycle into the second
                walk = S.shortest_paths_from(src)[dst]
                return {"kind": "chained-cycles", "from": src, "to": dst, "walk": list(walk)}
    return None


def is_barren(S: RationalTreeScheme) -> BarrenResult:
    """Decide whether the level counts of the unfolded tree are eventually constant.

    Zero is allowed as the stable value, so finite trees are barren.  The
    structural test decides boundedness; a bounded sequence is eventually
    constant iff it is constant on ``[s, 2s + 2]`` (``s`` = number of states),
    because the counts obey a linear recurrence of order ``<= s``.
    """
    s = len(S.states)
    counts = level_counts(S, 2 * s + 2)
    window = tuple(counts[s:])
    constant = len(set(window)) == 1
    growth = structural_growth_witness(S)
    if growth is not None:
        if constant:
            raise AssertionError(f"structural growth witness {growth} but constant window {window}")
        return BarrenResult(False, witness=growth, window=window)
    if not constant:
        return BarrenResult(False, witness={"kind": "non-constant-window", "start": s,
                                            "values": list(window)}, window=window)
    stable = window[0]
    transient = s
    while transient > 0 and counts[transient - 1] == stable:
        transient -= 1
    return BarrenResult(True, transient=transient, stable=stable, window=window)


@dataclass(frozen=True)
class Comb:
    """Infinite antichain ``w_j = prefix + cycle^j + (branch,)`` for ``j >= 1``."""

    prefix: Address
    cycle: Address
    branch: str
    state: str

    def member(self, j: int) -> Address:
        if j < 1:
            raise ValueError("comb members are indexed from 1")
        return self.prefix + self.cycle * j + (self.branch,)

    def members(self, n: int) -> List[Address]:
        return [self.member(j) for j in range(1, n + 1)]

    def __iter__(self) -> Iterator[Address]:
        j = 1
        while True:
            yield self.member(j)
            j += 1

    def describe(self) -> str:
        pre = "".join(self.prefix)
        return f"w_j = {pre}({''.join(self.cycle)})^j {self.branch}"


def _shortest_cycle(S: RationalTreeScheme, q: str, first: Arrow) -> Optional[Address]:
    back = S.shortest_paths_from(first.dst)
    if q not in back:
        return None
    return (first.id,) + back[q]


def infinite_antichain(S: RationalTreeScheme) -> Optional[Comb]:
    """Canonical comb of pairwise unconnected vertices for a non-barren scheme.

    Returns ``None`` for barren schemes.  The comb sits at the state with the
    least root path that lies on a cycle and has a second way out; among its
    pairs (cycle transition, branch transition) the least branch wins, then
    the least cycle transition.
    """
    if is_barren(S):
        return None
    prefixes = S.shortest_paths_from(S.root)
    candidates = sorted(S.states, key=lambda q: (len(prefixes[q]), prefixes[q], q))
    for q in candidates:
        outs = S.out_arrows(q)
        pairs = []
        for t in outs:
            cyc = _shortest_cycle(S, q, t)
            if cyc is None:
                continue
            for b in outs:
                if b.id != t.id:
                    pairs.append((b.id, t.id, cyc))
        if pairs:
            b, _, cyc = min(pairs)
            return Comb(prefixes[q], cyc, b, q)
    raise AssertionError("non-barren scheme without a branching cycle state")


def path_space(Q, v) -> RationalTreeScheme:
    """Presentation of the tree of paths starting at ``v``.

    For a scheme ``v`` is an address; for a finite quiver it is a vertex.
    """
    if isinstance(Q, RationalTreeScheme):
        if isinstance(v, str):
            v = parse_address(v)
        state = Q.state_at(tuple(v))
        graph_nodes, edges = Q.states, Q.transitions
    elif isinstance(Q, FiniteQuiver):
        state = str(v)
        if state not in Q.vertices:
            raise QuiverError(f"{state!r} is not a vertex")
        graph_nodes, edges = Q.vertices, Q.arrows
    else:
        raise TypeError(f"cannot take the path space of {type(Q).__name__}")
    tmp = FiniteQuiver(graph_nodes, edges)
    keep = tmp.reachable_from(state)
    keep_set = set(keep)
    return RationalTreeScheme(tuple(s for s in graph_nodes if s in keep_set),
                              tuple(e for e in edges if e.src in keep_set), state)
