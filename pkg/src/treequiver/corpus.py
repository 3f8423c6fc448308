"""Named trees used throughout the tests, demos and CLI fixtures."""

from __future__ import annotations

from typing import Callable, Dict

from .ordinal import OMEGA, Ordinal, omega_times
from .quiver import FiniteQuiver, RationalTreeScheme
from .transfinite import SegmentNode, SegmentScheme


def _chain(n: int, prefix: str = "v") -> FiniteQuiver:
    vs = [f"{prefix}{i}" for i in range(n)]
    arrows = [(f"a{i}", vs[i], vs[i + 1]) for i in range(n - 1)]
    return FiniteQuiver(tuple(vs), tuple(arrows), vs[0])


def a1() -> FiniteQuiver:
    return FiniteQuiver(("v",), (), "v")


def a2() -> FiniteQuiver:
    return FiniteQuiver(("v", "w"), (("a", "v", "w"),), "v")


def a3() -> FiniteQuiver:
    return FiniteQuiver(("u", "v", "w"), (("a", "u", "v"), ("b", "v", "w")), "u")


def star(d: int) -> FiniteQuiver:
    """Root with ``d`` leaves."""
    leaves = [f"v{i}" for i in range(1, d + 1)]
    return FiniteQuiver(("v0", *leaves), tuple((f"a{i}", "v0", f"v{i}") for i in range(1, d + 1)), "v0")


def binary_depth2() -> FiniteQuiver:
    vs = ["r", "0", "1", "00", "01", "10", "11"]
    arrows = [("x0", "r", "0"), ("x1", "r", "1"), ("y00", "0", "00"), ("y01", "0", "01"),
              ("y10", "1", "10"), ("y11", "1", "11")]
    return FiniteQuiver(tuple(vs), tuple(arrows), "r")


def y_tree() -> FiniteQuiver:
    return FiniteQuiver(("r", "m", "x", "y"), (("a", "r", "m"), ("b", "m", "x"), ("c", "m", "y")), "r")


def three_branch_finite(length: int = 2) -> FiniteQuiver:
    """Finite cut of the three-ray figure: root plus three chains."""
    vs, arrows = ["r"], []
    for b in "abc":
        prev = "r"
        for i in range(1, length + 1):
            v = f"{b}{i}"
            vs.append(v)
            arrows.append((f"{prev}>{v}", prev, v))
            prev = v
    return FiniteQuiver(tuple(vs), tuple(arrows), "r")


def caterpillar() -> FiniteQuiver:
    vs = ["s0", "s1", "s2", "s3", "l0", "l1", "l2", "l3"]
    arrows = [("p1", "s0", "s1"), ("p2", "s1", "s2"), ("p3", "s2", "s3"),
              ("q0", "s0", "l0"), ("q1", "s1", "l1"), ("q2", "s2", "l2"), ("q3", "s3", "l3")]
    return FiniteQuiver(tuple(vs), tuple(arrows), "s0")


def broom() -> FiniteQuiver:
    vs = ["h0", "h1", "h2", "b1", "b2", "b3"]
    arrows = [("e1", "h0", "h1"), ("e2", "h1", "h2"), ("f1", "h2", "b1"), ("f2", "h2", "b2"), ("f3", "h2", "b3")]
    return FiniteQuiver(tuple(vs), tuple(arrows), "h0")


FINITE_TREES: Dict[str, Callable[[], FiniteQuiver]] = {
    "A1": a1,
    "A2": a2,
    "A3": a3,
    "A5": lambda: _chain(5),
    "A8": lambda: _chain(8),
    "star3": lambda: star(3),
    "star5": lambda: star(5),
    "Y": y_tree,
    "binary2": binary_depth2,
    "three_branch_cut": three_branch_finite,
    "caterpillar": caterpillar,
    "broom": broom,
}


# ---------------------------------------------------------------------------
# rational schemes


def binary_scheme() -> RationalTreeScheme:
    return RationalTreeScheme(("s",), (("L", "s", "s"), ("R", "s", "s")), "s")


def a_infinity_scheme() -> RationalTreeScheme:
    return RationalTreeScheme(("s",), (("n", "s", "s"),), "s")


def three_branch_scheme() -> RationalTreeScheme:
    """Root with three rays (level counts 1, 3, 3, ...)."""
    return RationalTreeScheme(("r", "a", "b", "c"),
                              (("a0", "r", "a"), ("b0", "r", "b"), ("c0", "r", "c"),
                               ("a1", "a", "a"), ("b1", "b", "b"), ("c1", "c", "c")), "r")


def ternary_scheme() -> RationalTreeScheme:
    return RationalTreeScheme(("s",), (("A", "s", "s"), ("B", "s", "s"), ("C", "s", "s")), "s")


def ray_with_leaves_scheme() -> RationalTreeScheme:
    """Barren, yet every vertex of the ray carries a leaf."""
    return RationalTreeScheme(("s", "d"), (("n", "s", "s"), ("x", "s", "d")), "s")


def alternating_leaves_scheme() -> RationalTreeScheme:
    """Bounded but periodic level counts 1, 2, 1, 2, ...: not barren."""
    return RationalTreeScheme(("p", "q", "d"), (("f", "p", "q"), ("g", "q", "p"), ("x", "p", "d")), "p")


def chained_cycles_scheme() -> RationalTreeScheme:
    """A ray that sprouts a second ray at every vertex: n_i = i + 1."""
    return RationalTreeScheme(("s", "t"), (("n", "s", "s"), ("j", "s", "t"), ("m", "t", "t")), "s")


def fibonacci_scheme() -> RationalTreeScheme:
    return RationalTreeScheme(("s", "t"), (("a", "s", "s"), ("b", "s", "t"), ("c", "t", "s")), "s")


def finite_scheme() -> RationalTreeScheme:
    """A finite tree written as an acyclic scheme (eventually zero level counts)."""
    return RationalTreeScheme(("r", "x", "y"), (("a", "r", "x"), ("b", "r", "y"), ("c", "x", "y")), "r")


SCHEMES: Dict[str, Callable[[], RationalTreeScheme]] = {
    "binary": binary_scheme,
    "A_inf": a_infinity_scheme,
    "three_branch": three_branch_scheme,
    "ternary": ternary_scheme,
    "ray_with_leaves": ray_with_leaves_scheme,
    "alternating_leaves": alternating_leaves_scheme,
    "chained_cycles": chained_cycles_scheme,
    "fibonacci": fibonacci_scheme,
    "finite": finite_scheme,
}

NON_BARREN = ("binary", "ternary", "alternating_leaves", "chained_cycles", "fibonacci")


# ---------------------------------------------------------------------------
# segment schemes


def _segs(root, *nodes):
    return SegmentScheme(tuple(SegmentNode(*n) for n in nodes), root)


def omega_with_top() -> SegmentScheme:
    """v_0 -> v_1 -> ... -> v_w: one w-segment with its top."""
    return _segs("a", ("a", OMEGA, True, ()))


def a_infinity_segments() -> SegmentScheme:
    return _segs("a", ("a", OMEGA, False, ()))


def omega_then_omega() -> SegmentScheme:
    return _segs("a", ("a", OMEGA, False, ("b",)), ("b", OMEGA, False, ()))


def two_rays() -> SegmentScheme:
    return _segs("r", ("r", 1, True, ("x", "y")), ("x", OMEGA, False, ()), ("y", OMEGA, False, ()))


def omega_plus_three() -> SegmentScheme:
    return _segs("a", ("a", Ordinal.of("w+3"), True, ()))


def omega_two_top() -> SegmentScheme:
    return _segs("a", ("a", omega_times(2), True, ()))


def top_then_branches() -> SegmentScheme:
    return _segs("a", ("a", OMEGA, True, ("b", "c")), ("b", 2, True, ()), ("c", OMEGA, False, ()))


def finite_segments() -> SegmentScheme:
    return _segs("a", ("a", 3, True, ("b", "c")), ("b", 2, True, ()), ("c", 1, True, ()))


def mixed_segments() -> SegmentScheme:
    return _segs("a", ("a", 2, True, ("b", "c")), ("b", OMEGA, True, ("d",)), ("c", OMEGA, False, ()),
                 ("d", 2, True, ()))


SEGMENT_SCHEMES: Dict[str, Callable[[], SegmentScheme]] = {
    "omega_with_top": omega_with_top,
    "A_inf_segments": a_infinity_segments,
    "omega_then_omega": omega_then_omega,
    "two_rays": two_rays,
    "omega_plus_3": omega_plus_three,
    "omega_2_top": omega_two_top,
    "top_then_branches": top_then_branches,
    "finite_segments": finite_segments,
    "mixed_segments": mixed_segments,
}


# ---------------------------------------------------------------------------
# random generators


def random_scheme(rng, n_states: int, max_out: int = 2, p_edge: float = 0.45) -> RationalTreeScheme:
    """Random scheme with every state reachable from the root ``q0``.

    A random spanning arborescence guarantees reachability; further
    transitions (self-loops and back edges included) are added with
    probability ``p_edge`` while out-degrees stay at most ``max_out``.
    """
    states = [f"q{i}" for i in range(n_states)]
    out = {q: [] for q in states}
    for i in range(1, n_states):
        parent = states[int(rng.integers(0, i))]
        if len(out[parent]) >= max_out:
            parent = next(q for q in states[:i] if len(out[q]) < max_out)
        out[parent].append(states[i])
    for q in states:
        for r in states:
            if len(out[q]) < max_out and rng.random() < p_edge / n_states:
                out[q].append(r)
    trans = []
    for q in states:
        for k, r in enumerate(out[q]):
            trans.append((f"{q}_{k}", q, r))
    return RationalTreeScheme(tuple(states), tuple(trans), "q0")


def random_tree(rng, n: int) -> FiniteQuiver:
    """Random rooted tree on ``n`` vertices, arrows pointing away from ``t0``."""
    vs = [f"t{i}" for i in range(n)]
    arrows = [(f"e{i}", vs[int(rng.integers(0, i))], vs[i]) for i in range(1, n)]
    return FiniteQuiver(tuple(vs), tuple(arrows), vs[0])


def random_segments(rng, n_nodes: int, max_omega: int = 2) -> SegmentScheme:
    """Random segment scheme with lengths below ``w * max_omega + 4``."""
    nodes = []
    kids = {i: [] for i in range(n_nodes)}
    lengths, tops = {}, {}
    for i in range(n_nodes):
        k = int(rng.integers(0, max_omega + 1))
        f = int(rng.integers(0 if k else 1, 4))
        length = omega_times(k) + f
        lengths[i] = length
        tops[i] = bool(rng.integers(0, 2)) if length.is_limit() else True
    for i in range(1, n_nodes):
        while True:
            p = int(rng.integers(0, i))
            # a topless limit segment carries at most one child
            if tops[p] or not kids[p]:
                break
        kids[p].append(i)
    for i in range(n_nodes):
        nodes.append(SegmentNode(f"s{i}", lengths[i], tops[i], tuple(f"s{c}" for c in kids[i])))
    return SegmentScheme(tuple(nodes), "s0")
