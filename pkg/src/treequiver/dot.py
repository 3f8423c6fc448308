"""Graphviz DOT rendering of trees, plus a small grammar checker for it."""

from __future__ import annotations

import re
from collections import defaultdict
from typing import Dict, Iterable, List, Optional

from .quiver import FiniteQuiver, RationalTreeScheme, address_name, find_root, parse_address, unfold


def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _depths(Q: FiniteQuiver, root: str) -> Dict[str, int]:
    depth = {root: 0}
    todo = [root]
    while todo:
        v = todo.pop()
        for a in Q.out_arrows(v):
            if a.dst not in depth:
                depth[a.dst] = depth[v] + 1
                todo.append(a.dst)
    return depth


def quiver_dot(Q: FiniteQuiver, name: str = "quiver", labels: Optional[Dict[str, str]] = None,
               ranks: Optional[Dict[str, object]] = None, highlight: Iterable[str] = (),
               edge_labels: Optional[Dict[str, str]] = None) -> str:
    """DOT for a finite quiver; ``ranks`` groups vertices into same-rank rows."""
    labels = labels or {}
    edge_labels = edge_labels or {}
    marked = set(highlight)
    lines = [f"digraph {_q(name)} {{", "  rankdir=TB;", "  node [shape=box, fontname=\"monospace\"];"]
    for v in Q.vertices:
        attrs = [f"label={_q(labels.get(v, v))}"]
        if v in marked:
            attrs += ["style=filled", "fillcolor=\"lightblue\"", "penwidth=2"]
        lines.append(f"  {_q(v)} [{', '.join(attrs)}];")
    if ranks:
        rows = defaultdict(list)
        for v in Q.vertices:
            if v in ranks:
                rows[ranks[v]].append(v)
        for k in sorted(rows):
            members = " ".join(f"{_q(v)};" for v in rows[k])
            lines.append(f"  {{ rank=same; {members} }}")
    for a in Q.arrows:
        lines.append(f"  {_q(a.src)} -> {_q(a.dst)} [label={_q(edge_labels.get(a.id, a.id))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def unfolding_dot(S: RationalTreeScheme, depth: int, antichain: Iterable = ()) -> str:
    """Unfolding to ``depth`` with address labels, one rank row per level.

    ``antichain`` addresses (tuples or names) inside the cut are highlighted.
    """
    U = unfold(S, depth)
    marked = {a if isinstance(a, str) else address_name(tuple(a)) for a in antichain}
    ranks = _depths(U, U.root)
    edges = {a.id: parse_address(a.dst)[-1] for a in U.arrows}
    return quiver_dot(U, "unfolding", ranks=ranks, highlight=marked & set(U.vertices), edge_labels=edges)


def tree_dot(Q: FiniteQuiver, highlight: Iterable[str] = ()) -> str:
    root = Q.root if Q.root is not None else find_root(Q)
    return quiver_dot(Q, "tree", ranks=_depths(Q, root), highlight=highlight)


# ---------------------------------------------------------------------------
# validation


class DotSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+|//[^\n]*|/\*.*?\*/|\#[^\n]*)
  | (?P<arrow>->|--)
  | (?P<punct>[{}\[\];,=:])
  | (?P<quoted>"(?:[^"\\]|\\.)*")
  | (?P<number>-?(?:\.[0-9]+|[0-9]+(?:\.[0-9]*)?))
  | (?P<ident>[A-Za-z_\x80-￿][A-Za-z_0-9\x80-￿]*)
  | (?P<html><[^<>]*(?:<[^<>]*>[^<>]*)*>)
""", re.VERBOSE | re.DOTALL)

_KEYWORDS = {"graph", "digraph", "node", "edge", "subgraph", "strict"}


def _tokenize(text: str) -> List[tuple]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DotSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        val = m.group()
        if kind == "ident" and val.lower() in _KEYWORDS:
            out.append(("kw", val.lower()))
        elif kind in ("ident", "quoted", "number", "html"):
            out.append(("id", val))
        else:
            out.append((kind, val))
    return out


class _Parser:
    def __init__(self, tokens):
        self.t = tokens
        self.i = 0
        self.directed = True

    def peek(self, k=0):
        j = self.i + k
        return self.t[j] if j < len(self.t) else ("eof", "")

    def take(self, kind, val=None):
        tok = self.peek()
        if tok[0] != kind or (val is not None and tok[1] != val):
            raise DotSyntaxError(f"expected {val or kind}, found {tok[1] or 'end of input'!r} (token {self.i})")
        self.i += 1
        return tok

    def accept(self, kind, val=None):
        tok = self.peek()
        if tok[0] == kind and (val is None or tok[1] == val):
            self.i += 1
            return True
        return False

    def graph(self):
        self.accept("kw", "strict")
        kw = self.take("kw")[1]
        if kw not in ("graph", "digraph"):
            raise DotSyntaxError(f"expected graph or digraph, found {kw!r}")
        self.directed = kw == "digraph"
        self.accept("id")
        self.take("punct", "{")
        self.stmt_list()
        self.take("punct", "}")
        if self.peek()[0] != "eof":
            raise DotSyntaxError("trailing input after the graph body")

    def stmt_list(self):
        while not (self.peek() == ("punct", "}") or self.peek()[0] == "eof"):
            self.stmt()
            self.accept("punct", ";")

    def attr_list(self):
        while self.accept("punct", "["):
            while not self.accept("punct", "]"):
                self.take("id")
                if self.accept("punct", "="):
                    self.take("id")
                if not self.accept("punct", ","):
                    self.accept("punct", ";")

    def node_id(self):
        self.take("id")
        if self.accept("punct", ":"):
            self.take("id")
            if self.accept("punct", ":"):
                self.take("id")

    def subgraph(self):
        if self.accept("kw", "subgraph"):
            self.accept("id")
        self.take("punct", "{")
        self.stmt_list()
        self.take("punct", "}")

    def operand(self):
        tok = self.peek()
        if tok == ("kw", "subgraph") or tok == ("punct", "{"):
            self.subgraph()
        else:
            self.node_id()

    def stmt(self):
        tok = self.peek()
        if tok[0] == "kw" and tok[1] in ("graph", "node", "edge"):
            self.i += 1
            if self.peek() != ("punct", "["):
                raise DotSyntaxError(f"{tok[1]} statement needs an attribute list")
            self.attr_list()
            return
        if tok[0] == "id" and self.peek(1) == ("punct", "="):
            self.i += 2
            self.take("id")
            return
        self.operand()
        edge_op = "->" if self.directed else "--"
        while self.peek()[0] == "arrow":
            if self.peek()[1] != edge_op:
                raise DotSyntaxError(f"edge operator {self.peek()[1]!r} in a {'di' if self.directed else ''}graph")
            self.i += 1
            self.operand()
        self.attr_list()


def validate_dot(text: str) -> None:
    """Raise DotSyntaxError unless ``text`` is a well-formed DOT graph."""
    _Parser(_tokenize(text)).graph()


def is_valid_dot(text: str) -> bool:
    try:
        validate_dot(text)
    except DotSyntaxError:
        return False
    return True
