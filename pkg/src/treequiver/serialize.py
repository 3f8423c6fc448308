"""JSON formats for every object that crosses a file boundary.

Emission is canonical (sorted keys, two-space indent, trailing newline), so
parse followed by re-emission reproduces canonical input byte for byte.
"""

from __future__ import annotations

import json
from typing import Any, Union

import numpy as np

from . import linalg as la
from .linalg import FgModule
from .ordinal import Ordinal, OrdinalError
from .ordinal import from_json as ordinal_from_json
from .ordinal import to_json as ordinal_to_json
from .quiver import FiniteQuiver, QuiverError, RationalTreeScheme
from .representation import Representation, RepresentationError
from .transfinite import CocontinuousRep, SegmentError, SegmentNode, SegmentScheme, SegmentValues


class InputError(ValueError):
    """Malformed input; the message names the line or field at fault."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from None


def read_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    return loads(text, path)


def _field(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}, got {type(val).__name__}")
    return val


def _wrap(where, fn, *args):
    """Run a constructor, turning domain errors into located input errors."""
    try:
        return fn(*args)
    except InputError:
        raise
    except (QuiverError, SegmentError, RepresentationError, OrdinalError, la.DimensionError,
            la.UnsupportedModulus, ValueError, TypeError, KeyError) as e:
        raise InputError(f"{where}: {e}") from None


# ---------------------------------------------------------------------------
# small pieces


def ordinal_json(a: Ordinal) -> dict:
    return ordinal_to_json(a)


def ordinal_load(obj, where="ordinal") -> Ordinal:
    return _wrap(where, ordinal_from_json, obj)


def module_json(M: FgModule) -> dict:
    return la.module_to_json(M)


def module_load(obj, where="module") -> FgModule:
    facs = _field(obj, "invariant_factors", where, list)
    if not all(isinstance(d, int) and not isinstance(d, bool) for d in facs):
        raise InputError(f"{where}.invariant_factors: entries must be integers")
    return _wrap(where, lambda: FgModule(tuple(facs)))


def matrix_json(A: np.ndarray) -> dict:
    return la.matrix_to_json(np.asarray(A))


def matrix_load(obj, m: int, where="matrix") -> np.ndarray:
    _field(obj, "rows", where, int)
    _field(obj, "cols", where, int)
    entries = _field(obj, "entries", where, list)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise InputError(f"{where}.entries[{i}]: expected a list of integers")
    return _wrap(where, la.matrix_from_json, obj, m)


# ---------------------------------------------------------------------------
# quivers and schemes


def _arrow_json(a) -> dict:
    return {"id": a.id, "src": a.src, "dst": a.dst}


def _arrows_load(items, where):
    out = []
    for i, a in enumerate(items):
        w = f"{where}[{i}]"
        out.append(tuple(_field(a, k, w, str) for k in ("id", "src", "dst")))
    return tuple(out)


def quiver_json(Q: Union[FiniteQuiver, RationalTreeScheme]) -> dict:
    if isinstance(Q, RationalTreeScheme):
        return {"kind": "rational", "states": list(Q.states),
                "transitions": [_arrow_json(a) for a in Q.transitions], "root": Q.root}
    return {"kind": "finite", "vertices": list(Q.vertices),
            "arrows": [_arrow_json(a) for a in Q.arrows], "root": Q.root}


def quiver_load(obj, where="quiver") -> Union[FiniteQuiver, RationalTreeScheme]:
    kind = _field(obj, "kind", where, str)
    if kind == "finite":
        vs = _field(obj, "vertices", where, list)
        arrows = _arrows_load(_field(obj, "arrows", where, list), where + ".arrows")
        root = obj.get("root")
        return _wrap(where, FiniteQuiver, tuple(vs), arrows, root)
    if kind == "rational":
        states = _field(obj, "states", where, list)
        trans = _arrows_load(_field(obj, "transitions", where, list), where + ".transitions")
        root = _field(obj, "root", where, str)
        return _wrap(where, RationalTreeScheme, tuple(states), trans, root)
    raise InputError(f"{where}.kind: expected 'finite' or 'rational', got {kind!r}")


def segments_json(T: SegmentScheme) -> dict:
    return {"kind": "segments", "root": T.root,
            "nodes": [{"id": n.id, "length": ordinal_json(n.length), "has_top": n.has_top,
                       "children": list(n.children)} for n in T.nodes]}


def segments_load(obj, where="scheme") -> SegmentScheme:
    nodes = []
    for i, n in enumerate(_field(obj, "nodes", where, list)):
        w = f"{where}.nodes[{i}]"
        nid = _field(n, "id", w, str)
        length = ordinal_load(_field(n, "length", w), w + ".length")
        top = _field(n, "has_top", w, bool)
        kids = _field(n, "children", w, list)
        nodes.append(_wrap(w, SegmentNode, nid, length, top, tuple(kids)))
    root = _field(obj, "root", where, str)
    return _wrap(where, SegmentScheme, tuple(nodes), root)


# ---------------------------------------------------------------------------
# representations


def representation_json(X: Representation) -> dict:
    return {"quiver": quiver_json(X.quiver), "modulus": X.modulus,
            "vertices": {v: module_json(X.modules[v]) for v in X.quiver.vertices},
            "arrows": {a.id: {"matrix": matrix_json(X.maps[a.id])} for a in X.quiver.arrows}}


def representation_load(obj, where="representation") -> Representation:
    Q = quiver_load(_field(obj, "quiver", where), where + ".quiver")
    if not isinstance(Q, FiniteQuiver):
        raise InputError(f"{where}.quiver: representations live on finite quivers")
    m = _field(obj, "modulus", where, int)
    if m < 2:
        raise InputError(f"{where}.modulus: must be at least 2")
    verts = _field(obj, "vertices", where, dict)
    modules = {v: module_load(M, f"{where}.vertices.{v}") for v, M in verts.items()}
    for v, M in modules.items():
        bad = [d for d in M.invariant_factors if m % d]
        if bad:
            raise InputError(f"{where}.vertices.{v}: invariant factor {bad[0]} does not divide modulus {m}")
    for v in modules:
        if v not in Q.vertices:
            raise InputError(f"{where}.vertices: unknown vertex {v!r}")
    maps = {}
    for a, spec in _field(obj, "arrows", where, dict).items():
        maps[a] = matrix_load(_field(spec, "matrix", f"{where}.arrows.{a}"), m, f"{where}.arrows.{a}.matrix")
    return _wrap(where, Representation, Q, m, modules, maps)


def cocontinuous_json(X: CocontinuousRep) -> dict:
    segs = {}
    for nid, sv in X.segments.items():
        segs[nid] = {"breakpoints": [{"offset": ordinal_json(o), "module": module_json(M)}
                                     for o, M in sv.breakpoints],
                     "connecting": [matrix_json(C) for C in sv.connecting]}
    return {"kind": "cocontinuous", "scheme": segments_json(X.scheme), "modulus": X.modulus,
            "segments": segs, "attachments": {c: matrix_json(A) for c, A in X.attachments.items()}}


def cocontinuous_load(obj, where="cocontinuous") -> CocontinuousRep:
    T = segments_load(_field(obj, "scheme", where), where + ".scheme")
    m = _field(obj, "modulus", where, int)
    segs = {}
    for nid, spec in _field(obj, "segments", where, dict).items():
        w = f"{where}.segments.{nid}"
        bps = []
        for i, bp in enumerate(_field(spec, "breakpoints", w, list)):
            wb = f"{w}.breakpoints[{i}]"
            bps.append((ordinal_load(_field(bp, "offset", wb), wb + ".offset"),
                        module_load(_field(bp, "module", wb), wb + ".module")))
        conn = [matrix_load(C, m, f"{w}.connecting[{i}]")
                for i, C in enumerate(_field(spec, "connecting", w, list))]
        segs[nid] = _wrap(w, SegmentValues, tuple(bps), tuple(conn))
    atts = {c: matrix_load(A, m, f"{where}.attachments.{c}")
            for c, A in obj.get("attachments", {}).items()}
    return _wrap(where, CocontinuousRep, T, m, segs, atts)


# ---------------------------------------------------------------------------
# dispatch


def to_json(obj) -> dict:
    if isinstance(obj, (FiniteQuiver, RationalTreeScheme)):
        return quiver_json(obj)
    if isinstance(obj, SegmentScheme):
        return segments_json(obj)
    if isinstance(obj, Representation):
        return representation_json(obj)
    if isinstance(obj, CocontinuousRep):
        return cocontinuous_json(obj)
    if isinstance(obj, Ordinal):
        return ordinal_json(obj)
    if isinstance(obj, FgModule):
        return module_json(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def load(obj, where="input"):
    """Decode any top-level document by its shape."""
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object at top level")
    if "quiver" in obj:
        return representation_load(obj, where)
    kind = obj.get("kind")
    if kind in ("finite", "rational"):
        return quiver_load(obj, where)
    if kind == "segments":
        return segments_load(obj, where)
    if kind == "cocontinuous":
        return cocontinuous_load(obj, where)
    raise InputError(f"{where}: unrecognised document (kind={kind!r})")


def load_file(path: str):
    return load(read_file(path), path)
