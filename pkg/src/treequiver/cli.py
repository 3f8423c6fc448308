"""Command-line front end.

Every subcommand reads one JSON document and prints a report.  Output is a
pure function of (input bytes, flags, seed).  Exit status: 0 when the
property holds or the analysis succeeded, 1 when the property fails, 2 on
input errors or inapplicable analyses.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Dict, List, Optional, Tuple

from . import linalg as la
from . import serialize as ser
from .counterexample import CounterexampleError, forcing_certificate
from .dot import quiver_dot, tree_dot, unfolding_dot, validate_dot
from .ordinal import OrdinalError
from .quiver import (FiniteQuiver, QuiverError, RationalTreeScheme, TreeError, address_name,
                     find_root, infinite_antichain, is_barren, level_counts, path_space, validate_tree)
from .representation import (NotInjectiveError, Representation, RepresentationError, injective_envelope,
                             local_conditions, matlis_decompose, socle_dimensions)
from .transfinite import (CocontinuousRep, SegmentError, SegmentScheme, check_cocontinuous, classify,
                          complete, is_complete, is_noetherian, segments_from_tree, stratum,
                          strata_profile, truncate)

OK, FAILS, INPUT_ERROR = 0, 1, 2
SEED_DEFAULT = 20240601

_INPUT_ERRORS = (ser.InputError, QuiverError, SegmentError, RepresentationError, OrdinalError,
                 la.DimensionError, la.UnsupportedModulus, CounterexampleError)


class Outcome:
    """What a subcommand produced: status, JSON result, text lines, optional DOT."""

    def __init__(self, status: int, result: dict, text: List[str], dot: Optional[str] = None):
        self.status = status
        self.result = result
        self.text = text
        self.dot = dot


def _expect(obj, kinds, what):
    if not isinstance(obj, kinds):
        raise ser.InputError(f"{what} expects {' or '.join(k.__name__ for k in kinds)}, "
                             f"got {type(obj).__name__}")
    return obj


def _as_segments(obj) -> SegmentScheme:
    obj = _expect(obj, (SegmentScheme, FiniteQuiver), "this command")
    if isinstance(obj, FiniteQuiver):
        validate_tree(obj)
        return segments_from_tree(obj)
    return obj


def _as_scheme(obj) -> RationalTreeScheme:
    obj = _expect(obj, (RationalTreeScheme, FiniteQuiver), "this command")
    if isinstance(obj, FiniteQuiver):
        validate_tree(obj)
        return path_space(obj, obj.root if obj.root is not None else find_root(obj))
    return obj


def _modulus(args) -> int:
    m = args.modulus
    if m < 2:
        raise ser.InputError(f"--modulus must be at least 2, got {m}")
    return m


def _segments_dot(T: SegmentScheme, k: int) -> str:
    tr = truncate(T, k)
    ranks = {v: stratum(T, a) for v, a in tr.addresses.items()}
    return quiver_dot(tr.quiver, "segments", ranks=ranks)


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(doc, args) -> Outcome:
    kind = type(doc).__name__
    if isinstance(doc, FiniteQuiver):
        try:
            validate_tree(doc)
        except TreeError as e:
            return Outcome(FAILS, {"valid": False, "type": kind, "problem": e.kind,
                                   "witness": e.witness, "message": str(e)},
                           [f"not a tree ({e.kind}): {e}"])
        return Outcome(OK, {"valid": True, "type": kind, "root": find_root(doc)}, ["valid tree"])
    if isinstance(doc, Representation):
        try:
            validate_tree(doc.quiver)
            tree = True
        except TreeError:
            tree = False
        return Outcome(OK, {"valid": True, "type": kind, "on_tree": tree,
                            "dimension_vector": doc.dimension_vector()},
                       [f"valid representation over Z/{doc.modulus}" + ("" if tree else " (quiver is not a tree)")])
    return Outcome(OK, {"valid": True, "type": kind}, [f"valid {kind}"])


def cmd_barren(doc, args) -> Outcome:
    S = _as_scheme(doc)
    res = is_barren(S)
    result = {"barren": res.barren, "stable": res.stable, "transient": res.transient,
              "witness": res.witness, "level_counts": level_counts(S, 2 * len(S.states) + 2)}
    return Outcome(OK if res.barren else FAILS, result, [res.describe()])


def cmd_antichain(doc, args) -> Outcome:
    S = _as_scheme(doc)
    comb = infinite_antichain(S)
    if comb is None:
        return Outcome(FAILS, {"antichain": None, "reason": "barren"}, ["barren: no infinite antichain"])
    members = [address_name(w) for w in comb.members(args.take)]
    dot = unfolding_dot(S, len(comb.member(args.take)), comb.members(args.take))
    return Outcome(OK, {"comb": comb.describe(), "members": members},
                   [comb.describe()] + [f"w_{j} = {w}" for j, w in enumerate(members, 1)], dot)


def cmd_stratify(doc, args) -> Outcome:
    if isinstance(doc, RationalTreeScheme):
        counts = level_counts(doc, args.depth)
        return Outcome(OK, {"level_counts": counts},
                       [f"stratum {i}: {n}" for i, n in enumerate(counts)],
                       unfolding_dot(doc, args.depth))
    T = _as_segments(doc)
    prof = strata_profile(T)
    blocks = [{"from": ser.ordinal_json(a), "to": ser.ordinal_json(b), "count": n,
               "nodes": prof.nodes_at(a)} for a, b, n in prof.blocks()]
    text = [f"least empty stratum: {prof.least_empty.pretty()}"]
    text += [f"[{a.pretty()}, {b.pretty()}): {n}  {' '.join(prof.nodes_at(a))}" for a, b, n in prof.blocks()]
    return Outcome(OK, {"least_empty": ser.ordinal_json(prof.least_empty),
                        "least_empty_text": prof.least_empty.pretty(), "blocks": blocks},
                   text, _segments_dot(T, args.depth))


def cmd_complete(doc, args) -> Outcome:
    T = _as_segments(doc)
    C = complete(T)
    added = [a.name() for a in C.added]
    return Outcome(OK, {"was_complete": is_complete(T), "added": added,
                        "completion": ser.segments_json(C.scheme)},
                   [f"added: {', '.join(added) if added else 'nothing'}"], _segments_dot(C.scheme, args.depth))


def cmd_classify(doc, args) -> Outcome:
    m = _modulus(args)
    cl = classify(_as_segments(doc), m)
    labels = cl.take(args.take)
    out = [{"address": lab.address.name(), "module": ser.module_json(lab.module),
            "stratum": lab.stratum.pretty()} for lab in labels]
    return Outcome(OK, {"modulus": m, "labels": out, "least_empty": cl.profile.least_empty.pretty()},
                   [str(lab) for lab in labels])


def _rep(doc, what) -> Representation:
    return _expect(doc, (Representation,), what)


def cmd_check_injective(doc, args) -> Outcome:
    X = _rep(doc, "check-injective")
    conds = local_conditions(X)
    per = {v: {"cond_i": c.cond_i, "cond_ii": c.cond_ii} for v, c in conds.items()}
    ok = all(c.ok for c in conds.values())
    text = [f"{v}: (i) {'ok' if c.cond_i else 'FAILS'}  (ii) {'ok' if c.cond_ii else 'FAILS'}"
            for v, c in conds.items()]
    text.append("injective" if ok else "not injective")
    return Outcome(OK if ok else FAILS, {"injective": ok, "vertices": per}, text)


def cmd_envelope(doc, args) -> Outcome:
    X = _rep(doc, "envelope")
    E, iota = injective_envelope(X)
    mult = {v: n for v, n in socle_dimensions(X).items() if n}
    result = {"multiplicities": mult, "envelope": ser.representation_json(E),
              "embedding": {v: ser.matrix_json(iota.components[v]) for v in X.quiver.vertices}}
    text = [f"envelope: {' + '.join(f'I_{v}^{n}' for v, n in mult.items()) or '0'}",
            f"dimension vector: {E.dimension_vector()}"]
    return Outcome(OK, result, text)


def cmd_decompose(doc, args) -> Outcome:
    X = _rep(doc, "decompose")
    try:
        mult = matlis_decompose(X)
    except NotInjectiveError as e:
        diag = {v: {"cond_i": c.cond_i, "cond_ii": c.cond_ii} for v, c in (e.diagnostics or {}).items()}
        return Outcome(FAILS, {"injective": False, "reason": str(e), "diagnostics": diag},
                       [f"not injective: {e}"])
    return Outcome(OK, {"multiplicities": mult},
                   [" + ".join(f"I_{v}^{n}" for v, n in mult.items()) or "0"])


def cmd_cocontinuous_check(doc, args) -> Outcome:
    X = _expect(doc, (CocontinuousRep,), "cocontinuous-check")
    bad = check_cocontinuous(X)
    out = [{"address": v.address.name(), "reason": v.reason} for v in bad]
    text = [f"{v.address.name()}: {v.reason}" for v in bad] or ["cocontinuous"]
    return Outcome(FAILS if bad else OK, {"cocontinuous": not bad, "violations": out}, text)


def cmd_noetherian(doc, args) -> Outcome:
    obj = _expect(doc, (RationalTreeScheme, SegmentScheme, FiniteQuiver), "noetherian")
    if isinstance(obj, FiniteQuiver):
        validate_tree(obj)
    ok, classes = is_noetherian(obj)
    out = [{"class": c.description, "stable": c.stable, "transient": c.transient} for c in classes]
    text = [f"{c.description}: " + (f"stable {c.stable} from level {c.transient}" if c.stable >= 0 else "not barren")
            for c in classes]
    text.append("noetherian" if ok else "not noetherian")
    return Outcome(OK if ok else FAILS, {"noetherian": ok, "classes": out}, text)


def cmd_counterexample(doc, args) -> Outcome:
    S = _as_scheme(doc)
    m = _modulus(args)
    la.require_prime(m, "counterexample")
    if is_barren(S):
        raise CounterexampleError("scheme is barren: the non-injectivity mechanism needs a non-barren tree")
    cert = forcing_certificate(S, m, args.N, args.depth)
    comb = infinite_antichain(S)
    d = max(s.depth for s in cert.stages)
    dot = unfolding_dot(S, d, comb.members(args.N))
    ok = cert.conditions_hold and cert.growing
    return Outcome(OK if ok else FAILS, cert.to_json(), cert.summary().splitlines(), dot)


def cmd_emit_dot(doc, args) -> Outcome:
    if isinstance(doc, RationalTreeScheme):
        marks = ()
        if args.antichain:
            comb = infinite_antichain(doc)
            if comb is None:
                raise ser.InputError("--antichain given but the scheme is barren")
            marks = comb.members(args.antichain)
        dot = unfolding_dot(doc, args.depth, marks)
    elif isinstance(doc, FiniteQuiver):
        dot = tree_dot(doc) if doc.acyclic else quiver_dot(doc)
    elif isinstance(doc, Representation):
        dims = doc.dimension_vector()
        dot = quiver_dot(doc.quiver, labels={v: f"{v}: {doc.modules[v]}" for v in dims})
    elif isinstance(doc, SegmentScheme):
        dot = _segments_dot(doc, args.depth)
    else:
        raise ser.InputError(f"no DOT rendering for {type(doc).__name__}")
    return Outcome(OK, {"dot": dot}, dot.splitlines(), dot)


COMMANDS: Dict[str, Tuple[Callable, str]] = {
    "validate": (cmd_validate, "parse a document and check tree shape"),
    "barren": (cmd_barren, "decide whether a rational tree is barren"),
    "antichain": (cmd_antichain, "exhibit an infinite antichain of a non-barren tree"),
    "stratify": (cmd_stratify, "strata table of a tree"),
    "complete": (cmd_complete, "completion of a segment scheme"),
    "classify": (cmd_classify, "stream of indecomposable injective labels"),
    "check-injective": (cmd_check_injective, "local injectivity criterion"),
    "envelope": (cmd_envelope, "injective envelope over a prime field"),
    "decompose": (cmd_decompose, "multiplicities of indecomposable injective summands"),
    "cocontinuous-check": (cmd_cocontinuous_check, "check values at limit positions"),
    "noetherian": (cmd_noetherian, "every path space barren"),
    "counterexample": (cmd_counterexample, "finite-stage certificate on a non-barren tree"),
    "emit-dot": (cmd_emit_dot, "Graphviz rendering"),
}


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= s < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return s


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "dot"), default="text")
    common.add_argument("--seed", type=_seed, default=SEED_DEFAULT, help="recorded in every report")
    common.add_argument("--modulus", type=int, default=2, help="coefficient ring Z/m (default 2)")
    p = argparse.ArgumentParser(prog="treequiver", description="Injective representations of tree quivers.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("input", help="JSON document")
        if name in ("classify", "antichain"):
            sp.add_argument("--take", type=_positive, default=5, metavar="K")
        if name in ("stratify", "complete", "emit-dot"):
            sp.add_argument("--depth", type=_positive, default=4)
        if name == "emit-dot":
            sp.add_argument("--antichain", type=_positive, default=0, metavar="K",
                            help="highlight the first K antichain members")
        if name == "counterexample":
            sp.add_argument("--N", type=_positive, default=3)
            sp.add_argument("--depth", type=_positive, default=None)
    return p


def run(argv: List[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    fn = COMMANDS[args.command][0]
    header = {"command": args.command, "input": args.input, "seed": args.seed}
    try:
        doc = ser.load_file(args.input)
        out = fn(doc, args)
    except _INPUT_ERRORS as e:
        msg = str(e)
        if args.format == "json":
            stdout.write(ser.dumps({**header, "status": INPUT_ERROR, "error": msg}))
        print(f"error: {msg}", file=stderr)
        return INPUT_ERROR
    fmt = "dot" if args.command == "emit-dot" and args.format == "text" else args.format
    if fmt == "json":
        stdout.write(ser.dumps({**header, "status": out.status, "result": out.result}))
    elif fmt == "dot":
        if out.dot is None:
            print(f"error: {args.command} has no DOT rendering", file=stderr)
            return INPUT_ERROR
        text = f"// seed: {args.seed}\n" + out.dot
        validate_dot(text)
        stdout.write(text)
    else:
        stdout.write("\n".join(out.text + [f"seed: {args.seed}"]) + "\n")
    return out.status


def main(argv: Optional[List[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
