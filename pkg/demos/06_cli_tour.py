# The command line
# ================
#
# Every analysis is also a subcommand of ``treequiver``.  Reports come as
# text, canonical JSON or Graphviz DOT, and record the seed.  Exit status is
# 0 when the property holds, 1 when it fails and 2 for bad input.

import os

from treequiver.cli import run

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def sh(*argv):
    print("$ treequiver", " ".join(os.path.relpath(a) if a.endswith(".json") else a for a in argv))
    code = run(list(argv))
    print(f"[exit {code}]\n")


sh("barren", f"{DATA}/three_branch.json")
sh("barren", f"{DATA}/binary.json")
sh("antichain", f"{DATA}/binary.json", "--take", "3")
sh("decompose", f"{DATA}/rep_Iv_plus_Iw.json", "--format", "json")
sh("check-injective", f"{DATA}/rep_Sw.json")
sh("classify", f"{DATA}/A_inf_segments.json", "--take", "4")
sh("stratify", f"{DATA}/omega_with_top.json")
sh("counterexample", f"{DATA}/binary.json", "--N", "3")
sh("counterexample", f"{DATA}/three_branch.json")
sh("emit-dot", f"{DATA}/Y.json")
