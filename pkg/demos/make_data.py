"""Write the named corpus, plus a few representations, as canonical JSON into demos/data/."""

import os
import sys

import numpy as np

from treequiver import corpus
from treequiver import serialize as ser
from treequiver.linalg import FgModule
from treequiver.ordinal import OMEGA
from treequiver.representation import costalk_functor, direct_sum, representation, stalk_functor
from treequiver.transfinite import CocontinuousRep, SegmentValues, complete


def documents():
    for group in (corpus.FINITE_TREES, corpus.SCHEMES, corpus.SEGMENT_SCHEMES):
        for name, make in group.items():
            yield name, make()
    A2 = corpus.a2()
    k = FgModule((2,))
    yield "rep_Iv_plus_Iw", direct_sum([costalk_functor("v", k, A2, 2), costalk_functor("w", k, A2, 2)])
    yield "rep_Sw", stalk_functor("w", k, A2, 2)
    yield "rep_zero_map", representation(A2, 2, {"v": 1, "w": 1}, {"a": [[0]]})
    yield "rep_Z2_over_Z4", representation(A2, 4, modules={"v": FgModule((2,)), "w": FgModule(())})
    Tbar = complete(corpus.a_infinity_segments()).scheme
    yield "coco_E_infinity", CocontinuousRep(Tbar, 2, {"a": SegmentValues(((0, k),))})
    collapse = SegmentValues(((0, k), (OMEGA, FgModule(()))), (np.zeros((0, 1), dtype=np.int64),))
    yield "coco_collapse", CocontinuousRep(Tbar, 2, {"a": collapse})


def main(out_dir):
    os.makedirs(out_dir, exist_ok=True)
    for name, obj in documents():
        with open(os.path.join(out_dir, name + ".json"), "w", encoding="utf-8") as fh:
            fh.write(ser.dumps(ser.to_json(obj)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "data"))
