import contextlib
import glob
import io
import os
import runpy

import pytest

DEMOS = sorted(glob.glob(os.path.join(os.path.dirname(__file__), os.pardir, "demos", "0*.py")))


@pytest.mark.parametrize("path", DEMOS, ids=os.path.basename)
def test_demo_runs(path):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        runpy.run_path(path, run_name="__main__")
    assert out.getvalue()


def test_demo_data_is_current(tmp_path):
    """Regenerating the demo data reproduces the committed files byte for byte."""
    here = os.path.dirname(DEMOS[0])
    runpy.run_path(os.path.join(here, "make_data.py"), run_name="make_data")["main"](str(tmp_path))
    fresh = sorted(os.listdir(tmp_path))
    assert fresh == sorted(os.listdir(os.path.join(here, "data")))
    for name in fresh:
        with open(tmp_path / name, encoding="utf-8") as a, open(os.path.join(here, "data", name), encoding="utf-8") as b:
            assert a.read() == b.read(), name
