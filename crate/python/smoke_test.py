"""Imports the compiled extension and runs a few checks.

Build first with `cargo build --release -p heiscat-py`.
"""

import importlib.util
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    lib = ROOT / "target" / "release" / "libheiscat_py.so"
    if not lib.exists():
        sys.exit(f"missing {lib}; run cargo build --release -p heiscat-py")
    tmp = pathlib.Path(tempfile.mkdtemp()) / "heiscat_py.so"
    shutil.copy(lib, tmp)
    spec = importlib.util.spec_from_file_location("heiscat_py", tmp)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def main():
    hc = load()
    x = hc.Morphism("x", 0)
    assert x.compose(x) == hc.Morphism("id(uu)", 0)
    assert hc.Morphism(x.expr(), 0) == x
    assert x.star().star() == x
    assert hc.bubble(1, 1, ccw=False) == hc.Sym("h1")
    assert hc.Sym("h1") * hc.Sym("h1") == hc.Sym("s[2] + s[1,1]")
    lhs = hc.Heis("h+1", 1) * hc.Heis("e-1", 1)
    rhs = hc.Heis("e-1*h+1", 1) + hc.Heis("1", 1)
    assert lhs == rhs, (lhs, rhs)
    assert all(ok for _, ok in hc.relation_suite(0))
    assert hc.verify_invrel(1)
    assert hc.verify_t3(1, 1, 1)
    try:
        hc.Morphism("x . (x", 0)
    except ValueError as e:
        assert "column" in str(e)
    else:
        raise AssertionError("parse error not raised")
    print("smoke test passed")


if __name__ == "__main__":
    main()
