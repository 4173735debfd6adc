"""Smoke test for the `durfee` Python module.

Build first with `cargo build -p durfee-python` (or `--release`); the script
loads target/{release,debug}/libdurfee.so, or the path in DURFEE_LIB.
"""

import importlib.util
import os
import pathlib
import shutil
import sys
import sysconfig
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def find_library():
    if "DURFEE_LIB" in os.environ:
        return pathlib.Path(os.environ["DURFEE_LIB"])
    target = pathlib.Path(os.environ.get("CARGO_TARGET_DIR", ROOT / "target"))
    for profile in ("release", "debug"):
        for name in ("libdurfee.so", "libdurfee.dylib"):
            path = target / profile / name
            if path.exists():
                return path
    sys.exit("libdurfee not found; run `cargo build -p durfee-python` first")


def load():
    tmp = pathlib.Path(tempfile.mkdtemp())
    dest = tmp / ("durfee" + sysconfig.get_config_var("EXT_SUFFIX"))
    shutil.copy(find_library(), dest)
    spec = importlib.util.spec_from_file_location("durfee", dest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    d = load()

    # series arithmetic
    b = d.qbinomial(4, 2)
    assert [c for _, _, c in b.terms()] == [1, 1, 2, 1, 1], b
    euler = d.qpochhammer(None, 6, track_z=False).invert()
    assert [int(euler.coefficient(n)) for n in range(7)] == [1, 1, 2, 3, 5, 7, 11]
    assert d.qbinomial(1, 2).terms() == []
    assert (b - b).terms() == []
    two = d.Series.parse("1 q^0/1 z^()\n1 q^1/2 z^()\n", 0, 4)
    assert two.coefficient("1/2") == 1 and str(two).startswith("1 q^0/1")

    # partitions
    assert len(d.partitions(4)) == 5
    assert d.partitions(4, parts=2, max_part=3) == [[2, 2], [3, 1]]
    assert d.count_partitions(3, 2, 4) == 2
    cut = d.dissect([6, 4, 4, 2])
    assert (cut["rows"], cut["right"], cut["below"]) == (3, [3, 1, 1], [2])
    assert cut["diagram"] == "###...\n###.\n###.\n..\n"

    # systems and identities
    t31 = d.DurfeeSystem.catalog("theorem3.1")
    assert len(t31) == 2 and t31.K == [["1/1", "1/1"], ["1/1", "2/1"]]
    assert t31.sectors[1] == {"Q": [0, 1], "a": [0, 1], "b": [1, 0]}
    report = t31.verify_finite([None, "inf"], 10)
    assert report["pass"] and report["M"] == ["inf", "inf"] and report["cutoff"] == "10/1"
    broken = t31.without_sector(1).verify_finite([None, None], 6)
    assert not broken["pass"] and broken["witness"]["q_exp"] == "1/1"
    assert t31.verify_symmetric([2, 2], [2, 2], [0, 0])["pass"]
    assert t31.verify_specialized([2, -1], 8)["pass"]
    assert t31.coverage(6)["pass"]
    assert d.DurfeeSystem.from_json(t31.to_json()) == t31

    # search and cosets
    found = d.search([[2, 1], [1, 2]], bound=1, cutoff=8)
    assert len(found) == 3
    try:
        d.search([[1, 1], [1, 2]], max_sectors=1)
    except d.SearchExhausted:
        pass
    else:
        raise AssertionError("expected SearchExhausted")
    assert sorted(d.coset_heuristic([[2, 1], [1, 2]])) == [[0, 0], [0, 1], [1, 1]]

    # characters
    sl3 = d.DurfeeSystem.catalog("theorem3.3:2")
    assert sl3.check_character(6)["pass"]
    assert d.sl_level1(2)["dims"] == ["0/1", "1/3", "1/3"]
    rr = d.ucpf_eval('{"dimension":1,"K":[[2]],"Q":[0],"u":["inf"],"z":["1"]}', 6)
    assert [int(rr.coefficient(n, [0])) for n in range(7)] == [1, 1, 1, 1, 2, 2, 3]
    assert d.DurfeeSystem.catalog("theorem3.3:1").check_finite_product([2], [3])["pass"]

    try:
        d.DurfeeSystem.catalog("theorem9.9")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
