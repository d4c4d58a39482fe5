#!/usr/bin/env python3
"""Smoke test for the operadics_py extension module.

Builds nothing itself: run `cargo build -p operadics-py` (or --release)
first, then `python3 python/smoke_test.py`. The script locates the shared
library under target/, stages it under an importable name, and exercises the
main entry points against known values.
"""

import os
import shutil
import sys
import sysconfig
import tempfile


def locate_library():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    target = os.environ.get("CARGO_TARGET_DIR", os.path.join(root, "target"))
    names = ["liboperadics_py.so", "liboperadics_py.dylib", "operadics_py.dll"]
    for profile in ("debug", "release"):
        for name in names:
            path = os.path.join(target, profile, name)
            if os.path.exists(path):
                return path
    sys.exit("build the extension first: cargo build -p operadics-py")


def stage(path):
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    staging = tempfile.mkdtemp(prefix="operadics-py-")
    staged = os.path.join(staging, "operadics_py" + suffix)
    shutil.copyfile(path, staged)
    sys.path.insert(0, staging)


def check(label, got, expected):
    status = "ok" if got == expected else "FAIL"
    print(f"[{status}] {label}: {got!r}")
    if got != expected:
        sys.exit(f"expected {expected!r}")


def main():
    stage(locate_library())
    import operadics_py as op

    # Free operads: one binary generator counts binary trees by leaves.
    check(
        "binary generator level counts",
        op.free_operad_counts([2], 5, 16, 2),
        [0, 1, 1, 2, 5, 14],
    )
    check("trivial tree enumeration", op.tree_count(1, 0, 3, False), 1)
    check("nullary chain enumeration", op.tree_count(0, 2, 1, True), 2)

    # Table operads and composition by name.
    e2 = op.Operad.end_set(2, 2)
    check("endomorphism level sizes", [e2.level_size(n) for n in range(3)], [2, 4, 16])
    check("max absorbs the zero constant", e2.compose("0111", 1, "0"), "01")
    passed, _report = e2.verify()
    check("endomorphism operad axioms", passed, True)
    round_trip = op.Operad.from_json(e2.to_json())
    check("operad JSON round trip", round_trip.level_size(2), 16)

    # Coproduct rewriting: the worked census instance and a chain rewrite.
    idem = op.Operad.from_json(
        """{
        "name": "idem", "levels": [[], ["1", "a"]], "identity": "1",
        "compositions": [["1",1,"1","1"],["1",1,"a","a"],["a",1,"1","a"],["a",1,"a","a"]]
    }"""
    )
    cop = op.Coproduct(idem, idem)
    check("chain rewrite", cop.normalize_chain("p:a,p:a,q:1,q:a"), ["p:a", "q:a"])
    t, c, f, recursion = cop.census(1, 2)
    check("census words", t[2], 16)
    check("census collapsible", c[2], 14)
    check("census normal forms", (f[1], f[2]), (3, 5))
    check("census recursion", recursion, True)
    classes, oracle_ok = cop.oracle(1, 2)
    check("oracle classes", (classes, oracle_ok), (5, True))

    # Resolutions.
    a1 = op.Operad.assoc(1)
    ok, _sizes = op.hochschild_check(a1, 3, 1)
    check("Hochschild identities", ok, True)
    counts, ok = op.splitting_components([2], 2, 4, 4)
    check("splitting components", (counts, ok), ([0, 1, 1, 2, 5], True))
    sizes, ok = op.end_operad_sizes(op.Operad.assoc(2), 2)
    check("endomorphism operad of a point", (sizes, ok), ([1, 1, 1], True))

    # Cosimplicial structure.
    mu = op.max_table(2)
    check("max table", mu, "0111")
    check("limit of max/0", sorted(op.cosimplicial_limit(e2, "0", mu)), ["0", "1"])
    e23 = op.Operad.end_set(2, 3)
    check("cosimplicial identities", op.cosimplicial_check(e23, "0", mu, 3), True)
    check("bar transport comparison", op.compare_bar_transport(e2, "0", mu, 2), True)

    print("smoke test passed")


if __name__ == "__main__":
    main()
