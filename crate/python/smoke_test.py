"""Smoke test for the enumorder extension module.

Build and install first:
    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/enumorder-*.whl
"""

import json
from fractions import Fraction

import enumorder


def main():
    t1 = enumorder.Family("T:1")
    assert t1.take(3) == ["0", "1/2", "2/3"]
    assert t1.descriptor == "W"
    assert enumorder.Family("finite:3,1/2").take(5) == ["3", "1/2"]
    assert [Fraction(v) for v in enumorder.Family("harmonic").take(3)] == [1, Fraction(1, 2), Fraction(1, 3)]

    harmonic, thirds = enumorder.Family("harmonic"), enumorder.Family("thirds")
    assert harmonic.order_pattern(4) == [3, 2, 1, 0]
    assert enumorder.prefix_coorder(t1, enumorder.Family("T:3"), 100) is None
    w = enumorder.prefix_coorder(harmonic, thirds, 10)
    assert (w["i"], w["j"]) == (0, 1)

    a1, a2 = enumorder.Family("A:1"), enumorder.Family("A:2")
    assert enumorder.refute_type2(a1, a2) == "signature [ASC] != [ASC,DESC]"
    cells = enumorder.type2_search(a1, a2, 3, 3, 200)
    assert len(cells) == 16 and all(c["witness"] is not None for c in cells)

    assert enumorder.finite_coorder(["1/2", "3", "5"], ["-1", "0", "7"])
    matched = enumorder.match_listing(harmonic, enumorder.Family("interval:0,1"), 20)
    assert matched["status"] == "matched" and len(matched["values"]) == 20
    failed = enumorder.match_listing(harmonic, thirds, 10, fuel=1000)
    assert failed["status"] == "gap_empty" and failed["step"] == 1

    t_family = "case i odd: (i-1)+(n-1)/n ; case i even: i-(n-1)/n"
    assert enumorder.eval_seq(t_family, 2, 2) == "3/2"
    printed = enumorder.format_seq(t_family)
    assert printed == "case i odd: i - 1 + (n - 1) / n ; case i even: i - (n - 1) / n"
    assert enumorder.format_seq(printed) == printed

    report = json.loads(enumorder.repro("theorem9", i_max=3, length=200))
    assert report["passed"] and len(report["pairs"]) == 3

    try:
        enumorder.Family("nosuch")
    except ValueError as e:
        assert "nosuch" in str(e)
    else:
        raise AssertionError("expected ValueError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
