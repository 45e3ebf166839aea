"""Smoke test for the nawelch extension module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml
    pip install --force-reinstall target/wheels/nawelch-*.whl
    python python/smoke_test.py
"""

import nawelch
from nawelch import Scalar


def main():
    t = Scalar.t()
    x = (t + 1) / (t * t - 1)
    assert str(x) == "(1)/(-1+t)", x
    assert x.valuation() == 0
    assert (t ** 3 / 2).valuation() == 3
    assert Scalar("0").valuation() is None
    try:
        Scalar(0).inv()
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("1/0 did not raise")

    p = nawelch.na_circle_point("t")
    assert p == ["(1-t^2)/(1+t^2)", "(2*t)/(1+t^2)"], p

    rep = nawelch.check_welch([["1", "0"], ["0", "1"]])
    assert rep["holds"] and rep["tight"], rep
    assert rep["diag_note"] == "certified"
    assert rep["rhs_valuation"] == 0

    rep = nawelch.check_welch([["1", "0"], p, ["3/5", "4/5"]], m=2)
    assert rep["holds"], rep

    rep = nawelch.check_welch([["t", "0"], ["0", "1"]], general=True)
    assert rep["lhs_valuation"] == 0, rep

    z = nawelch.zauner_check([["1"]])
    assert z["satisfied"], z

    hits = nawelch.na_search(2, 2, ["0", "3/4"], norm="1", gamma_valuation=0)
    assert hits, "no equiangular pair found"
    for family in hits:
        assert nawelch.equiangular_check(family, "1", 0)

    assert nawelch.gerzon(3, "c") == 9
    table = nawelch.bounds_table(4, 2, "c")
    assert abs(table["welch_max"][0]["value"] - 1 / 3) < 1e-12, table

    sic = nawelch.sic_construct_d2()
    assert abs(nawelch.coherence(sic) ** 2 - 1 / 3) < 1e-9

    res = nawelch.classical_search(2, 3, field="r", trials=4, steps=400, seed=1)
    assert res["gap"] >= -1e-9, res
    again = nawelch.classical_search(2, 3, field="r", trials=4, steps=400, seed=1)
    assert again["coherence"] == res["coherence"]

    print("smoke test ok")


if __name__ == "__main__":
    main()
