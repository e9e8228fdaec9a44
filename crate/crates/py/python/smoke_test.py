"""Smoke test for the compiled extension: python python/smoke_test.py"""

import json

import lietorus


def main():
    z = lietorus.Scalar.zeta(4, 1)
    assert (z * z) == lietorus.Scalar("-1")
    assert str(lietorus.Scalar("1/2") + lietorus.Scalar("1/2")) == "1"

    t = lietorus.Torus("A", 2, json.dumps([{"kind": "diagram", "perm": [2, 1]}]))
    assert t.m == [2]
    assert t.piece_dims() == [3, 5]
    assert t.check()["passed"]
    assert t.jacobi_violation(1) is None

    assert lietorus.weyl_dimension("G", 2, [1, 0]) == 7
    dim, weights = lietorus.hw_module("A", 2, [1, 1])
    assert dim == 8 and sum(m for _, m in weights) == 8

    cfg = {
        "type": "A",
        "rank": 1,
        "sigma": [{"kind": "identity"}],
        "lambda": [[1], [1]],
        "b": [["1"], ["-1"]],
        "alpha": ["1/2"],
    }
    inst = lietorus.Instance(json.dumps(cfg))
    assert inst.dim == 4 and inst.separated()
    assert inst.check_irreducible(4)["irreducible"]
    lat = inst.component_lattice()
    assert lat["index"] == 2
    rep = inst.verify("-4:4")
    assert rep["overall"] == "pass"
    assert len(rep["decomposition"]["components"]) == 2

    try:
        lietorus.Instance(json.dumps(dict(cfg, b=[["1"]])))
    except ValueError as e:
        assert "b" in str(e)
    else:
        raise AssertionError("mismatched b accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
