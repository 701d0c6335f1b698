"""Smoke test for the cantor_py extension module."""

import json

import cantor_py as c


def main():
    p = c.Point("^(02)")
    assert p.value() == "1/4", p.value()
    assert c.Point("20^(20)") == c.Point("^(20)")

    a = c.Clopen("0")
    assert a.complement() == c.Clopen("2")
    assert a.union(a.complement()) == c.Clopen("ε")
    assert a.diam() == "1/3"
    assert a.contains(p)

    con = c.Construction()
    a0, b0 = con.dense_pair(0)
    x, depth = con.approximant(0, 3)
    assert con.recognize(x) == (0, 3)
    assert b0.in_cylinder(con.base_word(0))
    assert con.in_x(x, con.fiber_witness(x))

    dec = json.loads(con.decompose("0×0"))
    assert dec["type"] == "decomposition"
    assert con.resolvable("0×0", c.Clopen("0"))

    cert = con.falsify("ε×ε")
    assert con.verify(cert) is None
    doc = json.loads(cert)
    doc["payload"]["samples"].reverse()
    assert con.verify(json.dumps(doc)) == "a_{n″,i} → a_{n″}"

    family = json.loads(con.export(5, 2))
    assert family["checks"] and all(family["checks"].values())

    report = json.loads(c.check(seed=1, instances=20, probes=40))
    assert report["passed"], [s for s in report["suites"] if not s["passed"]]

    try:
        c.Point("01")
    except ValueError:
        pass
    else:
        raise AssertionError("bad digit accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
