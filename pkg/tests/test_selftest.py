from tdpair.scalars import GF
from tdpair.selftest import INVARIANTS, run_selftest


def test_empty_pool_is_a_vacuous_pass():
    rep = run_selftest(GF(101), 3, 7, 0)
    assert rep["passed"] and rep["generated"] == 0 and not rep["failures"]


def test_trivial_pool():
    rep = run_selftest(GF(101), 0, 1, 4)
    assert rep["passed"] and rep["ds"] == [0, 0, 0, 0]


def test_reference_run():
    rep = run_selftest(GF(101), 3, 7, 25)
    assert rep["passed"], rep["failures"]
    assert rep["generated"] == 25 and set(rep["ds"]) == {0, 1, 2, 3}
    for name, _ in INVARIANTS:
        stats = rep["invariants"][name]
        assert stats["failed"] == 0 and stats["passed"] + stats["skipped"] == 25


def test_a_failing_invariant_is_reported():
    calls = []

    def broken(item, ctx):
        calls.append(item.index)
        raise RuntimeError("boom")

    INVARIANTS.append(("broken", broken))
    try:
        rep = run_selftest(GF(101), 1, 0, 2, invariants=["broken"])
    finally:
        INVARIANTS.pop()
    assert not rep["passed"] and calls == [0, 1]
    assert rep["failures"][0]["invariant"] == "broken" and "boom" in rep["failures"][0]["detail"]


def test_reproducible():
    a = run_selftest(GF(13), 2, 5, 6)
    b = run_selftest(GF(13), 2, 5, 6)
    assert a == b
