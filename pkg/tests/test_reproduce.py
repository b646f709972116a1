import pytest

from geolrc.reproduce import DOCUMENTED, FAIL, PASS, REGISTRY, reproduce

FAST = ["ex3.3", "ex3.4", "ex4.4", "ex5.1", "ex5.3", "ex7.1", "best-known"]


@pytest.mark.parametrize("example_id", FAST)
def test_fast_reproductions_pass(example_id):
    res = reproduce(example_id)
    assert res.status == PASS, "\n".join(res.lines())


@pytest.mark.parametrize("example_id", ["ex5.1-table2", "ex5.3-table2", "ex5.4-table2"])
def test_summary_rows_are_documented_discrepancies(example_id):
    res = reproduce(example_id)
    assert res.status == DOCUMENTED
    assert all(c.status in (PASS, DOCUMENTED) for c in res.checks)
    assert all(c.note for c in res.checks if c.status == DOCUMENTED)


def test_unknown_id():
    with pytest.raises(KeyError):
        reproduce("ex99")


def test_crash_becomes_failure(monkeypatch):
    def boom():
        raise RuntimeError("kaput")

    monkeypatch.setitem(REGISTRY, "boom", ("always crashes", boom))
    res = reproduce("boom")
    assert res.status == FAIL and "kaput" in res.lines()[1]


def test_output_is_deterministic():
    a = reproduce("ex7.1").lines()
    b = reproduce("ex7.1").lines()
    assert a == b


def test_output_is_independent_of_worker_count(monkeypatch):
    monkeypatch.setenv("LRC_THREADS", "1")
    one = reproduce("ex6.1").lines()
    monkeypatch.setenv("LRC_THREADS", "2")
    two = reproduce("ex6.1").lines()
    assert one == two
