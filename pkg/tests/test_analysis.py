import itertools
import json

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from geolrc.analysis import (
    DistanceBudgetError,
    min_distance_exhaustive,
    min_distance_low_weight,
    parity_check,
    report,
    singleton_bound,
    span_table,
    verify_locality,
    worker_count,
)
from geolrc.config import build_from_config, builtin_config, builtin_names
from geolrc.engine import HelperPartition, LinearCode
from geolrc.gf import make_field
from geolrc.linalg import matmul, rank


def _naive_distance(code):
    """Weight of every nonzero message times the basis, no reductions."""
    F = code.field
    best = code.n
    for msg in itertools.product(range(F.q), repeat=code.k):
        if any(msg):
            w = int(np.count_nonzero(matmul(F, np.array(msg), code.basis)))
            best = min(best, w)
    return best


def _trivial_code(F, G):
    n = G.shape[1]
    part = HelperPartition.from_generator(F, G, [[c] for c in range(n)])
    return LinearCode(F, G, [part], 0)


@st.composite
def small_codes(draw):
    p, m = draw(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]))
    F = make_field(p, m)
    n = draw(st.integers(3, 9))
    k = draw(st.integers(1, min(n - 1, 4)))
    entries = draw(st.lists(st.integers(0, F.q - 1), min_size=k * n, max_size=k * n))
    G = np.array(entries, dtype=np.int64).reshape(k, n)
    if rank(F, G) == 0:
        G[0, 0] = 1
    return _trivial_code(F, G)


@settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_codes())
def test_distance_algorithms_agree_on_random_codes(code):
    d = _naive_distance(code)
    assert min_distance_exhaustive(code) == d
    res = min_distance_low_weight(code, w_max=code.n)
    assert res.exact and res.value == d
    if d > 1:
        short = min_distance_low_weight(code, w_max=d - 1)
        assert not short.exact and short.value == d


# built codes with q^k <= 2^20 (name, overrides)
SMALL_BUILT = [
    ("ex7_1", {}),
    ("ex3_1", {"t": 1}),
    ("ex3_2", {"t": 1}),
    ("ex4_1", {"t": 1}),
    ("ex4_4", {"t": 1}),
    ("ex4_5_corrected", {"t": 1}),
    ("ex5_3", {"t": 2}),
    ("ex5_4", {"t": 2}),
    ("ex3_4", {"t": 2}),
    ("table1-row-01", {"m": 2}),
    ("table1-row-07", {"m": 2}),
]


@pytest.mark.parametrize("name,over", SMALL_BUILT, ids=[f"{n}{o}" for n, o in SMALL_BUILT])
def test_distance_algorithms_agree_on_built_codes(name, over):
    code = build_from_config(builtin_config(name), **over)
    assert code.field.q**code.k <= 2**20
    d = min_distance_exhaustive(code)
    assert d >= code.designed_distance
    w = min(d, 4)
    res = min_distance_low_weight(code, w_max=w)
    if d <= w:
        assert res.exact and res.value == d
    else:
        assert not res.exact and res.value <= d


def test_exhaustive_matches_naive_on_surface():
    code = build_from_config(builtin_config("ex7_1"))
    assert min_distance_exhaustive(code) == _naive_distance(code) == 2


def test_parallel_sweep_matches_serial():
    code = build_from_config(builtin_config("ex3_2"), t=1)
    assert min_distance_exhaustive(code, workers=2) == min_distance_exhaustive(code, workers=1)


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("LRC_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("LRC_THREADS", "junk")
    assert worker_count() == 1


def test_budget_is_enforced():
    code = build_from_config(builtin_config("ex3_1"))
    with pytest.raises(DistanceBudgetError):
        min_distance_exhaustive(code)


def _built_default_codes():
    out = []
    for name in builtin_names():
        if name in ("ex3_3_naive", "ex4_5"):
            continue
        out.append(name)
    return out


@pytest.mark.parametrize("name", _built_default_codes())
def test_designed_distance_soundness(name):
    """No codeword lighter than the designed distance (searched up to weight 3)."""
    code = build_from_config(builtin_config(name))
    dd = code.designed_distance
    if dd <= 1:
        return
    res = min_distance_low_weight(code, w_max=min(dd - 1, 3))
    assert not res.exact, f"found a codeword of weight {res.value} < designed {dd}"


def test_parity_check_is_dual(rng):
    code = build_from_config(builtin_config("ex5_3"))
    H = parity_check(code)
    assert H.shape == (code.n - code.k, code.n)
    assert not np.any(matmul(code.field, code.generator, H.T))
    assert rank(code.field, H) == code.n - code.k


def test_span_table_is_complete():
    F = make_field(3)
    rows = np.array([[1, 0, 2], [0, 1, 1]])
    T = span_table(F, rows)
    assert T.shape == (9, 3)
    assert len({tuple(r) for r in T}) == 9


def test_singleton_bound():
    assert singleton_bound(18, 11, 2) == 18 - 11 - 6 + 2
    with pytest.raises(ValueError):
        singleton_bound(10, 5, 0)


def test_locality_verdict_detects_corruption():
    code = build_from_config(builtin_config("ex7_1"))
    v = verify_locality(code)
    assert v.ok and v.sweep == "exhaustive"
    # swap two repair coefficients on one set so the plan is wrong
    part = code.partitions[0]
    c = part.sets[0][0]
    others, lam = part.plans[c]
    part.plans[c] = (others, np.array([lam[0], code.field.add(int(lam[1]), 1)]))
    bad = verify_locality(code)
    assert not bad.ok and "repair mismatch" in bad.describe()


def test_report_fields():
    code = build_from_config(builtin_config("ex7_2"))
    rep = report(code)
    core = rep.core()
    assert set(core) == {"n", "k", "r", "d_exact", "d_designed", "singleton_gap", "locality_verdict", "method"}
    assert (rep.n, rep.k, rep.d_exact, rep.singleton_gap, rep.method) == (18, 11, 3, 0, "exhaustive")
    assert json.loads(rep.to_json())["d_exact"] == 3
    assert "locality_verdict = pass" in rep.to_text()


def test_report_policies():
    code = build_from_config(builtin_config("ex7_4"))
    rep = report(code, low_weight=3)
    assert rep.d_exact == 3 and rep.method == "low-weight(w<=3)"
    rep = report(code, low_weight=0)
    assert rep.d_exact is None and rep.method == "designed bound only"
    rep = report(code, low_weight=2)
    assert rep.d_exact is None and rep.d_lower_bound == 3 and "lower bound" in rep.method
