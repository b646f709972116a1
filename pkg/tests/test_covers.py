import itertools

import numpy as np
import pytest

from geolrc.config import _cover, builtin_config
from geolrc.covers import CoverError, kummer_cover
from geolrc.curves import apply_map, subgroup_from_x
from geolrc.exprs import parse

CURVE_CONFIGS = [
    "ex3_1", "ex3_2", "ex3_4", "ex4_1", "ex4_2", "ex4_3", "ex4_4", "ex4_5_corrected",
    "ex4_6", "ex4_7", "ex5_1", "ex5_2", "ex5_3", "ex5_4",
]


def _data(name, **overrides):
    cfg = builtin_config(name)
    return cfg, _cover(cfg, cfg.family, cfg.field, overrides)


@pytest.mark.parametrize("name", CURVE_CONFIGS)
def test_cover_shape(name):
    cfg, cd = _data(name)
    assert cd.n == cd.s * (cd.r + 1)
    pts = [P for fib in cd.helper_sets for P in fib]
    assert len(set(map(repr, pts))) == len(pts), "fibers overlap"
    assert len(set(map(repr, cd.base_points))) == cd.s
    for ev, fv in zip(cd.e_values, cd.f_values):
        assert ev.shape == (cd.r + 1, cd.r)
        assert len(fv) == cd.t
    assert len(cd.e_names) == cd.r and len(cd.f_names) == cd.t


@pytest.mark.parametrize("name", ["ex3_1", "ex3_2", "ex3_4"])
def test_elliptic_fibers_are_cosets_mapping_to_one_point(name):
    cfg, cd = _data(name)
    E = cfg.curve("curve")
    maps = cfg.exprs("map")
    G = set(subgroup_from_x(E, cfg.literals("kernel_x"), cfg.int("kernel_order")))
    for fib, base in zip(cd.helper_sets, cd.base_points):
        assert {apply_map(maps, P) for P in fib} == {base}
        assert {E.sub(P, fib[0]) for P in fib} == G
    assert cd.counts["points"] == E.order()


@pytest.mark.parametrize("name,split,total", [("ex5_2", 57, 81), ("ex5_3", 15, 21)])
def test_kummer_fibers_are_cube_roots(name, split, total):
    cfg, cd = _data(name)
    F = cfg.field
    h = cfg.expr("h")
    assert cd.counts["split"] == split
    assert sum(cd.counts[k] for k in ("split", "not_power", "zero", "pole")) == cd.counts["points"] == total
    for fib in cd.helper_sets:
        assert len({P for P, _ in fib}) == 1
        assert len({z for _, z in fib}) == cd.r + 1
        for P, z in fib:
            hv = h.eval_code({"x": P.x, "y": P.y}) if not P.is_inf else None
            if hv is not None:
                assert F.pow(z, cd.r + 1) == hv


def test_cubic_normal_form_counts():
    cfg, cd = _data("ex5_4")
    c = cd.counts
    assert c["split"] == 29
    assert c["split"] + c["not_split"] + c["ramified"] + c["pole"] == c["points"] == 44
    for fib in cd.helper_sets:
        assert len({w for _, w in fib}) == 3


def test_sign_change_quartic_fibers_are_orbits():
    cfg, cd = _data("ex4_1")
    F = cfg.field
    quartic = cfg.expr("quartic")
    for fib in cd.helper_sets:
        for P in fib:
            x, y, z = P.coords
            assert quartic.eval_code({"x": x, "y": y, "z": z}) == 0
        x, y, z = fib[0].coords
        orbit = {(F.mul(sx, x), F.mul(sy, y)) for sx in (1, F.neg(1)) for sy in (1, F.neg(1))}
        assert {(P.coords[0], P.coords[1]) for P in fib} == orbit
    brute = sum(
        1 for x, y in itertools.product(range(F.q), repeat=2) if x and y and quartic.eval_code({"x": x, "y": y, "z": 1}) == 0
    )
    assert brute == cd.n == 20


def test_hermitian_points_lie_on_the_curve():
    cfg, cd = _data("ex5_1")
    F = cfg.field
    for fib in cd.helper_sets:
        for x, y in fib:
            assert F.add(F.pow(y, 4), y) == F.pow(x, 5)
    assert cd.n == 63 and cd.counts["free_points"] == 63


def test_hyperelliptic_fibers():
    cfg, cd = _data("ex4_7")
    F = cfg.field
    poly = parse("x^8 + 16x^6 + 14x^4 + 16x^2 + 1", F)
    for fib in cd.helper_sets:
        xs = {P[0] for P in fib}
        for x, y in fib:
            assert F.mul(y, y) == poly.eval_code({"x": x})
        x0 = fib[0][0]
        assert xs == {x0, F.neg(x0), F.inv(x0), F.neg(F.inv(x0))}


def test_e_values_have_no_poles_on_built_configs():
    for name in CURVE_CONFIGS:
        _, cd = _data(name)
        assert not cd.pole_fibers(), name
        assert all(np.all(ev >= 0) for ev in cd.e_values)


def test_naive_variant_has_pole_fibers():
    _, cd = _data("ex3_3_naive")
    assert len(cd.pole_fibers()) == 1


def test_kummer_rejects_bad_degree():
    cfg = builtin_config("ex5_3")
    with pytest.raises(CoverError):
        kummer_cover(cfg.curve("curve"), cfg.expr("h"), 3, 2, 3)  # 4 does not divide 15
