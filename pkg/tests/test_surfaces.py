import itertools
from math import comb

import pytest

from geolrc.config import builtin_config
from geolrc.engine import ConstructionError
from geolrc.exprs import parse
from geolrc.surfaces import build_surface_code, cubic_distance_bound, monomials, surface_fibers


@pytest.mark.parametrize("m", range(0, 6))
def test_monomials(m):
    tier = monomials(m)
    assert len(tier) == comb(m + 2, 2)
    assert tier.exponents[0] == (m, 0, 0)
    assert all(sum(e) == m for e in tier.exponents)
    assert len(set(tier.exponents)) == len(tier)


def test_monomial_names():
    assert monomials(2).names() == ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]
    with pytest.raises(ValueError):
        monomials(-1)


@pytest.mark.parametrize("name", ["ex7_1", "ex7_2", "table1-row-05"])
def test_fibers_match_brute_force(name):
    cfg = builtin_config(name)
    f, r = cfg.expr("f"), cfg.int("r")
    F = f.field
    fib = surface_fibers(f, r)
    c = fib.counts
    assert c["branch"] + c["at_z0"] + c["split"] + c["no_root"] == c["plane_points"] == F.q**2 + F.q + 1
    brute = set()
    for x, y, w in itertools.product(range(F.q), repeat=3):
        v = f.eval_code({"x": x, "y": y, "z": 1})
        if v and F.pow(w, r + 1) == v:
            brute.add((x, y, w))
    got = {(Q.coords[0], Q.coords[1], w) for Q, ws in zip(fib.base_points, fib.w_values) for w in ws}
    assert got == brute
    assert fib.n == len(brute)


@pytest.mark.parametrize("name", ["ex7_1", "ex7_2", "ex7_5"])
def test_generator_matches_direct_evaluation(name):
    cfg = builtin_config(name)
    code = build_surface_code(cfg.expr("f"), cfg.int("r"), cfg.int("m"))
    F = code.field
    rows = [parse(nm, F) for nm in code.meta["row_names"]]
    assert code.raw_rows == code.meta["expected_raw_rows"]
    for col, label in enumerate(code.column_labels):
        x, y, z, w = (F.parse(s) for s in label.strip("[]").split(":"))
        assert z == 1
        for i, e in enumerate(rows):
            assert code.generator[i, col] == e.eval_code({"x": x, "y": y, "z": z, "w": w})


def test_small_surface_parameters():
    code = build_surface_code(builtin_config("ex7_1").expr("f"), 2, 2)
    assert (code.n, code.raw_rows, code.kernel_dim, code.k) == (9, 9, 3, 6)
    assert code.meta["tier_sizes"] == [6, 3]
    assert code.meta["cubic_bound"] == -20
    assert code.designed_distance == 1
    assert code.locality_ok


def test_cubic_distance_bound():
    assert cubic_distance_bound(9, 2, 4) == 9 - 7 * 4 - 1
    assert cubic_distance_bound(100, 1, 4) == 100 - 16 - 1


def test_surface_errors():
    f = builtin_config("ex7_1").expr("f")
    with pytest.raises(ConstructionError):
        surface_fibers(f, 3)  # 4 does not divide q - 1 = 3
    with pytest.raises(ConstructionError):
        build_surface_code(f, 2, 0)
    g = parse("x^2 + y*z", f.field)
    with pytest.raises(ConstructionError):
        surface_fibers(g, 2)
