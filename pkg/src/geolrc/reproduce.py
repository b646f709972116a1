"""Registry of reference reproductions with expected-versus-computed checks.

Each entry builds one or more codes from the built-in configurations and
compares the computed quantities with the published ones.  A mismatch that
is a known inconsistency of the published numbers (recorded in advance
here, with both readings computed) is reported as
``DISCREPANCY-DOCUMENTED`` instead of ``FAIL``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

from .analysis import min_distance_exhaustive, min_distance_low_weight, report, singleton_bound, verify_locality
from .config import build_from_config, builtin_config
from .curves import CurveError, WeierstrassCurve
from .engine import ConstructionError
from .surfaces import cubic_distance_bound, table1_sweep

__all__ = ["Check", "Reproduction", "REGISTRY", "reproduce", "reproduce_all", "PASS", "FAIL", "DOCUMENTED"]

PASS = "PASS"
FAIL = "FAIL"
DOCUMENTED = "DISCREPANCY-DOCUMENTED"


@dataclass
class Check:
    item: str
    expected: object
    computed: object
    status: str
    note: str = ""

    def line(self) -> str:
        note = f"  [{self.note}]" if self.note else ""
        return f"  {self.status:<22} {self.item}: expected {self.expected}, computed {self.computed}{note}"


@dataclass
class Reproduction:
    id: str
    title: str
    checks: list = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if FAIL in states or not self.checks:
            return FAIL
        if DOCUMENTED in states:
            return DOCUMENTED
        return PASS

    def lines(self) -> list[str]:
        return [f"{self.status:<22} {self.id}: {self.title}"] + [c.line() for c in self.checks]


def _eq(item, expected, computed, documented: str = "") -> Check:
    if expected == computed:
        return Check(item, expected, computed, PASS)
    return Check(item, expected, computed, DOCUMENTED if documented else FAIL, documented)


def _ge(item, bound, computed) -> Check:
    ok = computed is not None and computed >= bound
    return Check(item, f">= {bound}", computed, PASS if ok else FAIL)


def _true(item, ok, computed="") -> Check:
    return Check(item, True, computed if computed != "" else bool(ok), PASS if ok else FAIL)


def _code(name, **kw):
    return build_from_config(builtin_config(name), **kw)


def _params(code):
    return (code.n, code.k, code.designed_distance)


def _designed_gap(code):
    return singleton_bound(code.n, code.k, min(code.r)) - code.designed_distance


# -- elliptic ---------------------------------------------------------------------------------


def _ex3_1():
    c = _code("ex3_1")
    c1 = _code("ex3_1", t=1)
    v = verify_locality(c)
    return [
        _eq("#E(K)", 81, c.meta["counts"]["points"]),
        _eq("helper sets passing the recovery check", 26, sum(ch.ok for ch in c.partitions[0].checks)),
        _true("locality verified", v.ok, v.describe()),
        _eq("(n, k, designed d) at t = 21", (78, 42, 13), _params(c)),
        _eq("Singleton gap at t = 21", 4, _designed_gap(c)),
        _eq("(n, k) at t = 1", (78, 2), (c1.n, c1.k)),
        _ge("exact d at t = 1", 73, min_distance_exhaustive(c1)),
    ]


def _ex3_2():
    c = _code("ex3_2")
    c1 = _code("ex3_2", t=1)
    return [
        _eq("#E(K)", 44, c.meta["counts"]["points"]),
        _eq("(n, k, designed d) at t = 7", (40, 21, 9), _params(c)),
        _eq("Singleton gap", 5, _designed_gap(c)),
        _true("locality verified", verify_locality(c).ok),
        _eq("(n, k) at t = 1", (40, 3), (c1.n, c1.k)),
        _ge("exact d at t = 1", 33, min_distance_exhaustive(c1)),
    ]


def _ex3_3():
    cfg = builtin_config("ex3_3_naive")
    E = cfg.curve("curve")
    checks = [_eq("#E(K), coefficient read as a^7", 42, E.order())]
    # the other reading takes r^7 with the locality r = 2, i.e. the integer 128
    try:
        alt = WeierstrassCurve(E.field, E.a1, E.a2, E.a3, E.field.from_int(2**7), E.a6)
        checks.append(_eq("#E(K), coefficient read as 2^7", 42, alt.order(), "this reading does not give 42"))
    except CurveError:
        checks.append(Check("coefficient read as 2^7", "a curve of order 42", "singular equation", PASS,
                            "only the a^7 reading defines an elliptic curve"))
    try:
        build_from_config(cfg)
        checks.append(Check("construction with e = (1, x)", "2 failing cosets", "built without failure", FAIL))
    except ConstructionError as exc:
        fails = exc.failures
        checks.append(_eq("failing cosets", 2, len(fails)))
        checks.append(_true("trivial coset fails", any(f.startswith("{inf") for f in fails)))
        checks.append(_true("coset of the 2-torsion point fails", any(f.startswith("{(0, 0)") for f in fails)))
    return checks


def _ex3_4():
    c = _code("ex3_4")
    return [
        _eq("(n, k, designed d) at t = 10", (42, 20, 10), _params(c)),
        _eq("helper sets", 14, len(c.partitions[0].sets)),
        _true("all cosets pass the recovery check", c.partitions[0].ok),
        _eq("Singleton gap", 4, _designed_gap(c)),
    ]


# -- quartics -----------------------------------------------------------------------------------

_QUARTICS = {
    "ex4.1": ("ex4_1", 20, 3, (20, 9, 8)),
    "ex4.2": ("ex4_2", 40, 8, (40, 24, 8)),
    "ex4.3": ("ex4_3", 60, 13, (60, 39, 8)),
    "ex4.4": ("ex4_4", 24, 4, (24, 12, 8)),
    "ex4.5": ("ex4_5_corrected", 36, 7, (36, 21, 8)),
    "ex4.6": ("ex4_6", 64, 14, (64, 42, 8)),
    "ex4.7": ("ex4_7", 56, 12, (56, 36, 8)),
}

EX45_NOTE = "the printed constant a (a^4 + a + 1 = 0) gives 12 affine points; a primitive cube root of unity gives 36"


def _quartic(key, budget=2**26):
    def run():
        name, N, t, feat = _QUARTICS[key]
        checks = []
        if key == "ex4.5":
            lit = _code("ex4_5", force=True, t=1)
            checks.append(_eq("usable points with the printed constant", 36, lit.n, EX45_NOTE))
        c = _code(name)
        checks += [
            _eq("usable points", N, c.n),
            _eq(f"(n, k, designed d) at t = {t}", feat, _params(c)),
            _eq("Singleton gap", 2, _designed_gap(c)),
            _true("locality verified", verify_locality(c).ok),
        ]
        for tt in sorted({1, 2, t}):
            ct = _code(name, t=tt)
            if ct.field.q**ct.k <= budget:
                checks.append(_ge(f"exact d at t = {tt}", ct.designed_distance, min_distance_exhaustive(ct, budget=budget)))
        return checks

    return run


# -- covers of higher genus ----------------------------------------------------------------------


def _ex5_1():
    c16 = _code("ex5_1")
    c14 = _code("ex5_1", t=14)
    return [
        _eq("unramified points", 63, c16.n),
        _eq("recovery matrices passing", 21, sum(ch.ok for ch in c16.partitions[0].checks)),
        _eq("(n, k, designed d) at t = 16", (63, 32, 7), _params(c16)),
        _eq("(n, k, designed d) at t = 14", (63, 28, 13), _params(c14)),
    ]


def _ex5_1_table2():
    c = _code("ex5_1", t=10)
    text, table = 55 - 30, 51 - 30
    note = "designed distance is 55 - 3t (degree 3t + 8) as in the worked example; the summary table lists 51 - 3t"
    return [
        _eq("designed d at t = 10, worked-example reading 55 - 3t", text, c.designed_distance),
        _eq("designed d at t = 10, summary-table reading 51 - 3t", table, c.designed_distance, note),
        _eq("Singleton gap, summary table", 2, _designed_gap(c), "computed gap is 10, as the worked example states"),
    ]


def _ex5_2():
    c = _code("ex5_2")
    note = "168 - 3t at t = 51 is 15; the quoted code lists 13"
    return [
        _eq("split points", 57, c.meta["counts"]["split"]),
        _eq("(n, k) at t = 51", (171, 102), (c.n, c.k)),
        _eq("designed d at t = 51 from 168 - 3t", 168 - 3 * 51, c.designed_distance),
        _eq("designed d at t = 51 as quoted", 13, c.designed_distance, note),
        _ge("designed d at t = 51 at least the quoted value", 13, c.designed_distance),
        _eq("Singleton gap", 5, _designed_gap(c)),
    ]


def _ex5_3():
    c = _code("ex5_3")
    return [
        _eq("split points", 15, c.meta["counts"]["split"]),
        _eq("(n, k, designed d) at t = 11", (45, 22, 9), _params(c)),
        _true("locality verified", verify_locality(c).ok),
    ]


def _ex5_3_table2():
    c = _code("ex5_3", t=5)
    return [
        _eq("designed d at t = 5, worked-example reading 42 - 3t", 42 - 15, c.designed_distance),
        _eq("designed d at t = 5, summary-table reading 42 - 2t", 42 - 10, c.designed_distance,
            "the worked example gives 42 - 3t; the summary table lists 42 - 2t"),
        _eq("Singleton gap, summary table", 2, _designed_gap(c), "computed gap is 5 = n - 3t + 2 - (n - 3t - 3)"),
    ]


def _ex5_4():
    checks = []
    c = _code("ex5_4")
    checks.append(_eq("split points", 29, c.meta["counts"]["split"]))
    for t in (1, 10, 27):
        ct = _code("ex5_4", t=t)
        checks.append(_eq(f"(n, k, designed d) at t = {t}", (87, 2 * t, 84 - 3 * t), _params(ct)))
    checks.append(_eq("Singleton gap (worked example: 5)", 5, _designed_gap(c)))
    return checks


def _ex5_4_table2():
    c = _code("ex5_4")
    return [_eq("Singleton gap, summary table", 2, _designed_gap(c), "the worked example states the gap is 5")]


def _ex6_1():
    c7 = _code("ex6_1")
    c1 = _code("ex6_1", t=1)
    return [
        _eq("n", 81, c7.n),
        _true("partitions differ", sorted(map(tuple, c7.partitions[0].sets)) != sorted(map(tuple, c7.partitions[1].sets))),
        _eq("partition 1 cosets passing", 27, sum(ch.ok for ch in c7.partitions[0].checks)),
        _eq("partition 2 cosets passing", 27, sum(ch.ok for ch in c7.partitions[1].checks)),
        _eq("(n, k, designed d) at t = 7", (81, 28, 6), _params(c7)),
        _eq("(n, k, designed d) at t = 1", (81, 4, 60), _params(c1)),
        _ge("exact d at t = 1", 60, min_distance_exhaustive(c1)),
    ]


# -- surfaces --------------------------------------------------------------------------------------

_SURFACES = {
    "ex7.1": ("ex7_1", (9, 9, 3, 6, 2), -20),
    "ex7.2": ("ex7_2", (18, 16, 5, 11, 3), -23),
    "ex7.4": ("ex7_4", (48, 36, 5, 31, 3), None),
    "ex7.5": ("ex7_5", (24, 31, 14, 17, 3), None),
    "ex7.6": ("ex7_6", (110, 130, 43, 87, 3), None),
}


def _surface(key):
    def run():
        name, (n, raw, ker, k, d), bound = _SURFACES[key]
        c = _code(name)
        if c.field.q**c.k <= 2**24:
            dd, how = min_distance_exhaustive(c), "exhaustive"
        else:
            res = min_distance_low_weight(c, 3)
            dd, how = (res.value if res.exact else None), "low-weight w <= 3"
        checks = [
            _eq("(n, raw rows, kernel dim, k)", (n, raw, ker, k), (c.n, c.raw_rows, c.kernel_dim, c.k)),
            _eq(f"d ({how})", d, dd),
            _eq("Singleton gap", 0, singleton_bound(c.n, c.k, c.r[0]) - (dd or 0)),
            _true("locality verified", verify_locality(c).ok),
        ]
        if bound is not None:
            checks.append(_eq("cubic-surface distance bound", bound, cubic_distance_bound(c.n, c.meta["m"], c.field.q)))
        return checks

    return run


def _table1():
    checks = []
    for name, m, rep, exp in table1_sweep(low_weight=True):
        got = (rep.n, rep.k, rep.d_exact, rep.singleton_gap)
        checks.append(_eq(f"{name} m = {m} (n, k, d, SG)", tuple(exp), got))
    return checks


# -- summary tables ---------------------------------------------------------------------------------

# (q, n, k(t), designed(t), r, SG, config, t values, documented note)
_TABLE2 = [
    (4, 18, "11", "3", 2, 0, "ex7_2", None, ""),
    (5, 24, "17", "3", 3, 0, "ex7_5", None, ""),
    (7, 20, "3t", "20-4t", 3, 2, "ex4_1", (1, 3, 4), ""),
    (7, 48, "31", "3", 2, 0, "ex7_4", None, ""),
    (8, 24, "3t", "24-4t", 3, 2, "ex4_4", (1, 4, 5), ""),
    (11, 110, "87", "3", 4, 0, "ex7_6", None, ""),
    (16, 36, "3t", "36-4t", 3, 2, "ex4_5_corrected", (1, 7, 8), ""),
    (16, 45, "2t", "42-2t", 2, 2, "ex5_3", (1, 11, 13), "worked example gives 42 - 3t and gap 5"),
    (16, 63, "2t", "51-3t", 2, 2, "ex5_1", (3, 14, 16), "worked example gives 55 - 3t and gap 10"),
    (31, 56, "3t", "56-4t", 3, 2, "ex4_7", (1, 12, 13), ""),
    (31, 60, "3t", "60-4t", 3, 2, "ex4_3", (1, 13, 14), ""),
    (32, 40, "3t", "37-4t", 3, 5, "ex3_2", (1, 7, 9), ""),
    (32, 42, "2t", "40-3t", 2, 4, "ex3_4", (2, 10, 12), ""),
    (32, 64, "3t", "64-4t", 3, 2, "ex4_6", (1, 14, 15), ""),
    (32, 87, "2t", "84-3t", 2, 2, "ex5_4", (1, 10, 27), "worked example states gap 5"),
    (64, 171, "2t", "168-3t", 2, 5, "ex5_2", (1, 51, 55), ""),
]


def _lin(text: str, t: int) -> int:
    """Evaluate ``a``, ``bt`` or ``a-bt`` at ``t``."""
    text = text.replace(" ", "")
    if "-" in text:
        a, b = text.split("-")
        return int(a) - _lin(b, t)
    if text.endswith("t"):
        return (int(text[:-1]) if text[:-1] else 1) * t
    return int(text)


def _table2():
    checks = []
    for q, n, kf, df, r, sg, name, ts, note in _TABLE2:
        tag = f"q = {q}, n = {n}"
        if ts is None:
            c = _code(name)
            rep = report(c, low_weight=3)
            checks.append(_eq(f"{tag}: (n, k, d, r)", (n, _lin(kf, 0), _lin(df, 0), r), (c.n, c.k, rep.d_exact, c.r[0])))
            checks.append(_eq(f"{tag}: SG", sg, rep.singleton_gap))
            continue
        for t in ts:
            c = _code(name, t=t)
            exp = (n, _lin(kf, t), _lin(df, t), r)
            got = (c.n, c.k, c.designed_distance, c.r[0])
            checks.append(_eq(f"{tag}, t = {t}: (n, k, designed d, r)", exp, got, note if exp[2] != got[2] else ""))
        checks.append(_eq(f"{tag}: SG", sg, _designed_gap(c), note))
    try:
        c = _code("ex3_4", t=13)
        got = c.designed_distance
    except ConstructionError:
        got = "nonpositive"
    checks.append(_eq("q = 32, n = 42, t = 13: designed d", 40 - 39, got,
                      "the construction is stated for even t; odd t gives 37 - 3t"))
    return checks


_BEST_KNOWN = [(4, 18, 11, 3, 3, "ex7_2", None), (5, 24, 17, 3, 6, "ex7_5", None),
         (7, 20, 9, 8, 9, "ex4_1", 3), (8, 24, 12, 8, 10, "ex4_4", 4)]


def _best_known():
    checks = []
    for q, n, k, d, best, name, t in _BEST_KNOWN:
        c = _code(name) if t is None else _code(name, t=t)
        if t is None:
            dd = report(c, low_weight=3).d_exact
        else:
            dd = c.designed_distance
        checks.append(_eq(f"q = {q}: (n, k, d of the LRC)", (n, k, d), (c.n, c.k, dd)))
        checks.append(_true(f"q = {q}: LRC distance {dd} at most the best known {best}", dd <= best))
    return checks


REGISTRY: dict[str, tuple[str, Callable]] = {
    "ex3.1": ("order-3 quotient of y^2 + y = x^3 over F64", _ex3_1),
    "ex3.2": ("order-4 quotient over F32", _ex3_2),
    "ex3.3": ("naive e = (1, x) fails on two cosets", _ex3_3),
    "ex3.4": ("functions with conjugate poles over F1024", _ex3_4),
    "ex4.1": ("V4 quartic by sign changes over F7", _quartic("ex4.1")),
    "ex4.2": ("V4 quartic by sign changes over F17", _quartic("ex4.2")),
    "ex4.3": ("V4 quartic by sign changes over F31", _quartic("ex4.3")),
    "ex4.4": ("quartic in x^2 + x, y^2 + y over F8", _quartic("ex4.4")),
    "ex4.5": ("quartic in x^2 + x, y^2 + y over F16", _quartic("ex4.5")),
    "ex4.6": ("quartic in x^2 + x, y^2 + y over F32", _quartic("ex4.6")),
    "ex4.7": ("genus-3 hyperelliptic curve over F31", _quartic("ex4.7")),
    "ex5.1": ("Hermitian quotient over F16", _ex5_1),
    "ex5.1-table2": ("Hermitian row of the summary table", _ex5_1_table2),
    "ex5.2": ("cube-root cover over F64", _ex5_2),
    "ex5.3": ("cube-root cover over F16", _ex5_3),
    "ex5.3-table2": ("F16 triple-cover row of the summary table", _ex5_3_table2),
    "ex5.4": ("normal-form cubic cover over F32", _ex5_4),
    "ex5.4-table2": ("F32 triple-cover row of the summary table", _ex5_4_table2),
    "ex6.1": ("two recovery sets over F64", _ex6_1),
    "ex7.1": ("cubic surface over F4, (9,6,2)", _surface("ex7.1")),
    "ex7.2": ("cubic surface over F4, (18,11,3)", _surface("ex7.2")),
    "ex7.3": ("F4 cubic surfaces (same as table1)", _table1),
    "ex7.4": ("cubic surface over F7, (48,31,3)", _surface("ex7.4")),
    "ex7.5": ("quartic K3 surface over F5, (24,17,3)", _surface("ex7.5")),
    "ex7.6": ("quintic surface over F11, (110,87,3)", _surface("ex7.6")),
    "table1": ("13 F4 cubic surfaces, m = 3 and 4", _table1),
    "table2": ("summary table of code families", _table2),
    "best-known": ("comparison with best known linear codes", _best_known),
}


def reproduce(example_id: str) -> Reproduction:
    if example_id not in REGISTRY:
        raise KeyError(f"unknown example id {example_id!r}; known: {', '.join(REGISTRY)}")
    title, fn = REGISTRY[example_id]
    t0 = time.perf_counter()
    try:
        checks = fn()
    except Exception as exc:  # a crash is a failed reproduction, not a harness error
        checks = [Check("run", "completes", f"{type(exc).__name__}: {exc}", FAIL)]
    return Reproduction(example_id, title, checks, time.perf_counter() - t0)


def reproduce_all(ids=None) -> list[Reproduction]:
    return [reproduce(i) for i in (ids or [k for k in REGISTRY if k != "ex7.3"])]
