"""Codes on surfaces ``w^(r+1) = f(x, y, z)`` in P^3.

The evaluation points are the rational points with ``z != 0`` lying over
base points ``[x : y : 1]`` off the branch curve ``f = 0``; each such base
point has either ``r + 1`` points above it (the ``(r+1)``-th roots of
``f(x, y, 1)``) or none.  Functions are ``w^u`` times monomials of degree
``m - u`` for ``u = 0 .. r-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .curves import ProjPoint, homogeneous_degree, projective_points
from .engine import ConstructionError, HelperPartition, LinearCode
from .exprs import RatExpr
from .gf import GF, nth_root_codes

__all__ = [
    "MonomialTier",
    "SurfaceFibers",
    "monomials",
    "surface_fibers",
    "build_surface_code",
    "cubic_distance_bound",
    "table1_sweep",
]


@dataclass(frozen=True)
class MonomialTier:
    m: int
    exponents: tuple

    def __len__(self):
        return len(self.exponents)

    def names(self) -> list[str]:
        out = []
        for e in self.exponents:
            parts = [f"{v}^{k}" if k > 1 else v for v, k in zip("xyz", e) if k]
            out.append("*".join(parts) or "1")
        return out


def monomials(m: int) -> MonomialTier:
    """Exponent triples ``(i, j, l)`` with ``i + j + l = m``, ``x^m`` first."""
    if m < 0:
        raise ValueError("tier degree must be nonnegative")
    exps = tuple((i, j, m - i - j) for i in range(m, -1, -1) for j in range(m - i, -1, -1))
    return MonomialTier(m, exps)


@dataclass
class SurfaceFibers:
    field: GF
    r: int
    base_points: list
    w_values: list
    counts: dict

    @property
    def n(self) -> int:
        return len(self.base_points) * (self.r + 1)


def surface_fibers(f: RatExpr, r: int) -> SurfaceFibers:
    """Usable fibers of ``[x : y : z : w] -> [x : y : z]`` on ``w^(r+1) = f``."""
    F = f.field
    if r < 1:
        raise ConstructionError("r must be at least 1")
    if (F.q - 1) % (r + 1):
        raise ConstructionError(f"r + 1 = {r + 1} must divide q - 1 = {F.q - 1}")
    plane = projective_points(F, 2)
    deg = homogeneous_degree(f, ("x", "y", "z"), plane)
    if deg is None or deg % (F.q - 1) != (r + 1) % (F.q - 1):
        raise ConstructionError(f"{f} is not a form of degree r + 1 = {r + 1}")
    fn = f.compiled()
    counts = {"plane_points": len(plane), "branch": 0, "at_z0": 0, "split": 0, "no_root": 0}
    base, wvals = [], []
    for Q in plane:
        x, y, z = Q.coords
        val = fn({"x": x, "y": y, "z": z})
        if val == 0:
            counts["branch"] += 1
            continue
        if z == 0:
            counts["at_z0"] += 1
            continue
        roots = nth_root_codes(F, val, r + 1)
        if not roots:
            counts["no_root"] += 1
            continue
        if len(roots) != r + 1:
            raise ConstructionError(f"fiber over {Q!r} has {len(roots)} points, expected {r + 1}")
        counts["split"] += 1
        base.append(Q)
        wvals.append(roots)
    return SurfaceFibers(F, r, base, wvals, counts)


def cubic_distance_bound(n: int, m: int, q: int) -> int:
    """Lower bound ``n - (3m + 1) q - 1`` for cubic surfaces (may be negative)."""
    return n - (3 * m + 1) * q - 1


def build_surface_code(f: RatExpr, r: int, m: int) -> LinearCode:
    """Evaluation code of the tiered monomial spaces on ``w^(r+1) = f``.

    Rows are ``w^u x^i y^j`` for ``(i, j, l)`` in tier ``m - u``, evaluated at
    ``[x : y : 1 : w]``; rank deficiency is expected and kept in ``meta``.
    The designed distance is the cubic bound when ``r = 2`` and positive,
    otherwise the trivial bound 1.
    """
    if m < r - 1:
        raise ConstructionError(f"m = {m} leaves an empty tier; need m >= r - 1 = {r - 1}")
    fib = surface_fibers(f, r)
    F = fib.field
    if not fib.base_points:
        raise ConstructionError("the surface has no usable fibers")
    xs = np.array([Q.coords[0] for Q in fib.base_points for _ in range(r + 1)], dtype=np.int64)
    ys = np.array([Q.coords[1] for Q in fib.base_points for _ in range(r + 1)], dtype=np.int64)
    ws = np.array([w for ws_ in fib.w_values for w in ws_], dtype=np.int64)
    n = fib.n

    def vpow(v, e):
        out = np.ones_like(v)
        for _ in range(e):
            out = F.vmul(out, v)
        return out

    rows, row_names, tiers = [], [], []
    for u in range(r):
        tier = monomials(m - u)
        wu = vpow(ws, u)
        for (i, j, _l), nm in zip(tier.exponents, tier.names()):
            rows.append(F.vmul(wu, F.vmul(vpow(xs, i), vpow(ys, j))))
            row_names.append(nm if u == 0 else (f"w^{u}*{nm}" if u > 1 else f"w*{nm}"))
        tiers.append(len(tier))
    G = np.array(rows, dtype=np.int64)
    sets = [list(range(b * (r + 1), (b + 1) * (r + 1))) for b in range(len(fib.base_points))]
    mats = [np.array([[F.pow(int(w), u) for u in range(r)] for w in ws_], dtype=np.int64) for ws_ in fib.w_values]
    names = [repr(Q) for Q in fib.base_points]
    part = HelperPartition.from_local_matrices(F, sets, mats, names)
    bound = cubic_distance_bound(n, m, F.q) if r == 2 else None
    designed = bound if bound is not None and bound > 1 else 1
    labels = [f"[{F.format(Q.coords[0])} : {F.format(Q.coords[1])} : 1 : {F.format(w)}]"
              for Q, ws_ in zip(fib.base_points, fib.w_values) for w in ws_]
    meta = {
        "m": m,
        "counts": dict(fib.counts),
        "tier_sizes": tiers,
        "row_names": row_names,
        "cubic_bound": bound,
        "expected_raw_rows": sum(comb(m - u + 2, 2) for u in range(r)),
    }
    return LinearCode(F, G, [part], n - designed, "surface", labels, meta)


def table1_sweep(ms=(3, 4), low_weight: bool = False):
    """Build and analyze every built-in ``table1-row-*`` surface for each ``m``.

    Returns a list of ``(row_id, m, report, expected)`` tuples where
    ``expected`` is ``(n, k, d, sg)`` as listed.
    """
    from .analysis import report
    from .config import builtin_config, builtin_names

    out = []
    for name in builtin_names():
        if not name.startswith("table1-row-"):
            continue
        cfg = builtin_config(name)
        for m in ms:
            code = build_surface_code(cfg.expr("f"), cfg.int("r"), m)
            exp = cfg.expected(f"m{m}")
            policy = {"low_weight": exp[2]} if low_weight else {}
            out.append((name, m, report(code, **policy), exp))
    return out
