"""Cover data for each family of the construction.

A :class:`CoverData` holds the helper sets (fibers of a degree ``r+1`` cover
``X -> Y``), the values of the functions ``e_1..e_r`` on every fiber, the
values of ``f_1..f_t`` at the fiber's base point, and the degree ``delta``
of a divisor bounding every product ``e_i f_j``.  The engine turns this into
a generator matrix; nothing here depends on how the code is assembled.

Values are integer field codes; ``-1`` marks a pole of an ``e`` function
(kept so that the recovery check can report it rather than crash).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .curves import (
    INF,
    CurveError,
    CurveFunction,
    EcPoint,
    ProjPoint,
    WeierstrassCurve,
    apply_map,
    cosets,
    enumerate_plane_curve,
    projective_points,
    scaled_values_at_infinity,
    standard_basis_exprs,
    value_at_infinity,
)
from .exprs import FieldOps, RatExpr
from .gf import GF, FieldElement, make_field, nth_root_codes, roots_of_unity, subfield_embedding

__all__ = [
    "CoverData",
    "CoverError",
    "elliptic_quotient_cover",
    "elliptic_variant_cover",
    "variant_divisor_degree",
    "variant_pole_setup",
    "kummer_cover",
    "hermitian_quotient_cover",
    "cubic_normalform_cover",
    "v4_quartic_cover",
    "v4_quartic_cover_char2",
    "v4_hyperelliptic_cover",
    "Conic",
]

POLE_CODE = -1


class CoverError(ValueError):
    pass


@dataclass
class CoverData:
    """Helper sets with their e- and f-values.

    Attributes
    ----------
    helper_sets : list of list
        Fibers, each an ordered list of ``r + 1`` source points.
    base_points : list
        The image point of each fiber.
    e_values : list of ndarray
        Per fiber, an ``(r + 1) x r`` matrix of codes (``-1`` = pole).
    f_values : list of ndarray
        Per fiber, the ``t`` values of the f-functions at the base point.
    delta : int
        Degree of the divisor bounding all ``e_i f_j``.
    """

    field: GF
    r: int
    helper_sets: list
    base_points: list
    e_values: list
    f_values: list
    delta: int
    family: str = ""
    point_labels: list = dc_field(default_factory=list)
    e_names: list = dc_field(default_factory=list)
    f_names: list = dc_field(default_factory=list)
    counts: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    @property
    def s(self) -> int:
        return len(self.helper_sets)

    @property
    def n(self) -> int:
        return sum(len(h) for h in self.helper_sets)

    @property
    def t(self) -> int:
        return len(self.f_values[0]) if self.f_values else 0

    @property
    def designed_distance(self) -> int:
        return self.n - self.delta

    def validate(self):
        r = self.r
        if r < 1:
            raise CoverError("locality must be at least 1")
        if not (len(self.helper_sets) == len(self.base_points) == len(self.e_values) == len(self.f_values)):
            raise CoverError("per-fiber lists have different lengths")
        t = self.t
        if t < 1:
            raise CoverError("at least one f-function is needed (t >= 1)")
        for i, fib in enumerate(self.helper_sets):
            if len(fib) != r + 1:
                raise CoverError(f"fiber {i} has {len(fib)} points, expected {r + 1}")
            if len(set(fib)) != len(fib):
                raise CoverError(f"fiber {i} has repeated points")
            ev = self.e_values[i]
            if ev.shape != (r + 1, r):
                raise CoverError(f"e-value matrix of fiber {i} has shape {ev.shape}")
            fv = self.f_values[i]
            if len(fv) != t:
                raise CoverError(f"fiber {i} has {len(fv)} f-values, expected {t}")
            if np.any(fv < 0):
                raise CoverError(f"an f-function has a pole at the base point of fiber {i}")
        if not self.point_labels:
            self.point_labels = [[str(P) for P in fib] for fib in self.helper_sets]

    def pole_fibers(self) -> list[int]:
        return [i for i, ev in enumerate(self.e_values) if np.any(ev < 0)]

    def fiber_name(self, i: int) -> str:
        return "{" + ", ".join(self.point_labels[i]) + "}"


def _code(v) -> int:
    return POLE_CODE if v is None else int(v)


def _sorted_fibers(fibers, key):
    fibers = [sorted(f, key=key) for f in fibers]
    fibers.sort(key=lambda f: key(f[0]))
    return fibers


# -- elliptic families -------------------------------------------------------------


def _elliptic_cover(E, G, maps, Eprime, t, e_funcs, f_funcs, delta, include_trivial, family):
    F = E.field
    r = len(G) - 1
    if r < 1:
        raise CoverError("the subgroup must have order at least 2")
    if t < 1:
        raise CoverError("t must be at least 1")
    if e_funcs is None:
        e_funcs = [CurveFunction(E, ex) for ex in standard_basis_exprs(F, r, E.names)]
    if f_funcs is None:
        f_funcs = [CurveFunction(Eprime, ex) for ex in standard_basis_exprs(F, t, Eprime.names)]
    if len(e_funcs) != r:
        raise CoverError(f"need exactly r = {r} e-functions, got {len(e_funcs)}")
    if len(f_funcs) != t:
        raise CoverError(f"need exactly t = {t} f-functions, got {len(f_funcs)}")
    classes = cosets(E, E.points(), G)
    fibers = [c for c in classes if include_trivial or INF not in c]
    base, ev, fv = [], [], []
    for fib in fibers:
        Q = apply_map(maps, fib[0], E.names)
        for P in fib[1:]:
            if apply_map(maps, P, E.names) != Q:
                raise CoverError(f"the cover map is not constant on the coset of {E.format_point(fib[0])}")
        base.append(Q)
        ev.append(np.array([[_code(e(P)) for e in e_funcs] for P in fib], dtype=np.int64))
        vals = [f(Q) for f in f_funcs]
        if any(v is None for v in vals):
            raise CoverError(
                f"an f-function has a pole at {Eprime.format_point(Q)}, the image of "
                f"{E.format_point(fib[0])}"
            )
        fv.append(np.array(vals, dtype=np.int64))
    return CoverData(
        field=F,
        r=r,
        helper_sets=fibers,
        base_points=base,
        e_values=ev,
        f_values=fv,
        delta=delta,
        family=family,
        point_labels=[[E.format_point(P) for P in fib] for fib in fibers],
        e_names=[str(e) for e in e_funcs],
        f_names=[str(f) for f in f_funcs],
        counts={"points": E.order(), "cosets": len(classes)},
    )


def elliptic_quotient_cover(
    E: WeierstrassCurve,
    G: Sequence[EcPoint],
    maps: Sequence[RatExpr],
    Eprime: WeierstrassCurve,
    t: int,
    e_funcs=None,
    f_funcs=None,
    delta: int | None = None,
    include_trivial: bool = False,
) -> CoverData:
    """Helper sets are the nontrivial cosets of ``G``; ``delta`` defaults to ``t(r+1) + r``.

    The ``maps`` are the isogeny ``E -> E'`` written as ``(u(x, y), v(x, y))``
    and should already have been checked with
    :func:`~geolrc.curves.verify_cover_map`.
    """
    r = len(G) - 1
    if delta is None:
        delta = t * (r + 1) + r
    return _elliptic_cover(E, G, maps, Eprime, t, e_funcs, f_funcs, delta, include_trivial, "elliptic-quotient")


def variant_divisor_degree(r: int, t: int) -> int:
    """``2 ceil(r/2) + 2 ceil(t/2) (r+1)``: degree of the divisor with conjugate poles."""
    if r < 1 or t < 1:
        raise ValueError("r and t must be positive")
    return 2 * math.ceil(r / 2) + 2 * math.ceil(t / 2) * (r + 1)


class EmbeddedOps(FieldOps):
    """Evaluate K-expressions inside an extension field L."""

    def __init__(self, L: GF, emb: np.ndarray):
        super().__init__(L)
        self.emb = emb

    def const(self, c):
        return int(self.emb[c])


def _base_change(E: WeierstrassCurve, L: GF, emb) -> WeierstrassCurve:
    co = [FieldElement(L, int(emb[c])) for c in E.coefficients()]
    return WeierstrassCurve(L, *co, names=E.names)


@dataclass
class VariantPoleData:
    L: GF
    emb: np.ndarray
    P: EcPoint
    Pprime: EcPoint
    e_exprs: list
    f_exprs: list
    e_line: tuple
    f_line: tuple


def conjugate_pole_exprs(curve: WeierstrassCurve, curve_L: WeierstrassCurve, emb, P: EcPoint, count: int):
    """Functions over K with poles only at ``P`` and its conjugate.

    With ``g = (Y - lam X - nu) / ((X - x(P))(X - x(P^sigma)))`` where the
    numerator is the line through ``-P`` and ``-P^sigma``, the list
    ``1, g, g^2, X g^2, g^3, X g^3, ...`` has its first ``k`` entries in
    ``L(ceil(k/2) (P + P^sigma))``.
    """
    K, L = curve.field, curve_L.field
    q = K.q
    inv_emb = {int(v): c for c, v in enumerate(emb)}
    Pc = EcPoint(L.pow(P.x, q), L.pow(P.y, q))
    if Pc == P or P.is_inf:
        raise CoverError("the pole point is rational over the base field")
    mP, mQ = curve_L.neg(P), curve_L.neg(Pc)
    if mP.x == mQ.x:
        raise CoverError("the pole point and its conjugate are negatives of each other")
    lam = L.div(L.sub(mQ.y, mP.y), L.sub(mQ.x, mP.x))
    nu = L.sub(mP.y, L.mul(lam, mP.x))
    s = L.add(P.x, Pc.x)
    pr = L.mul(P.x, Pc.x)
    try:
        lam_k, nu_k, s_k, p_k = (inv_emb[v] for v in (lam, nu, s, pr))
    except KeyError:
        raise CoverError("line coefficients are not rational; the pole point is not quadratic") from None
    X = RatExpr.var(K, curve.names[0])
    Y = RatExpr.var(K, curve.names[1])
    c = lambda v: RatExpr.const(K, FieldElement(K, v))
    g = (Y - c(lam_k) * X - c(nu_k)) / (X**2 - c(s_k) * X + c(p_k))
    out = [RatExpr.const(K, 1)]
    k = 1
    while len(out) < count:
        if k == 1:
            out.append(g)
        else:
            out.append(g**k)
            if len(out) < count:
                out.append(X * g**k)
        k += 1
    return out[:count], (lam_k, nu_k, s_k, p_k)


def variant_pole_setup(
    E: WeierstrassCurve,
    maps: Sequence[RatExpr],
    Eprime: WeierstrassCurve,
    pole_x: RatExpr,
    r: int,
    t: int,
    e_exprs: Sequence[RatExpr] | None = None,
) -> VariantPoleData:
    """Locate the quadratic pole point ``P`` and build both function bases.

    ``pole_x`` is an irreducible quadratic in ``x`` over K whose roots are
    the x-coordinates of ``P`` and its conjugate.  When ``e_exprs`` are
    given, ``P`` is the point over a root where one of them has a pole;
    otherwise the canonically least candidate is used.  The f-basis is
    always derived from ``P' = phi(P)``.
    """
    K = E.field
    L = make_field(K.p, 2 * K.m)
    emb = subfield_embedding(K, L)
    ops = EmbeddedOps(L, emb)
    E_L = _base_change(E, L, emb)
    Ep_L = _base_change(Eprime, L, emb)
    xname = E.names[0]
    roots = [b for b in L.canonical if pole_x.evaluate_with(ops, {xname: b}) == 0]
    if len(roots) != 2 or any(int(emb[c]) == b for b in roots for c in range(K.q)):
        raise CoverError(f"{pole_x} is not an irreducible quadratic over {K!r}")
    cands = [P for b in roots for P in E_L.points_with_x(b)]
    if not cands:
        raise CoverError("no point of E over the quadratic extension has that x-coordinate")
    if e_exprs:
        names = E.names
        chosen = [
            P for P in cands
            if any(ex.evaluate_with(ops, {names[0]: P.x, names[1]: P.y}) is None for ex in e_exprs)
        ]
        if not chosen:
            raise CoverError("none of the given e-functions has a pole above the roots of the pole polynomial")
        P = chosen[0]
    else:
        P = cands[0]
    b = {E.names[0]: P.x, E.names[1]: P.y}
    u = maps[0].evaluate_with(ops, b)
    v = maps[1].evaluate_with(ops, b)
    if u is None or v is None:
        raise CoverError("the pole point maps to infinity")
    Pp = EcPoint(u, v)
    if not Ep_L.contains(Pp):
        raise CoverError("the image of the pole point is not on the target curve")
    image_k = set(int(x) for x in emb)
    if Pp.x in image_k and Pp.y in image_k:
        raise CoverError("the image of the pole point is rational over the base field")
    e_list, e_line = conjugate_pole_exprs(E, E_L, emb, P, r)
    if e_exprs:
        e_list = list(e_exprs)
    f_list, f_line = conjugate_pole_exprs(Eprime, Ep_L, emb, Pp, t)
    return VariantPoleData(L, emb, P, Pp, e_list, f_list, e_line, f_line)


def elliptic_variant_cover(
    E: WeierstrassCurve,
    G: Sequence[EcPoint],
    maps: Sequence[RatExpr],
    Eprime: WeierstrassCurve,
    t: int,
    e_exprs: Sequence[RatExpr],
    f_exprs: Sequence[RatExpr],
    delta: int | None = None,
) -> CoverData:
    """All cosets of ``G`` (the trivial one too) with functions whose poles are not rational.

    ``delta`` defaults to :func:`variant_divisor_degree`.  Values at INF are
    taken from the Laurent expansion, so e.g. ``x`` as an e-function gives a
    pole on the trivial coset, which the recovery check then reports.
    """
    r = len(G) - 1
    if delta is None:
        delta = variant_divisor_degree(r, t)
    e_funcs = [CurveFunction(E, ex) for ex in e_exprs]
    f_funcs = [CurveFunction(Eprime, ex) for ex in f_exprs]
    return _elliptic_cover(E, G, maps, Eprime, t, e_funcs, f_funcs, delta, True, "elliptic-variant")


# -- cyclic triple covers -----------------------------------------------------------


def _base_values(Y: WeierstrassCurve, f_exprs: Sequence[RatExpr], Q: EcPoint, inf_values):
    if Q.is_inf:
        return np.array(inf_values, dtype=np.int64)
    vals = [ex.eval_code({Y.names[0]: Q.x, Y.names[1]: Q.y}) for ex in f_exprs]
    if any(v is None for v in vals):
        raise CoverError(f"an f-function has a pole at {Y.format_point(Q)}")
    return np.array(vals, dtype=np.int64)


def _fvalue_setup(Y, t, f_exprs):
    F = Y.field
    if t < 1:
        raise CoverError("t must be at least 1")
    if f_exprs is None:
        f_exprs = standard_basis_exprs(F, t, Y.names)
    if len(f_exprs) != t:
        raise CoverError(f"need exactly t = {t} f-functions")
    inf_vals, m = scaled_values_at_infinity(Y, f_exprs)
    return list(f_exprs), inf_vals, m


def kummer_cover(
    Y: WeierstrassCurve,
    h: RatExpr,
    r: int,
    t: int,
    h_degree: int,
    f_exprs: Sequence[RatExpr] | None = None,
    delta: int | None = None,
) -> CoverData:
    """Cover ``z^(r+1) = h`` of an elliptic curve ``Y``.

    A point ``Q`` of ``Y(K)`` (INF included, via the expansion there)
    splits when ``h(Q)`` is a nonzero ``(r+1)``-th power.  Fibers are the
    pairs ``(Q, z)``; ``e_u = z^(u-1)``.  The default ``delta`` is
    ``(r+1) t + deg h``.  At INF the f-values are scaled by a power of the
    local parameter (a column scaling that preserves the distance bound).
    """
    F = Y.field
    if (F.q - 1) % (r + 1):
        raise CoverError(f"r+1 = {r + 1} does not divide q-1 = {F.q - 1}")
    f_exprs, inf_vals, _ = _fvalue_setup(Y, t, f_exprs)
    if delta is None:
        delta = (r + 1) * t + h_degree
    counts = {"points": 0, "split": 0, "not_power": 0, "zero": 0, "pole": 0}
    fibers, base, ev, fv = [], [], [], []
    for Q in Y.points():
        counts["points"] += 1
        if Q.is_inf:
            hv = value_at_infinity(Y, h)
        else:
            hv = h.eval_code({Y.names[0]: Q.x, Y.names[1]: Q.y})
        if hv is None:
            counts["pole"] += 1
            continue
        if hv == 0:
            counts["zero"] += 1
            continue
        roots = nth_root_codes(F, hv, r + 1)
        if not roots:
            counts["not_power"] += 1
            continue
        counts["split"] += 1
        fib = [(Q, z) for z in roots]
        fibers.append(fib)
        base.append(Q)
        ev.append(np.array([[F.pow(z, u) for u in range(r)] for z in roots], dtype=np.int64))
        fv.append(_base_values(Y, f_exprs, Q, inf_vals))
    labels = [[f"({Y.format_point(Q)}, z={F.format(z)})" for Q, z in fib] for fib in fibers]
    return CoverData(
        field=F, r=r, helper_sets=fibers, base_points=base, e_values=ev, f_values=fv,
        delta=delta, family="kummer", point_labels=labels,
        e_names=["z^%d" % u if u > 1 else ("1" if u == 0 else "z") for u in range(r)],
        f_names=[str(f) for f in f_exprs], counts=counts,
    )


def cubic_normalform_cover(
    Y: WeierstrassCurve,
    f: RatExpr,
    t: int,
    f_degree: int,
    f_exprs: Sequence[RatExpr] | None = None,
    delta: int | None = None,
) -> CoverData:
    """Cyclic cubic cover given by a root ``w`` of ``z^3 - 3f z^2 - 3(f+1) z - 1``.

    ``Q`` splits when the cubic at ``f(Q)`` has three distinct roots in K,
    found by trying every element.  ``e = (1, w)`` and the default
    ``delta`` is ``3t + deg f``.
    """
    F = Y.field
    if F.p == 3:
        raise CoverError("the cubic normal form needs characteristic other than 3")
    f_exprs, inf_vals, _ = _fvalue_setup(Y, t, f_exprs)
    if delta is None:
        delta = 3 * t + f_degree
    three = F.from_int(3)
    zs = np.arange(F.q, dtype=np.int64)
    z2 = F.vmul(zs, zs)
    z3 = F.vmul(z2, zs)
    counts = {"points": 0, "split": 0, "not_split": 0, "ramified": 0, "pole": 0}
    fibers, base, ev, fv = [], [], [], []
    for Q in Y.points():
        counts["points"] += 1
        fq = value_at_infinity(Y, f) if Q.is_inf else f.eval_code({Y.names[0]: Q.x, Y.names[1]: Q.y})
        if fq is None:
            counts["pole"] += 1
            continue
        if F.add(F.add(F.mul(fq, fq), fq), 1) == 0:
            counts["ramified"] += 1
            continue
        c2 = F.neg(F.mul(three, fq))
        c1 = F.neg(F.mul(three, F.add(fq, 1)))
        vals = F.vadd(F.vadd(z3, F.vmul(c2, z2)), F.vadd(F.vmul(c1, zs), F.neg(1)))
        roots = sorted((int(z) for z in np.nonzero(vals == 0)[0]), key=lambda v: F.rank[v])
        if len(roots) != 3:
            counts["not_split"] += 1
            continue
        counts["split"] += 1
        fibers.append([(Q, w) for w in roots])
        base.append(Q)
        ev.append(np.array([[1, w] for w in roots], dtype=np.int64))
        fv.append(_base_values(Y, f_exprs, Q, inf_vals))
    labels = [[f"({Y.format_point(Q)}, w={F.format(w)})" for Q, w in fib] for fib in fibers]
    return CoverData(
        field=F, r=2, helper_sets=fibers, base_points=base, e_values=ev, f_values=fv,
        delta=delta, family="cubic-normalform", point_labels=labels,
        e_names=["1", "w"], f_names=[str(x) for x in f_exprs], counts=counts,
    )


def hermitian_f_exponents(t: int) -> list[tuple[int, int]]:
    """``(a, b)`` with ``f = z^a / w^b``: ``1, 1/w, 1/w^2, z/w^3, 1/w^3, z/w^4, ...``."""
    out = [(0, 0), (0, 1), (0, 2)]
    b = 3
    while len(out) < t:
        out.append((1, b))
        out.append((0, b))
        b += 1
    return out[:t]


def hermitian_quotient_cover(t: int) -> CoverData:
    """The order-3 quotient of the Hermitian curve ``y^4 + y = x^5`` over F16.

    The group acts by ``(x, y) -> (zeta x, zeta^2 y)``; its quotient is
    ``z^2 + z = w^5`` with ``w = y/x^2`` and ``z = y/x^5``.  The 63 affine
    points other than ``(0, 0)`` form 21 free orbits, ``e = (1, y)``, and the
    f-list follows :func:`hermitian_f_exponents` (so ``f_j`` pulls back to
    ``y^(a-b) x^(2b-5a)``, regular on all used points).  ``delta = 3t + 8``.
    """
    if not 3 <= t <= 18:
        raise CoverError("t must satisfy 3 <= t <= 18")
    F = make_field(2, 4)
    zeta = roots_of_unity(F, 3)
    zeta = next(z.value for z in zeta if z.value != 1)
    zeta2 = F.mul(zeta, zeta)
    curve = RatExpr.var(F, "y") ** 4 + RatExpr.var(F, "y") - RatExpr.var(F, "x") ** 5
    pts = [(x, y) for x in F.canonical for y in F.canonical if curve.eval_code({"x": x, "y": y}) == 0]
    key = lambda P: (int(F.rank[P[0]]), int(F.rank[P[1]]))
    seen, fibers = set(), []
    fixed = 0
    for P in sorted(pts, key=key):
        if P in seen:
            continue
        orb = {P, (F.mul(zeta, P[0]), F.mul(zeta2, P[1])), (F.mul(zeta2, P[0]), F.mul(zeta, P[1]))}
        seen |= orb
        if len(orb) == 1:
            fixed += 1
            continue
        fibers.append(sorted(orb, key=key))
    fibers.sort(key=lambda fb: key(fb[0]))
    exps = hermitian_f_exponents(t)
    base, ev, fv = [], [], []
    for fib in fibers:
        x, y = fib[0]
        if x == 0:
            base.append(INF)
        else:
            base.append((F.div(y, F.mul(x, x)), F.div(y, F.pow(x, 5))))
        ev.append(np.array([[1, y] for _, y in fib], dtype=np.int64))
        fv.append(np.array([F.mul(F.pow(y, a - b), F.pow(x, 2 * b - 5 * a)) for a, b in exps], dtype=np.int64))
    names = []
    for a, b in exps:
        if (a, b) == (0, 0):
            names.append("1")
        else:
            num = "z" if a else "1"
            names.append(f"{num}/w" if b == 1 else f"{num}/w^{b}")
    return CoverData(
        field=F, r=2, helper_sets=fibers, base_points=base, e_values=ev, f_values=fv,
        delta=3 * t + 8, family="hermitian-quotient",
        point_labels=[[f"({F.format(x)}, {F.format(y)})" for x, y in fib] for fib in fibers],
        e_names=["1", "y"], f_names=names,
        counts={"affine_points": len(pts), "fixed_affine": fixed, "free_points": 3 * len(fibers)},
    )


# -- conics and Klein four-group covers -------------------------------------------------

CONIC_MONOMIALS = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))


class Conic:
    """``sum c_m m(X, Y, Z)`` over the six quadratic monomials (order of ``CONIC_MONOMIALS``)."""

    def __init__(self, field: GF, coeffs: Sequence[int], names=("x", "y", "z")):
        self.field = field
        self.coeffs = tuple(int(c) for c in coeffs)
        self.names = tuple(names)

    def value(self, v: Sequence[int]) -> int:
        F = self.field
        acc = 0
        for c, (i, j, k) in zip(self.coeffs, CONIC_MONOMIALS):
            if c:
                acc = F.add(acc, F.mul(c, F.mul(F.mul(F.pow(v[0], i), F.pow(v[1], j)), F.pow(v[2], k))))
        return acc

    def points(self) -> list[ProjPoint]:
        return [P for P in projective_points(self.field, 2) if self.value(P.coords) == 0]

    def polar(self, P: Sequence[int]) -> tuple[int, int, int]:
        """Coefficients of the linear form ``X -> f(P+X) - f(P) - f(X)``: the tangent line at ``P``."""
        F = self.field
        out = []
        for i in range(3):
            e = [0, 0, 0]
            e[i] = 1
            s = [F.add(P[k], e[k]) for k in range(3)]
            out.append(F.sub(F.sub(self.value(s), self.value(P)), self.value(e)))
        return tuple(out)

    def expr(self) -> RatExpr:
        F = self.field
        X, Y, Z = (RatExpr.var(F, n) for n in self.names)
        terms = []
        for c, (i, j, k) in zip(self.coeffs, CONIC_MONOMIALS):
            mono = None
            for var, e in ((X, i), (Y, j), (Z, k)):
                if e:
                    f = var if e == 1 else var**e
                    mono = f if mono is None else mono * f
            terms.append((c, mono))
        return _sum_terms(F, terms)

    def __str__(self):
        return f"{self.expr()} = 0"


def _cross(F: GF, a, b):
    return (
        F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
        F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
        F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0])),
    )


def _sum_terms(F: GF, terms) -> RatExpr:
    """Sum of ``c * mono`` without the noise of zero or unit coefficients."""
    acc = None
    for c, mono in terms:
        if not c:
            continue
        term = mono if c == 1 else RatExpr.const(F, FieldElement(F, c)) * mono
        acc = term if acc is None else acc + term
    return acc if acc is not None else RatExpr.const(F, 0)


def _linear_expr(F: GF, coeffs, names) -> RatExpr:
    return _sum_terms(F, [(c, RatExpr.var(F, n)) for c, n in zip(coeffs, names)])


@dataclass
class ConicPoleBasis:
    """``f_j = (L1 / T)^(j-1)``: a basis of ``L((t-1) Q')`` on a conic."""

    conic: Conic
    Qprime: ProjPoint
    tangent: tuple
    other: tuple

    def values(self, Q: Sequence[int], t: int) -> list[int]:
        F = self.conic.field
        den = sum_lin(F, self.tangent, Q)
        if den == 0:
            raise CoverError(f"base point {Q} lies on the tangent line at Q'")
        g = F.div(sum_lin(F, self.other, Q), den)
        return [F.pow(g, j) for j in range(t)]

    def names(self, t: int) -> list[str]:
        F = self.conic.field
        ratio = f"({_linear_expr(F, self.other, self.conic.names)})/({_linear_expr(F, self.tangent, self.conic.names)})"
        return ["1"] + [ratio if j == 1 else f"({ratio})^{j}" for j in range(1, t)]


def sum_lin(F: GF, coeffs, v) -> int:
    acc = 0
    for c, x in zip(coeffs, v):
        acc = F.add(acc, F.mul(c, x))
    return acc


def conic_pole_basis(conic: Conic, Qprime: ProjPoint) -> ConicPoleBasis:
    T = conic.polar(Qprime.coords)
    if not any(T):
        raise CoverError("the conic is singular at Q'")
    others = [R for R in conic.points() if R != Qprime]
    if not others:
        raise CoverError("the conic has no second rational point")
    L1 = _cross(conic.field, Qprime.coords, others[0].coords)
    return ConicPoleBasis(conic, Qprime, T, L1)


def _fit_quadratic(F: GF, target: Callable, transform: Callable, samples) -> tuple[int, ...]:
    """Coefficients ``c`` with ``target(v) = sum c_m m(transform(v))`` on all samples."""
    from .linalg import solve

    rows, rhs = [], []
    for v in samples:
        w = transform(v)
        mons = []
        for i, j, k in CONIC_MONOMIALS:
            mons.append(F.mul(F.mul(F.pow(w[0], i), F.pow(w[1], j)), F.pow(w[2], k)))
        rows.append(mons)
        rhs.append(target(v))
    sol = solve(F, rows, rhs)
    if sol is None:
        raise CoverError("the curve is not of the required invariant form")
    return tuple(int(c) for c in sol)


def _v4_finish(F, fibers, qpoints, conic, t, family, e_rows, labels, counts, extra_image=()):
    image = set(qpoints) | set(extra_image)
    Yp = conic.points()
    outside = [Q for Q in Yp if Q not in image]
    if not outside:
        raise CoverError("every rational point of the quotient conic is in the image; no Q' available")
    Qp = outside[0]
    basis = conic_pole_basis(conic, Qp)
    fv = [np.array(basis.values(Q.coords, t), dtype=np.int64) for Q in qpoints]
    ev = [np.array(rows, dtype=np.int64) for rows in e_rows]
    counts.update({"quotient_points": len(Yp), "Q_prime": repr(Qp)})
    return CoverData(
        field=F, r=3, helper_sets=fibers, base_points=qpoints, e_values=ev, f_values=fv,
        delta=4 * t, family=family, point_labels=labels,
        f_names=basis.names(t), counts=counts,
    )


def v4_quartic_cover(quartic: RatExpr, t: int) -> CoverData:
    """Plane quartic ``f(x^2, y^2, z^2) = 0`` in odd characteristic.

    Fibers are the sign orbits of points with all coordinates nonzero,
    ``e = (1, x/z, y/z)``, the quotient is the conic ``f = 0`` and the
    f-functions are powers of ``L1/T`` with ``T`` tangent at a point ``Q'``
    outside the image.  ``delta = 4t``.
    """
    F = quartic.field
    if F.p == 2:
        raise CoverError("odd characteristic required; use the characteristic-2 variant")
    if t < 1:
        raise CoverError("t must be at least 1")
    import itertools

    samples = list(itertools.product(range(F.q), repeat=3))
    ev_q = lambda v: quartic.eval_code({"x": v[0], "y": v[1], "z": v[2]})
    sq = lambda v: tuple(F.mul(c, c) for c in v)
    coeffs = _fit_quadratic(F, ev_q, sq, samples[:: max(1, len(samples) // 400)])
    conic = Conic(F, coeffs)
    for v in samples:
        if conic.value(sq(v)) != ev_q(v):
            raise CoverError("the quartic is not of the form f(x^2, y^2, z^2)")
    pts = enumerate_plane_curve(quartic, F)
    usable = [P for P in pts if all(P.coords)]
    seen, fibers = set(), []
    neg = F.neg
    for P in usable:
        if P in seen:
            continue
        x, y, _ = P.coords
        orb = [ProjPoint(F, (a, b, 1)) for a in (x, neg(x)) for b in (y, neg(y))]
        seen |= set(orb)
        fibers.append(orb)
    fibers = _sorted_fibers(fibers, ProjPoint.sort_key)
    qpts = [ProjPoint.normalized(F, sq(fib[0].coords)) for fib in fibers]
    e_rows = [[[1, P.coords[0], P.coords[1]] for P in fib] for fib in fibers]
    labels = [[repr(P) for P in fib] for fib in fibers]
    image = {ProjPoint.normalized(F, sq(P.coords)) for P in pts}
    cd = _v4_finish(F, fibers, qpts, conic, t, "quartic-v4", e_rows, labels,
                    {"curve_points": len(pts), "usable": len(usable)}, image)
    cd.e_names = ["1", "x/z", "y/z"]
    return cd


def v4_quartic_cover_char2(quartic: RatExpr, t: int) -> CoverData:
    """Affine quartic ``f(x^2 + x, y^2 + y) = 0`` in characteristic 2.

    Fibers are the orbits under ``x -> x+1`` and ``y -> y+1`` of the affine
    points, ``e = (1, x, y)``, ``delta = 4t``.
    """
    F = quartic.field
    if F.p != 2:
        raise CoverError("characteristic 2 required")
    if t < 1:
        raise CoverError("t must be at least 1")
    import itertools

    samples = [(x, y, 1) for x, y in itertools.product(range(F.q), repeat=2)]
    ev_q = lambda v: quartic.eval_code({"x": v[0], "y": v[1]})
    phi = lambda v: (F.add(F.mul(v[0], v[0]), v[0]), F.add(F.mul(v[1], v[1]), v[1]), 1)
    coeffs = _fit_quadratic(F, ev_q, phi, samples)
    conic = Conic(F, coeffs)
    for v in samples:
        if conic.value(phi(v)) != ev_q(v):
            raise CoverError("the quartic is not of the form f(x^2 + x, y^2 + y)")
    affine = [ProjPoint(F, v) for v in samples if ev_q(v) == 0]
    seen, fibers = set(), []
    for P in affine:
        if P in seen:
            continue
        x, y, _ = P.coords
        orb = [ProjPoint(F, (a, b, 1)) for a in (x, x ^ 1) for b in (y, y ^ 1)]
        seen |= set(orb)
        fibers.append(orb)
    fibers = _sorted_fibers(fibers, ProjPoint.sort_key)
    qpts = [ProjPoint.normalized(F, phi(fib[0].coords)) for fib in fibers]
    e_rows = [[[1, P.coords[0], P.coords[1]] for P in fib] for fib in fibers]
    labels = [[f"({F.format(P.coords[0])}, {F.format(P.coords[1])})" for P in fib] for fib in fibers]
    # points at infinity [x:y:0] satisfy the top-degree part c_XX x^4 + c_XY x^2 y^2 + c_YY y^4
    cxx, cyy, cxy = coeffs[0], coeffs[1], coeffs[3]
    image = set()
    for P in projective_points(F, 1):
        x, y = P.coords
        x2, y2 = F.mul(x, x), F.mul(y, y)
        top = F.add(F.add(F.mul(cxx, F.mul(x2, x2)), F.mul(cxy, F.mul(x2, y2))), F.mul(cyy, F.mul(y2, y2)))
        if top == 0:
            image.add(ProjPoint.normalized(F, (x2, y2, 0)))
    cd = _v4_finish(F, fibers, qpts, conic, t, "quartic-v4-char2", e_rows, labels,
                    {"usable": len(affine)}, image)
    cd.e_names = ["1", "x", "y"]
    return cd


def v4_hyperelliptic_cover(F: GF, a, b, c, d, t: int) -> CoverData:
    """``y^2 = a x^8 + b x^6 + c x^4 + b d^2 x^2 + a d^4`` in odd characteristic.

    The group is generated by ``(x, y) -> (-x, y)`` and
    ``(x, y) -> (d/x, d^2 y / x^4)``; the quotient is the conic
    ``v^2 = a u^2 + b u w + (c - 2 a d^2) w^2`` via ``u = x^2 + d^2/x^2``,
    ``v = y/x^2``.  ``e = (1, x, x^2)``, ``delta = 4t``.
    """
    if F.p == 2:
        raise CoverError("odd characteristic required")
    a, b, c, d = (x.value if isinstance(x, FieldElement) else F.parse(x) if isinstance(x, str) else F.from_int(x)
                  for x in (a, b, c, d))
    if d == 0:
        raise CoverError("d must be nonzero")
    if t < 1:
        raise CoverError("t must be at least 1")
    mul, add, neg = F.mul, F.add, F.neg
    d2 = mul(d, d)

    def rhs(x):
        x2 = mul(x, x)
        x4 = mul(x2, x2)
        return add(add(add(mul(a, mul(x4, x4)), mul(b, mul(x4, x2))), add(mul(c, x4), mul(mul(b, d2), x2))),
                   mul(a, mul(d2, d2)))

    usable = []
    for x in F.canonical:
        if x == 0 or mul(x, x) in (d, neg(d)):
            continue
        val = rhs(x)
        for y in F.canonical:
            if mul(y, y) == val:
                usable.append((x, y))
    key = lambda P: (int(F.rank[P[0]]), int(F.rank[P[1]]))
    seen, fibers = set(), []
    for x, y in usable:
        if (x, y) in seen:
            continue
        x4 = F.pow(x, 4)
        y2 = F.div(mul(d2, y), x4)
        xi = F.div(d, x)
        orb = [(x, y), (neg(x), y), (xi, y2), (neg(xi), y2)]
        if len({P[0] for P in orb}) != 4:
            raise CoverError("orbit with repeated x-coordinates")
        seen |= set(orb)
        fibers.append(orb)
    fibers = _sorted_fibers(fibers, key)
    two = F.from_int(2)
    conic = Conic(F, (a, neg(1), F.sub(c, mul(two, mul(a, d2))), 0, b, 0), names=("u", "v", "w"))
    qpts = []
    for fib in fibers:
        x, y = fib[0]
        x2 = mul(x, x)
        s = add(x2, F.div(d2, x2))
        qpts.append(ProjPoint.normalized(F, (s, F.div(y, x2), 1)))
    # images of the excluded rational points; the conic's points at infinity
    # come from x = 0 and x = infinity
    also = {P for P in conic.points() if P.coords[2] == 0}
    for x in F.canonical:
        if x == 0:
            continue
        x2 = mul(x, x)
        for y in F.canonical:
            if mul(y, y) == rhs(x):
                also.add(ProjPoint.normalized(F, (add(x2, F.div(d2, x2)), F.div(y, x2), 1)))
    e_rows = [[[1, x, mul(x, x)] for x, _ in fib] for fib in fibers]
    labels = [[f"({F.format(x)}, {F.format(y)})" for x, y in fib] for fib in fibers]
    cd = _v4_finish(F, fibers, qpts, conic, t, "hyperelliptic-v4", e_rows, labels,
                    {"usable": len(usable)}, also)
    cd.e_names = ["1", "x", "x^2"]
    return cd
