"""Rational points of plane curves, P^3 surfaces and Weierstrass curves.

Also holds the elliptic group law (general Weierstrass form, any
characteristic), subgroup and coset helpers, verification of explicit cover
maps, and evaluation of functions at the point at infinity through the
Laurent expansion in the local parameter ``z = -x/y``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exprs import POLE, RatExpr
from .gf import GF, FieldElement, nth_root_codes

__all__ = [
    "ProjPoint",
    "projective_points",
    "enumerate_plane_curve",
    "enumerate_surface",
    "WeierstrassCurve",
    "EcPoint",
    "INF",
    "subgroup_of_order",
    "subgroup_from_x",
    "cosets",
    "CoverVerdict",
    "verify_cover_map",
    "CurveFunction",
    "CurveError",
]


class CurveError(ValueError):
    pass


# -- projective points ---------------------------------------------------------


@dataclass(frozen=True, order=False)
class ProjPoint:
    """A point of P^k with coordinates normalised so the last nonzero one is 1."""

    field: GF = dc_field(compare=False, repr=False)
    coords: tuple[int, ...]

    @classmethod
    def normalized(cls, field: GF, coords: Sequence[int]) -> "ProjPoint":
        coords = tuple(int(c) for c in coords)
        for c in reversed(coords):
            if c:
                inv = field.inv(c)
                return cls(field, tuple(field.mul(v, inv) for v in coords))
        raise CurveError("all coordinates are zero")

    def sort_key(self):
        return tuple(int(self.field.rank[c]) for c in self.coords)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __getitem__(self, i):
        return FieldElement(self.field, self.coords[i])

    def __len__(self):
        return len(self.coords)

    def __repr__(self):
        return "[" + " : ".join(self.field.format(c) for c in self.coords) + "]"


def projective_points(field: GF, dim: int) -> list[ProjPoint]:
    """All points of P^dim(K) in canonical (lexicographic) order."""
    canon = field.canonical
    pts = []
    for last in range(dim + 1):
        for head in itertools.product(canon, repeat=last):
            pts.append(ProjPoint(field, tuple(head) + (1,) + (0,) * (dim - last)))
    pts.sort(key=ProjPoint.sort_key)
    return pts


def homogeneous_degree(expr: RatExpr, names: Sequence[str], samples: Iterable[ProjPoint]) -> int | None:
    """Degree d with ``expr(g*v) = g^d expr(v)`` on the samples, or None if none fits."""
    f = expr.field
    if f.q == 2:
        return 0
    g = f.generator
    order = f.q - 1
    d = None
    checks = []
    for pt in samples:
        v = dict(zip(names, pt.coords))
        sv = {k: f.mul(g, c) for k, c in v.items()}
        a, b = expr.eval_code(v), expr.eval_code(sv)
        if a is None or b is None:
            continue
        checks.append((a, b))
        if d is None and a != 0:
            if b == 0:
                return None
            d = int(f.log[f.div(b, a)]) % order
    if d is None:
        return 0
    gd = f.pow(g, d)
    for a, b in checks:
        if b != f.mul(gd, a):
            return None
    return d


def enumerate_plane_curve(eq: RatExpr, field: GF | None = None, names=("x", "y", "z")) -> list[ProjPoint]:
    """All points of P^2(K) on ``eq = 0``; ``eq`` must be homogeneous."""
    field = field or eq.field
    pts = projective_points(field, 2)
    if homogeneous_degree(eq, names, pts) is None:
        raise CurveError(f"equation {eq} is not homogeneous")
    out = []
    for pt in pts:
        if eq.eval_code(dict(zip(names, pt.coords))) == 0:
            out.append(pt)
    return out


def enumerate_surface(f: RatExpr, r: int, field: GF | None = None) -> list[ProjPoint]:
    """All K-points of the surface ``w^(r+1) = f(x, y, z)`` in P^3."""
    field = field or f.field
    if (field.q - 1) % (r + 1):
        raise CurveError(f"r+1 = {r + 1} does not divide q-1 = {field.q - 1}")
    base = projective_points(field, 2)
    deg = homogeneous_degree(f, ("x", "y", "z"), base)
    if deg is None or (field.q > 2 and deg % (field.q - 1) != (r + 1) % (field.q - 1)):
        raise CurveError(f"{f} is not homogeneous of degree {r + 1}")
    out = set()
    for pt in base:
        val = f.eval_code(dict(zip("xyz", pt.coords)))
        if val is None:
            continue
        for w in nth_root_codes(field, val, r + 1):
            out.add(ProjPoint.normalized(field, pt.coords + (w,)))
    return sorted(out, key=ProjPoint.sort_key)


# -- elliptic curves -----------------------------------------------------------------


class EcPoint(NamedTuple):
    """Affine point ``(x, y)`` as integer codes; ``INF`` is the identity."""

    x: int | None
    y: int | None

    @property
    def is_inf(self) -> bool:
        return self.x is None


INF = EcPoint(None, None)


class WeierstrassCurve:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` over a finite field.

    Coefficients may be field elements, integer codes' literals (strings) or
    plain integers (mapped into the prime field).
    """

    def __init__(self, field: GF, a1=0, a2=0, a3=0, a4=0, a6=0, names=("x", "y")):
        self.field = field
        co = []
        for c in (a1, a2, a3, a4, a6):
            if isinstance(c, FieldElement):
                field.check_same(c.field)
                co.append(c.value)
            elif isinstance(c, str):
                co.append(field.parse(c))
            else:
                co.append(field.from_int(int(c)))
        self.a1, self.a2, self.a3, self.a4, self.a6 = co
        self.names = tuple(names)
        if self.discriminant() == 0:
            raise CurveError("singular Weierstrass equation (zero discriminant)")
        self._points = None

    def coefficients(self) -> tuple[int, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def discriminant(self) -> int:
        f = self.field
        a1, a2, a3, a4, a6 = self.coefficients()
        n = f.from_int
        mul, add, sub = f.mul, f.add, f.sub
        b2 = add(mul(a1, a1), mul(n(4), a2))
        b4 = add(mul(a1, a3), mul(n(2), a4))
        b6 = add(mul(a3, a3), mul(n(4), a6))
        b8 = sub(
            add(add(mul(mul(a1, a1), a6), mul(mul(n(4), a2), a6)), mul(mul(a2, a3), a3)),
            add(mul(mul(a1, a3), a4), mul(a4, a4)),
        )
        t1 = mul(mul(b2, b2), b8)
        t2 = mul(n(8), mul(mul(b4, b4), b4))
        t3 = mul(n(27), mul(b6, b6))
        t4 = mul(n(9), mul(mul(b2, b4), b6))
        return sub(add(f.neg(t1), t4), add(t2, t3))

    def lhs_minus_rhs(self, x: int, y: int) -> int:
        f = self.field
        mul, add = f.mul, f.add
        lhs = add(add(mul(y, y), mul(self.a1, mul(x, y))), mul(self.a3, y))
        x2 = mul(x, x)
        rhs = add(add(add(mul(x2, x), mul(self.a2, x2)), mul(self.a4, x)), self.a6)
        return f.sub(lhs, rhs)

    def contains(self, P: EcPoint) -> bool:
        return P.is_inf or self.lhs_minus_rhs(P.x, P.y) == 0

    def points_with_x(self, x: int) -> list[EcPoint]:
        f = self.field
        ys = np.arange(f.q)
        lhs = f.vadd(f.vadd(f.vmul(ys, ys), f.vmul(f.mul(self.a1, x), ys)), f.vmul(self.a3, ys))
        x2 = f.mul(x, x)
        rhs = f.add(f.add(f.add(f.mul(x2, x), f.mul(self.a2, x2)), f.mul(self.a4, x)), self.a6)
        sols = np.nonzero(lhs == rhs)[0]
        return sorted((EcPoint(x, int(y)) for y in sols), key=self.sort_key)

    def points(self) -> list[EcPoint]:
        """All K-rational points, identity first, then canonical order."""
        if self._points is None:
            pts = [INF]
            for x in self.field.canonical:
                pts.extend(self.points_with_x(x))
            self._points = pts
        return list(self._points)

    def order(self) -> int:
        return len(self.points())

    def sort_key(self, P: EcPoint):
        if P.is_inf:
            return (-1, -1)
        r = self.field.rank
        return (int(r[P.x]), int(r[P.y]))

    # -- group law -------------------------------------------------------------
    def neg(self, P: EcPoint) -> EcPoint:
        if P.is_inf:
            return P
        f = self.field
        return EcPoint(P.x, f.sub(f.neg(P.y), f.add(f.mul(self.a1, P.x), self.a3)))

    def add(self, P: EcPoint, Q: EcPoint) -> EcPoint:
        if P.is_inf:
            return Q
        if Q.is_inf:
            return P
        f = self.field
        mul, add, sub, n = f.mul, f.add, f.sub, f.from_int
        a1, a2, a3, a4, a6 = self.coefficients()
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2 and add(add(y1, y2), add(mul(a1, x2), a3)) == 0:
            return INF
        if x1 != x2:
            dx = sub(x2, x1)
            lam = f.div(sub(y2, y1), dx)
            nu = f.div(sub(mul(y1, x2), mul(y2, x1)), dx)
        else:
            den = add(add(mul(n(2), y1), mul(a1, x1)), a3)
            x1sq = mul(x1, x1)
            lam = f.div(sub(add(add(mul(n(3), x1sq), mul(mul(n(2), a2), x1)), a4), mul(a1, y1)), den)
            nu = f.div(
                sub(add(add(f.neg(mul(x1sq, x1)), mul(a4, x1)), mul(n(2), a6)), mul(a3, y1)),
                den,
            )
        x3 = sub(sub(sub(add(mul(lam, lam), mul(a1, lam)), a2), x1), x2)
        y3 = sub(sub(f.neg(mul(add(lam, a1), x3)), nu), a3)
        return EcPoint(x3, y3)

    def sub(self, P: EcPoint, Q: EcPoint) -> EcPoint:
        return self.add(P, self.neg(Q))

    def mul(self, k: int, P: EcPoint) -> EcPoint:
        if k < 0:
            return self.mul(-k, self.neg(P))
        R, A = INF, P
        while k:
            if k & 1:
                R = self.add(R, A)
            A = self.add(A, A)
            k >>= 1
        return R

    def point_order(self, P: EcPoint) -> int:
        n, R = 1, P
        while not R.is_inf:
            R = self.add(R, P)
            n += 1
        return n

    def closure(self, gens: Iterable[EcPoint]) -> list[EcPoint]:
        group = {INF}
        frontier = list(gens)
        while frontier:
            P = frontier.pop()
            if P in group:
                continue
            new = {self.add(P, Q) for Q in group} | {P}
            group |= {P}
            frontier.extend(x for x in new if x not in group)
        return sorted(group, key=self.sort_key)

    def point(self, x, y) -> EcPoint:
        f = self.field
        P = EcPoint(f.parse(x) if isinstance(x, str) else int(x), f.parse(y) if isinstance(y, str) else int(y))
        if not self.contains(P):
            raise CurveError(f"{self.format_point(P)} is not on the curve")
        return P

    def format_point(self, P: EcPoint) -> str:
        if P.is_inf:
            return "inf"
        return f"({self.field.format(P.x)}, {self.field.format(P.y)})"

    def hasse_bounds(self) -> tuple[float, float]:
        q = self.field.q
        return (q + 1 - 2 * q**0.5, q + 1 + 2 * q**0.5)

    def __repr__(self):
        f = self.field
        return "WeierstrassCurve(" + ", ".join(
            f"{n}={f.format(c)}" for n, c in zip(("a1", "a2", "a3", "a4", "a6"), self.coefficients())
        ) + f", over {f!r})"

    # -- expansion at infinity -----------------------------------------------------
    def expansion_at_infinity(self, prec: int):
        """Laurent series of (x, y) in the local parameter ``z = -x/y`` at INF."""
        ops = LaurentOps(self.field, prec)
        f = self.field
        a1, a2, a3, a4, a6 = self.coefficients()
        deg = prec + 3
        # w = -1/y as a power series in z, fixed point of the formal-group recursion
        w = [0] * (deg + 4)
        w[3] = 1
        for _ in range(deg + 1):
            new = [0] * (deg + 4)
            new[3] = 1
            w2 = _poly_mul_trunc(f, w, w, deg + 4)
            w3 = _poly_mul_trunc(f, w2, w, deg + 4)
            for i in range(deg + 4):
                acc = new[i]
                if i >= 1:
                    acc = f.add(acc, f.mul(a1, w[i - 1]))
                    acc = f.add(acc, f.mul(a4, w2[i - 1]))
                if i >= 2:
                    acc = f.add(acc, f.mul(a2, w[i - 2]))
                acc = f.add(acc, f.mul(a3, w2[i]))
                acc = f.add(acc, f.mul(a6, w3[i]))
                new[i] = acc
            if new == w:
                break
            w = new
        W = Laurent(3, w[3 : 3 + prec + 3])
        z = Laurent(1, [1] + [0] * (prec + 2))
        x = ops.div(z, W)
        y = ops.neg(ops.div(ops.const(1), W))
        return ops, x, y


def _poly_mul_trunc(f: GF, a, b, n):
    out = [0] * n
    for i, ai in enumerate(a[:n]):
        if ai:
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] = f.add(out[i + j], f.mul(ai, bj))
    return out


# -- Laurent series -----------------------------------------------------------------


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Laurent:
    """``sum c[i] z^(val+i) + O(z^(val+len(c)))``."""

    val: int
    coeffs: list

    def normalized(self) -> "Laurent":
        c = list(self.coeffs)
        v = self.val
        while c and c[0] == 0:
            c.pop(0)
            v += 1
        return Laurent(v, c)


class LaurentOps:
    def __init__(self, field: GF, prec: int):
        self.f = field
        self.prec = prec

    def const(self, c):
        return Laurent(0, [c] + [0] * (self.prec - 1)).normalized() if c else Laurent(self.prec, [])

    def add(self, a: Laurent, b: Laurent) -> Laurent:
        f = self.f
        v = min(a.val, b.val)
        top = min(a.val + len(a.coeffs), b.val + len(b.coeffs))
        out = []
        for e in range(v, top):
            ca = a.coeffs[e - a.val] if a.val <= e < a.val + len(a.coeffs) else 0
            cb = b.coeffs[e - b.val] if b.val <= e < b.val + len(b.coeffs) else 0
            out.append(f.add(ca, cb))
        if top < v:
            return Laurent(top, [])
        return Laurent(v, out).normalized()

    def neg(self, a: Laurent) -> Laurent:
        return Laurent(a.val, [self.f.neg(c) for c in a.coeffs])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a: Laurent, b: Laurent) -> Laurent:
        f = self.f
        a, b = a.normalized(), b.normalized()
        n = min(len(a.coeffs), len(b.coeffs))
        if n == 0:
            # one factor is only known to vanish to some order
            known = a if a.coeffs else b
            other = b if a.coeffs else a
            return Laurent(a.val + b.val, []) if known is other or not other.coeffs else Laurent(
                a.val + b.val, []
            )
        out = [0] * n
        for i in range(n):
            ai = a.coeffs[i]
            if ai:
                for j in range(n - i):
                    out[i + j] = f.add(out[i + j], f.mul(ai, b.coeffs[j]))
        return Laurent(a.val + b.val, out).normalized()

    def inverse(self, b: Laurent) -> Laurent:
        f = self.f
        b = b.normalized()
        if not b.coeffs:
            raise PrecisionError("division by a series of unknown leading term")
        n = len(b.coeffs)
        inv0 = f.inv(b.coeffs[0])
        out = [inv0] + [0] * (n - 1)
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                acc = f.add(acc, f.mul(b.coeffs[j], out[k - j]))
            out[k] = f.neg(f.mul(acc, inv0))
        return Laurent(-b.val, out)

    def div(self, a, b):
        return self.mul(a, self.inverse(b))

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inverse(a), -e)
        result = self.const(1)
        for _ in range(e):
            result = self.mul(result, a)
        return result


def value_at_infinity(curve: WeierstrassCurve, expr: RatExpr, names=None):
    """Value of a function on ``curve`` at INF: a code, or ``None`` for a pole."""
    names = names or curve.names
    prec = 12
    while prec <= 384:
        ops, x, y = curve.expansion_at_infinity(prec)
        try:
            s = expr.evaluate_with(ops, {names[0]: x, names[1]: y}).normalized()
        except PrecisionError:
            prec *= 2
            continue
        if s.val >= 1:
            return 0
        if not s.coeffs:
            prec *= 2
            continue
        if s.val == 0:
            return s.coeffs[0]
        return None
    return None


def coefficient_at_infinity(curve: WeierstrassCurve, expr: RatExpr, exponent: int, names=None) -> int:
    """Coefficient of ``z^exponent`` in the expansion of ``expr`` at INF (``z = -x/y``)."""
    names = names or curve.names
    prec = max(12, 2 * abs(exponent) + 8)
    while prec <= 512:
        ops, x, y = curve.expansion_at_infinity(prec)
        try:
            s = expr.evaluate_with(ops, {names[0]: x, names[1]: y}).normalized()
        except PrecisionError:
            prec *= 2
            continue
        if exponent < s.val:
            return 0
        if exponent - s.val < len(s.coeffs):
            return s.coeffs[exponent - s.val]
        prec *= 2
    raise PrecisionError(f"could not expand {expr} at infinity")


def pole_order_at_infinity(curve: WeierstrassCurve, expr: RatExpr, names=None) -> int:
    """Order of the pole of ``expr`` at INF (0 when regular there)."""
    names = names or curve.names
    prec = 12
    while prec <= 512:
        ops, x, y = curve.expansion_at_infinity(prec)
        try:
            s = expr.evaluate_with(ops, {names[0]: x, names[1]: y}).normalized()
        except PrecisionError:
            prec *= 2
            continue
        if s.coeffs or s.val >= 0:
            return max(0, -s.val)
        prec *= 2
    raise PrecisionError(f"could not expand {expr} at infinity")


def scaled_values_at_infinity(curve: WeierstrassCurve, exprs: Sequence[RatExpr], names=None) -> tuple[list[int], int]:
    """Values of ``pi^m * f`` at INF for the listed functions.

    ``m`` is the largest pole order among them and ``pi = -x/y``.  Scaling a
    whole column by one nonzero function keeps the evaluation code's
    distance bound, so INF can serve as an evaluation point.
    """
    m = max((pole_order_at_infinity(curve, e, names) for e in exprs), default=0)
    return [coefficient_at_infinity(curve, e, -m, names) for e in exprs], m


# -- subgroups and cosets ---------------------------------------------------------


def subgroup_of_order(E: WeierstrassCurve, pts: Sequence[EcPoint], n: int):
    """A subgroup of order ``n``, or None.

    Among all subgroups generated by one or two points whose order divides
    ``n``, returns the one whose sorted member list is least.
    """
    if n < 1 or len(pts) % n:
        return None
    if n == 1:
        return [INF]
    cands = [P for P in pts if not P.is_inf and E.mul(n, P).is_inf]
    found = {}
    for P in cands:
        H = E.closure([P])
        if len(H) == n:
            found[tuple(H)] = H
    if not found:
        for P, R in itertools.combinations(cands, 2):
            H = E.closure([P, R])
            if len(H) == n:
                found[tuple(H)] = H
    if not found:
        return None
    return min(found.values(), key=lambda H: [E.sort_key(P) for P in H])


def all_subgroups_of_order(E: WeierstrassCurve, pts: Sequence[EcPoint], n: int) -> list[list[EcPoint]]:
    cands = [P for P in pts if not P.is_inf and E.mul(n, P).is_inf]
    found = {}
    for P in cands:
        H = E.closure([P])
        if len(H) == n:
            found[tuple(H)] = H
    for P, R in itertools.combinations(cands, 2):
        H = E.closure([P, R])
        if len(H) == n:
            found[tuple(H)] = H
    return sorted(found.values(), key=lambda H: [E.sort_key(P) for P in H])


def subgroup_from_x(E: WeierstrassCurve, x_values: Iterable[int], n: int | None = None) -> list[EcPoint]:
    """The subgroup made of INF and every point whose x-coordinate is listed."""
    xs = set(int(v) for v in x_values)
    H = [INF] + [P for P in E.points() if not P.is_inf and P.x in xs]
    members = set(H)
    for P in H:
        for Q in H:
            if E.add(P, Q) not in members:
                raise CurveError("selected points are not closed under addition")
    if n is not None and len(H) != n:
        raise CurveError(f"selected subgroup has order {len(H)}, expected {n}")
    return sorted(H, key=E.sort_key)


def cosets(E: WeierstrassCurve, pts: Sequence[EcPoint], G: Sequence[EcPoint]) -> list[list[EcPoint]]:
    """Partition ``pts`` into cosets of ``G``; classes sorted by least member.

    The trivial class (``G`` itself) is the one containing INF.
    """
    Gset = set(G)
    for P in G:
        for Q in G:
            if E.add(P, Q) not in Gset:
                raise CurveError("G is not closed under addition")
    seen = set()
    out = []
    for P in sorted(pts, key=E.sort_key):
        if P in seen:
            continue
        cls = sorted({E.add(P, g) for g in G}, key=E.sort_key)
        seen.update(cls)
        out.append(cls)
    out.sort(key=lambda c: E.sort_key(c[0]))
    return out


# -- cover maps -------------------------------------------------------------------------


@dataclass
class CoverVerdict:
    ok: bool
    failures: list[str]
    checked_pairs: int = 0

    def __bool__(self):
        return self.ok


def apply_map(maps: Sequence[RatExpr], P: EcPoint, names=("x", "y")) -> EcPoint:
    """Image of a point under an explicit map; a pole in either coordinate gives INF."""
    if P.is_inf:
        return INF
    b = {names[0]: P.x, names[1]: P.y}
    u = maps[0].eval_code(b)
    v = maps[1].eval_code(b)
    if u is None or v is None:
        return INF
    return EcPoint(u, v)


def verify_cover_map(
    maps: Sequence[RatExpr],
    source: WeierstrassCurve,
    target: WeierstrassCurve,
    kernel: Sequence[EcPoint] | None = None,
    isogeny: bool = True,
    max_pairs: int = 10_000,
    seed: int = 0,
) -> CoverVerdict:
    """Check an explicit map between Weierstrass curves.

    Every image must lie on ``target``; if ``kernel`` is given exactly its
    points must map to INF; if ``isogeny`` the homomorphism property is
    tested on all pairs (or a seeded sample of ``max_pairs`` pairs).
    """
    pts = source.points()
    image = {P: apply_map(maps, P, source.names) for P in pts}
    failures = []
    for P, R in image.items():
        if not target.contains(R):
            failures.append(f"image of {source.format_point(P)} is not on the target curve")
    if kernel is not None:
        ker = set(kernel)
        to_inf = {P for P, R in image.items() if R.is_inf}
        if to_inf != ker:
            failures.append(
                f"points mapping to infinity {sorted(source.format_point(P) for P in to_inf)} "
                f"differ from the kernel {sorted(source.format_point(P) for P in ker)}"
            )
    checked = 0
    if isogeny and not failures:
        pairs = [(P, Q) for P in pts for Q in pts]
        if len(pairs) > max_pairs:
            pairs = random.Random(seed).sample(pairs, max_pairs)
        for P, Q in pairs:
            checked += 1
            if image[source.add(P, Q)] != target.add(image[P], image[Q]):
                failures.append(
                    f"not additive at {source.format_point(P)}, {source.format_point(Q)}"
                )
                break
    return CoverVerdict(not failures, failures, checked)


@dataclass(frozen=True)
class CurveFunction:
    """A function on a Weierstrass curve: ``expr`` evaluated at ``R + shift``.

    The shift lets bases of L(n*Q) be written as translates of the usual
    pole-at-infinity functions.  At INF the value is read off the Laurent
    expansion.
    """

    curve: WeierstrassCurve
    expr: RatExpr
    shift: EcPoint = INF

    def __call__(self, R: EcPoint) -> int | None:
        S = self.curve.add(R, self.shift) if not self.shift.is_inf else R
        if S.is_inf:
            return value_at_infinity(self.curve, self.expr)
        x, y = self.curve.names
        return self.expr.eval_code({x: S.x, y: S.y})

    def __str__(self):
        if self.shift.is_inf:
            return str(self.expr)
        return f"({self.expr})(P + {self.curve.format_point(self.shift)})"


def standard_basis_exprs(field: GF, count: int, names=("x", "y")) -> list[RatExpr]:
    """``1, x, y, x^2, xy, x^3, x^2 y, ...``: the first ``count`` functions by pole order at INF."""
    from .exprs import RatExpr as _R

    x = _R.var(field, names[0])
    y = _R.var(field, names[1])
    out = []
    order = 0
    while len(out) < count:
        # pole order 2a + 3b with b in {0, 1}
        if order == 0:
            out.append(_R.const(field, 1))
        elif order != 1:
            if order % 2 == 0:
                out.append(x ** (order // 2) if order > 2 else x)
            else:
                a = (order - 3) // 2
                out.append(y if a == 0 else (x if a == 1 else x**a) * y)
        order += 1
    return out
