"""Arithmetic in the finite fields GF(p^m).

Elements are stored as integers ``c0 + c1*p + ... + c_{m-1}*p^(m-1)`` where
``(c0, ..., c_{m-1})`` is the coefficient vector in the polynomial basis
``1, a, a^2, ...`` and ``a`` is the residue class of the modulus root.  The
reference arithmetic works on coefficient vectors; log/antilog and full
operation tables are derived from it once and used on the hot paths.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "GF",
    "FieldElement",
    "FieldError",
    "make_field",
    "roots_of_unity",
    "nth_roots",
    "subfield_embedding",
]

# Moduli for (p, m) pairs that carry a fixed choice; constant term first.
FIXED_MODULI = {
    (2, 4): (1, 1, 0, 0, 1),  # a^4 + a + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # a^5 + a^2 + 1
}

_TABLE_LIMIT = 1024


class FieldError(ValueError):
    """Invalid field construction or arithmetic (including division by zero)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_divmod_zero(num: list[int], den: list[int], p: int) -> bool:
    """True iff ``den`` divides ``num`` over GF(p). Both monic-free lists, constant first."""
    num = list(num)
    inv_lead = pow(den[-1], p - 2, p)
    dd = len(den) - 1
    for shift in range(len(num) - 1 - dd, -1, -1):
        c = num[shift + dd] * inv_lead % p
        if c:
            for i, dc in enumerate(den):
                num[shift + i] = (num[shift + i] - c * dc) % p
    return not any(num[:dd])


def is_irreducible(modulus, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= m // 2."""
    mod = [int(c) % p for c in modulus]
    m = len(mod) - 1
    if m < 1 or mod[-1] == 0:
        return False
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_divmod_zero(mod, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Fixed modulus where one is set, else the lexicographically least irreducible."""
    if m == 1:
        return (0, 1)
    if (p, m) in FIXED_MODULI:
        return FIXED_MODULI[(p, m)]
    for low in itertools.product(range(p), repeat=m):
        cand = tuple(low) + (1,)
        if low[0] != 0 and is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


class GF:
    """The field GF(p^m) with a fixed monic irreducible modulus.

    Parameters
    ----------
    p : int
        Prime characteristic.
    m : int
        Extension degree, at least 1.
    modulus : sequence of int, optional
        Coefficients of the modulus, constant term first, length ``m + 1``.
    """

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be >= 1")
        if p**m > 2**16:
            raise FieldError("fields with more than 2^16 elements are not supported")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if m > 1 and not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._build_tables()

    # -- reference polynomial-basis path ---------------------------------
    def to_coeffs(self, x: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            out.append(x % p)
            x //= p
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        x = 0
        for c in reversed(list(coeffs)):
            x = x * self.p + int(c) % self.p
        return x

    def poly_mul(self, x: int, y: int) -> int:
        """Schoolbook product followed by reduction; independent of the tables."""
        p, m = self.p, self.m
        a, b = self.to_coeffs(x), self.to_coeffs(y)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self.modulus
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d]
            if c:
                for i in range(m + 1):
                    prod[d - m + i] = (prod[d - m + i] - c * mod[i]) % p
        return self.from_coeffs(prod[:m])

    def poly_add(self, x: int, y: int) -> int:
        a, b = self.to_coeffs(x), self.to_coeffs(y)
        return self.from_coeffs((u + v) % self.p for u, v in zip(a, b))

    def _build_tables(self):
        q, p = self.q, self.p
        order = q - 1
        factors = _prime_factors(order) if order > 1 else []
        gen = None
        for g in range(1, q):
            if q == 2 or all(self._poly_pow(g, order // f) != 1 for f in factors):
                gen = g
                break
        exp = np.zeros(2 * order + 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self.poly_mul(x, gen)
        exp[order : 2 * order] = exp[:order]
        exp[2 * order] = exp[0]
        self.generator = gen
        self.exp = exp
        self.log = log
        digits = np.array([self.to_coeffs(v) for v in range(q)], dtype=np.int64).reshape(q, self.m)
        self._digits = digits
        self._pow_p = p ** np.arange(self.m, dtype=np.int64)
        self.neg_table = ((-digits) % p) @ self._pow_p
        inv = np.zeros(q, dtype=np.int64)
        nz = np.arange(1, q)
        inv[nz] = exp[(order - log[nz]) % order]
        self.inv_table = inv
        if q <= _TABLE_LIMIT:
            a = np.arange(q)
            self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ self._pow_p
            la = log[a]
            mul = exp[(la[:, None] + la[None, :]) % order] if order else np.zeros((q, q), np.int64)
            mul[0, :] = 0
            mul[:, 0] = 0
            self.mul_table = mul
        else:
            self.add_table = None
            self.mul_table = None
        canon = sorted(range(q), key=self.to_coeffs)
        self.canonical = canon
        rank = np.empty(q, dtype=np.int64)
        rank[canon] = np.arange(q)
        self.rank = rank

    def _poly_pow(self, x: int, e: int) -> int:
        result, base = 1, x
        while e:
            if e & 1:
                result = self.poly_mul(result, base)
            base = self.poly_mul(base, base)
            e >>= 1
        return result

    # -- scalar fast path on integer codes -------------------------------
    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if self.m == 1:
            return (x + y) % self.p
        if self.add_table is not None:
            return int(self.add_table[x, y])
        return self.poly_add(x, y)

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[self.log[x] + self.log[y]])

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_table[x])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[x]) * e) % (self.q - 1)])

    # -- vectorised helpers on integer arrays ----------------------------
    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        if self.add_table is not None:
            return self.add_table[a, b]
        da = self._digits[a]
        db = self._digits[b]
        return ((da + db) % self.p) @ self._pow_p

    def vneg(self, a):
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.mul_table is not None:
            return self.mul_table[a, b]
        a, b = np.broadcast_arrays(a, b)
        out = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    # -- literals --------------------------------------------------------
    def parse(self, text) -> int:
        """Parse a field literal: an integer, or a polynomial in ``a``."""
        if isinstance(text, (int, np.integer)):
            return self.from_int(int(text))
        s = str(text).replace(" ", "")
        if not s:
            raise FieldError("empty field literal")
        if re.fullmatch(r"-?\d+", s):
            return self.from_int(int(s))
        total = 0
        for sign, term in re.findall(r"([+-]?)([^+-]+)", s):
            mt = re.fullmatch(r"(?:(\d+)\*?)?(a(?:\^(\d+))?)?", term)
            if mt is None or (mt.group(1) is None and mt.group(2) is None):
                raise FieldError(f"bad field literal {text!r}")
            coef = self.from_int(int(mt.group(1))) if mt.group(1) else 1
            if mt.group(2):
                if self.m == 1:
                    raise FieldError(f"literal {text!r} uses 'a' in a prime field")
                e = int(mt.group(3)) if mt.group(3) else 1
                val = self.mul(coef, self._a_power(e))
            else:
                val = coef
            total = self.sub(total, val) if sign == "-" else self.add(total, val)
        return total

    def _a_power(self, e: int) -> int:
        a = self.from_coeffs([0, 1] + [0] * (self.m - 2)) if self.m > 1 else 0
        return self._poly_pow(a, e)

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def format(self, x: int) -> str:
        """Canonical literal of an element (descending powers of ``a``)."""
        x = int(x)
        if self.m == 1:
            return str(x)
        coeffs = self.to_coeffs(x)
        terms = []
        for d in range(self.m - 1, -1, -1):
            c = coeffs[d]
            if not c:
                continue
            mono = "" if d == 0 else ("a" if d == 1 else f"a^{d}")
            if d == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return "+".join(terms) if terms else "0"

    # -- conveniences ----------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self.check_same(value.field)
            return value
        if isinstance(value, str):
            return FieldElement(self, self.parse(value))
        return FieldElement(self, self.from_int(int(value)))

    def element(self, code: int) -> "FieldElement":
        if not 0 <= int(code) < self.q:
            raise FieldError(f"element code {code} out of range")
        return FieldElement(self, int(code))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in self.canonical]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @cached_property
    def gen(self) -> "FieldElement":
        """The residue class ``a`` of the modulus root (``1``'s successor for prime fields)."""
        return FieldElement(self, self._a_power(1) if self.m > 1 else self.generator)

    def key(self):
        return (self.p, self.m, self.modulus)

    def check_same(self, other: "GF"):
        if other is not self and other.key() != self.key():
            raise FieldError("field mismatch")

    def __eq__(self, other):
        return isinstance(other, GF) and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={self.format_modulus()})"

    def format_modulus(self) -> str:
        terms = []
        for d in range(self.m, -1, -1):
            c = self.modulus[d]
            if not c:
                continue
            mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
            terms.append(str(c) if d == 0 else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(terms)


@dataclass(frozen=True, eq=False)
class FieldElement:
    """An element of a :class:`GF`, supporting the usual operators."""

    field: GF
    value: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            self.field.check_same(other.field)
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, int(e)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key(), self.value))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def sort_key(self) -> int:
        return int(self.field.rank[self.value])

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.value)

    def __repr__(self):
        return self.field.format(self.value)

    __str__ = __repr__


def make_field(p: int, m: int = 1, modulus=None) -> GF:
    """Build GF(p^m); ``modulus`` may be a coefficient list or a polynomial string."""
    if isinstance(modulus, str):
        modulus = _parse_modulus(modulus, p, m)
    return GF(p, m, modulus)


def _parse_modulus(text: str, p: int, m: int) -> tuple[int, ...]:
    coeffs = [0] * (m + 1)
    s = text.replace(" ", "").replace("x", "a")
    for sign, term in re.findall(r"([+-]?)([^+-]+)", s):
        mt = re.fullmatch(r"(?:(\d+)\*?)?(a(?:\^(\d+))?)?", term)
        if mt is None:
            raise FieldError(f"bad modulus {text!r}")
        c = int(mt.group(1)) if mt.group(1) else 1
        d = (int(mt.group(3)) if mt.group(3) else 1) if mt.group(2) else 0
        if d > m:
            raise FieldError(f"modulus {text!r} has degree above {m}")
        coeffs[d] = (coeffs[d] + (-c if sign == "-" else c)) % p
    return tuple(coeffs)


def _unwrap(field: GF, x) -> int:
    if isinstance(x, FieldElement):
        field.check_same(x.field)
        return x.value
    return int(x)


def roots_of_unity(field: GF, n: int) -> list[FieldElement]:
    """All ``z`` with ``z^n = 1``, in canonical order; requires ``n | q - 1``."""
    if n < 1 or (field.q - 1) % n:
        raise FieldError(f"{n} does not divide q - 1 = {field.q - 1}")
    step = (field.q - 1) // n
    vals = {int(field.exp[step * i]) for i in range(n)}
    return sorted((FieldElement(field, v) for v in vals), key=FieldElement.sort_key)


def nth_root_codes(field: GF, a: int, n: int) -> list[int]:
    """Integer-code version of :func:`nth_roots`."""
    if a == 0:
        return [0]
    order = field.q - 1
    if order % n == 0:
        la = int(field.log[a])
        if la % n:
            return []
        step = order // n
        vals = {int(field.exp[(la // n + j * step) % order]) for j in range(n)}
    else:
        vals = {z for z in range(1, field.q) if field.pow(z, n) == a}
    return sorted(vals, key=lambda v: field.rank[v])


def nth_roots(a: FieldElement, n: int) -> list[FieldElement]:
    """All ``z`` with ``z^n = a`` in canonical order (possibly empty)."""
    field = a.field
    return [FieldElement(field, v) for v in nth_root_codes(field, a.value, n)]


def subfield_embedding(K: GF, L: GF) -> np.ndarray:
    """Codes in ``L`` of the elements of ``K``, indexed by their ``K`` codes.

    ``a`` is sent to the canonically least root of K's modulus in ``L``.
    """
    if K.p != L.p or L.m % K.m:
        raise FieldError(f"{K!r} is not a subfield of {L!r}")
    gamma = None
    for c in L.canonical:
        acc = 0
        for coef in reversed(K.modulus):
            acc = L.add(L.mul(acc, c), L.from_int(coef))
        if acc == 0:
            gamma = c
            break
    if gamma is None:  # pragma: no cover - impossible when K.m | L.m
        raise FieldError("modulus has no root in the extension")
    powers = [L.pow(gamma, i) for i in range(K.m)]
    emb = np.zeros(K.q, dtype=np.int64)
    for code in range(K.q):
        acc = 0
        for coef, pw in zip(K.to_coeffs(code), powers):
            acc = L.add(acc, L.mul(L.from_int(coef), pw))
        emb[code] = acc
    return emb
