"""Generator matrices, recovery checks and local repair.

Row ``(i, j)`` of the generator matrix evaluates ``e_i * (f_j o phi)`` at
every column point; a helper set is recoverable when every ``r x r`` minor
of its ``(r+1) x r`` matrix of local function values is invertible.  Repair
of one erased symbol is then a fixed linear combination of the other ``r``
symbols of its helper set, precomputed per coordinate.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .covers import POLE_CODE, CoverData
from .curves import INF, CurveFunction, EcPoint, WeierstrassCurve, apply_map, cosets, standard_basis_exprs
from .gf import GF, make_field
from .linalg import det, inverse, matmul, rank, row_space_basis, solve

__all__ = [
    "ConstructionError",
    "RecoveryError",
    "RecoveryCheck",
    "HelperPartition",
    "LinearCode",
    "check_recovery_matrix",
    "build_code",
    "build_availability_code",
    "local_recover",
    "recover_word",
    "recover_with_choice",
    "write_code_file",
    "read_code_file",
]


class ConstructionError(ValueError):
    """A construction that cannot yield a valid code; ``failures`` lists the culprits."""

    def __init__(self, message: str, failures: Sequence[str] = ()):
        super().__init__(message)
        self.failures = list(failures)


class RecoveryError(ValueError):
    pass


@dataclass(frozen=True)
class RecoveryCheck:
    ok: bool
    singular_rows: tuple = ()
    pole: bool = False

    def describe(self) -> str:
        if self.ok:
            return "pass"
        if self.pole:
            return "fail: a local function has a pole on this set"
        return "fail: singular minor(s) omitting row(s) " + ", ".join(str(j) for j in self.singular_rows)


def check_recovery_matrix(field: GF, M) -> RecoveryCheck:
    """Check that all ``r + 1`` maximal minors of an ``(r+1) x r`` matrix are nonzero.

    Entries equal to ``-1`` mark poles and make the check fail.
    """
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] + 1:
        raise ValueError(f"recovery matrix must have shape (r+1) x r, got {M.shape}")
    if np.any(M == POLE_CODE):
        return RecoveryCheck(False, (), True)
    bad = tuple(j for j in range(M.shape[0]) if det(field, np.delete(M, j, axis=0)) == 0)
    return RecoveryCheck(not bad, bad, False)


@dataclass
class HelperPartition:
    """Disjoint helper sets covering all columns, with repair coefficients.

    ``plans[c]`` is ``(others, lam)``: the erased symbol at column ``c`` is
    ``sum(lam[l] * word[others[l]])``.
    """

    r: int
    sets: list
    checks: list
    plans: dict
    names: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[tuple[int, RecoveryCheck]]:
        return [(i, c) for i, c in enumerate(self.checks) if not c.ok]

    def set_of(self) -> dict:
        return {c: i for i, s in enumerate(self.sets) for c in s}

    @classmethod
    def from_local_matrices(cls, field: GF, sets, matrices, names=None) -> "HelperPartition":
        r = len(sets[0]) - 1 if sets else 0
        checks, plans = [], {}
        for cols, M in zip(sets, matrices):
            M = np.asarray(M, dtype=np.int64)
            chk = check_recovery_matrix(field, M)
            checks.append(chk)
            if not chk.ok:
                continue
            for j, c in enumerate(cols):
                A = np.delete(M, j, axis=0)
                # c_S = M a, so a = A^{-1} c_{S-j} and c_j = M_j A^{-1} c_{S-j}
                lam = matmul(field, M[j][None, :], inverse(field, A))[0]
                plans[c] = (tuple(x for x in cols if x != c), lam)
        return cls(r, [list(s) for s in sets], checks, plans, list(names or []))

    @classmethod
    def from_generator(cls, field: GF, G: np.ndarray, sets, names=None) -> "HelperPartition":
        """Repair coefficients read off the generator matrix itself.

        Column ``c`` is recoverable from the rest of its set exactly when
        ``G[:, c]`` is a combination of those columns.
        """
        r = len(sets[0]) - 1 if sets else 0
        checks, plans = [], {}
        for cols in sets:
            bad = []
            for j, c in enumerate(cols):
                others = [x for x in cols if x != c]
                lam = solve(field, G[:, others], G[:, c])
                if lam is None:
                    bad.append(j)
                else:
                    plans[c] = (tuple(others), lam)
            checks.append(RecoveryCheck(not bad, tuple(bad), False))
        return cls(r, [list(s) for s in sets], checks, plans, list(names or []))


@dataclass
class LinearCode:
    """A linear code with one or two helper partitions.

    ``generator`` keeps one row per index of the construction even when the
    rows are dependent; ``k`` is its rank.
    """

    field: GF
    generator: np.ndarray
    partitions: list
    delta: int
    family: str = ""
    column_labels: list = dc_field(default_factory=list)
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.generator = np.asarray(self.generator, dtype=np.int64)
        self._basis = None
        n = self.n
        for part in self.partitions:
            cols = sorted(c for s in part.sets for c in s)
            if cols != list(range(n)):
                raise ConstructionError("helper sets must partition the columns")

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def raw_rows(self) -> int:
        return self.generator.shape[0]

    @property
    def basis(self) -> np.ndarray:
        if self._basis is None:
            self._basis = row_space_basis(self.field, self.generator)
        return self._basis

    @property
    def k(self) -> int:
        return self.basis.shape[0]

    @property
    def kernel_dim(self) -> int:
        return self.raw_rows - self.k

    @property
    def r(self) -> tuple[int, ...]:
        return tuple(p.r for p in self.partitions)

    @property
    def designed_distance(self) -> int:
        return self.n - self.delta

    @property
    def locality_ok(self) -> bool:
        return all(p.ok for p in self.partitions)

    def encode(self, message) -> np.ndarray:
        """Codeword ``message @ basis`` for a length-``k`` message."""
        m = np.asarray(message, dtype=np.int64)
        if m.shape[-1] != self.k:
            raise ValueError(f"message must have length k = {self.k}")
        return matmul(self.field, m, self.basis)

    def describe(self) -> str:
        rs = ",".join(str(r) for r in self.r)
        return f"({self.n}, {self.k}) code over {self.field!r}, r = {rs}, designed distance {self.designed_distance}"


def build_code(cover: CoverData, force: bool = False) -> LinearCode:
    """Generator matrix with entry ``e_i(P) f_j(Q(P))`` at row ``(i, j)``, column ``P``.

    Raises :class:`ConstructionError` when some helper set has a pole among
    its e-values (listing every failing set), or when the designed distance
    is not positive unless ``force`` is set.  Sets that merely fail the
    minor condition are recorded in the partition.
    """
    F = cover.field
    names = [cover.fiber_name(i) for i in range(cover.s)]
    sets, start = [], 0
    for fib in cover.helper_sets:
        sets.append(list(range(start, start + len(fib))))
        start += len(fib)
    part = HelperPartition.from_local_matrices(F, sets, cover.e_values, names)
    if cover.pole_fibers():
        fails = [f"{names[i]}: {c.describe()}" for i, c in part.failures()]
        raise ConstructionError(
            f"{len(fails)} helper set(s) fail the recovery condition; e-values have poles", fails
        )
    if cover.delta >= cover.n and not force:
        raise ConstructionError(
            f"designed distance n - delta = {cover.n - cover.delta} is not positive"
        )
    E_all = np.vstack(cover.e_values)
    F_all = np.vstack([np.tile(fv, (len(fib), 1)) for fv, fib in zip(cover.f_values, cover.helper_sets)])
    r, t = cover.r, cover.t
    G = F.vmul(E_all.T[:, None, :], F_all.T[None, :, :]).reshape(r * t, cover.n)
    labels = [lab for fib in cover.point_labels for lab in fib]
    meta = {
        "s": cover.s,
        "t": t,
        "counts": dict(cover.counts),
        "e_functions": list(cover.e_names),
        "f_functions": list(cover.f_names),
        "row_index": [(i + 1, j + 1) for i in range(r) for j in range(t)],
    }
    return LinearCode(F, G, [part], cover.delta, cover.family, labels, meta)


def _recover_one(code: LinearCode, word, c: int, part: HelperPartition) -> int:
    F = code.field
    plan = part.plans.get(c)
    if plan is None:
        raise RecoveryError(f"coordinate {c} lies in a helper set that fails the recovery check")
    others, lam = plan
    acc = 0
    for o, l in zip(others, lam):
        v = word[o]
        if v is None:
            raise RecoveryError(f"more than one erasure in the helper set of coordinate {c}")
        acc = F.add(acc, F.mul(int(l), int(v)))
    return acc


def _normalize_word(code: LinearCode, word) -> list:
    if len(word) != code.n:
        raise ValueError(f"word must have length n = {code.n}")
    out = []
    for v in word:
        if v is None or (isinstance(v, (int, np.integer)) and v < 0):
            out.append(None)
        else:
            out.append(int(v))
    return out


def local_recover(code: LinearCode, word, partition: int = 0) -> int:
    """Value of the single erased coordinate (``None`` or negative) of ``word``."""
    w = _normalize_word(code, word)
    erased = [i for i, v in enumerate(w) if v is None]
    if len(erased) != 1:
        raise RecoveryError(f"expected exactly one erasure, found {len(erased)}")
    return _recover_one(code, w, erased[0], code.partitions[partition])


def recover_word(code: LinearCode, word, partition: int | None = 0) -> list[int]:
    """Fill every erasure by local repair.

    With ``partition=None`` all partitions are used, repeatedly repairing any
    coordinate that is the only erasure in one of its helper sets.
    """
    w = _normalize_word(code, word)
    parts = code.partitions if partition is None else [code.partitions[partition]]
    lookups = [p.set_of() for p in parts]
    pending = [i for i, v in enumerate(w) if v is None]
    while pending:
        progress = False
        for c in list(pending):
            for part, look in zip(parts, lookups):
                members = part.sets[look[c]]
                if sum(1 for m in members if w[m] is None) == 1 and c in part.plans:
                    w[c] = _recover_one(code, w, c, part)
                    pending.remove(c)
                    progress = True
                    break
        if not progress:
            raise RecoveryError(
                f"erasure pattern not locally recoverable: coordinates {pending} remain"
            )
    return w


def recover_with_choice(code: LinearCode, word, erased: int, preferred: int = 0) -> int:
    """Repair coordinate ``erased`` through the preferred partition, else the other one."""
    w = _normalize_word(code, word)
    if w[erased] is not None:
        raise ValueError(f"coordinate {erased} is not erased")
    order = [preferred] + [i for i in range(len(code.partitions)) if i != preferred]
    errors = []
    for idx in order:
        part = code.partitions[idx]
        members = part.sets[part.set_of()[erased]]
        if any(w[m] is None for m in members if m != erased):
            errors.append(f"partition {idx + 1}: helper set also damaged")
            continue
        try:
            return _recover_one(code, w, erased, part)
        except RecoveryError as exc:
            errors.append(f"partition {idx + 1}: {exc}")
    raise RecoveryError("; ".join(errors))


# -- availability -------------------------------------------------------------------------


def _image(maps, E: WeierstrassCurve, pts):
    return {apply_map(maps, P, E.names) for P in pts}


def _least_outside(curve: WeierstrassCurve, image) -> EcPoint:
    for P in curve.points():
        if P not in image:
            return P
    raise ConstructionError("every rational point lies in the image; no pole point available")


def _shifted_basis(curve: WeierstrassCurve, count: int, at: EcPoint) -> list[CurveFunction]:
    """``1, x, y, x^2, ...`` translated so that the poles sit at ``at`` (a basis of ``L(count*at)``)."""
    shift = curve.neg(at)
    return [CurveFunction(curve, ex, shift) for ex in standard_basis_exprs(curve.field, count, curve.names)]


def build_availability_code(
    E: WeierstrassCurve,
    G1: Sequence[EcPoint],
    G2: Sequence[EcPoint],
    phi1: Sequence,
    phi2: Sequence,
    psi1: Sequence,
    E1: WeierstrassCurve,
    E2: WeierstrassCurve,
    Eprime: WeierstrassCurve,
    t: int,
    psi2: Sequence | None = None,
    Q1: EcPoint | None = None,
    Q2: EcPoint | None = None,
    Qprime: EcPoint | None = None,
) -> LinearCode:
    """Code on all of ``E(K)`` with helper sets from the cosets of ``G1`` and of ``G2``.

    Rows ``(h, i, j)`` evaluate ``e_{1,h}(phi1 P) e_{2,i}(phi2 P) f_j(phi P)``
    with ``phi = psi1 o phi1``; the three bases are the standard pole-at-INF
    bases translated to the least rational points ``Q1, Q2, Q'`` outside
    the respective images, unless those points are given.
    """
    F = E.field
    if t < 1:
        raise ConstructionError("t must be at least 1")
    if set(G1) == set(G2):
        raise ConstructionError("the two subgroups coincide")
    if set(G1) & set(G2) != {INF}:
        raise ConstructionError("the two subgroups must intersect only in the identity")
    r1, r2 = len(G1) - 1, len(G2) - 1
    pts = E.points()
    img1 = {P: apply_map(phi1, P, E.names) for P in pts}
    img2 = {P: apply_map(phi2, P, E.names) for P in pts}
    img = {P: apply_map(psi1, img1[P], E1.names) for P in pts}
    if psi2 is not None:
        for P in pts:
            if apply_map(psi2, img2[P], E2.names) != img[P]:
                raise ConstructionError(f"psi1 o phi1 and psi2 o phi2 differ at {E.format_point(P)}")
    Q1 = Q1 or _least_outside(E1, set(img1.values()))
    Q2 = Q2 or _least_outside(E2, set(img2.values()))
    Qprime = Qprime or _least_outside(Eprime, set(img.values()))
    for Q, im, nm in ((Q1, img1, "Q1"), (Q2, img2, "Q2"), (Qprime, img, "Q'")):
        if Q in set(im.values()):
            raise ConstructionError(f"{nm} lies in the image of E(K)")
    e1 = _shifted_basis(E1, r2, Q1)
    e2 = _shifted_basis(E2, r1, Q2)
    fs = _shifted_basis(Eprime, t, Qprime)
    n = len(pts)
    V1 = np.array([[e(img1[P]) for e in e1] for P in pts], dtype=np.int64)
    V2 = np.array([[e(img2[P]) for e in e2] for P in pts], dtype=np.int64)
    Vf = np.array([[f(img[P]) for f in fs] for P in pts], dtype=np.int64)
    rows = []
    index = []
    for h in range(r2):
        for i in range(r1):
            eh = F.vmul(V1[:, h], V2[:, i])
            for j in range(t):
                rows.append(F.vmul(eh, Vf[:, j]))
                index.append((h + 1, i + 1, j + 1))
    G = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    col = {P: c for c, P in enumerate(pts)}
    parts = []
    for grp, local in ((G1, V2), (G2, V1)):
        classes = cosets(E, pts, grp)
        sets = [[col[P] for P in cls] for cls in classes]
        mats = [local[s] for s in sets]
        names = ["{" + ", ".join(E.format_point(P) for P in cls) + "}" for cls in classes]
        parts.append(HelperPartition.from_local_matrices(F, sets, mats, names))
    delta = (r1 + 1) * (r2 + 1) * t + r2 * (r1 + 1) + r1 * (r2 + 1)
    meta = {
        "t": t,
        "Q1": E1.format_point(Q1),
        "Q2": E2.format_point(Q2),
        "Q_prime": Eprime.format_point(Qprime),
        "row_index": index,
    }
    return LinearCode(F, G, parts, delta, "availability", [E.format_point(P) for P in pts], meta)


# -- code files -----------------------------------------------------------------------------


def write_code_file(code: LinearCode, path_or_buf) -> None:
    """Write the line-oriented code file.

    Header ``q p m n k r delta partitions`` (``r`` comma-joined for several
    partitions), a ``modulus`` line, an optional ``family`` line, one line
    per generator row, and one ``partition`` line per helper partition with
    ``|``-separated groups of 0-based column indices.
    """
    F = code.field
    out = io.StringIO()
    rs = ",".join(str(r) for r in code.r)
    out.write(f"{F.q} {F.p} {F.m} {code.n} {code.k} {rs} {code.delta} {len(code.partitions)}\n")
    out.write("modulus " + " ".join(str(c) for c in F.modulus) + "\n")
    if code.family:
        out.write(f"family {code.family}\n")
    for row in code.generator:
        out.write(" ".join(F.format(int(v)) for v in row) + "\n")
    for part in code.partitions:
        groups = " | ".join(" ".join(str(c) for c in s) for s in part.sets)
        out.write(f"partition {groups}\n")
    text = out.getvalue()
    if hasattr(path_or_buf, "write"):
        path_or_buf.write(text)
    else:
        with open(path_or_buf, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


class CodeFileError(ValueError):
    pass


def read_code_file(path_or_buf) -> LinearCode:
    """Parse a code file; repair coefficients are derived from the generator."""
    if hasattr(path_or_buf, "read"):
        text = path_or_buf.read()
    else:
        with open(path_or_buf, encoding="ascii") as fh:
            text = fh.read()
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CodeFileError("empty code file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 8:
        raise CodeFileError(f"line {lineno}: header must have 8 fields: q p m n k r delta partitions")
    try:
        q, p, m, n, k = (int(x) for x in parts[:5])
        rs = [int(x) for x in parts[5].split(",")]
        delta, npart = int(parts[6]), int(parts[7])
    except ValueError:
        raise CodeFileError(f"line {lineno}: malformed header") from None
    modulus = None
    family = "file"
    rows, partitions = [], []
    for lineno, ln in lines[1:]:
        if ln.startswith("modulus"):
            try:
                modulus = [int(x) for x in ln.split()[1:]]
            except ValueError:
                raise CodeFileError(f"line {lineno}: malformed modulus") from None
            continue
        if ln.startswith("family"):
            family = ln[len("family"):].strip() or family
            continue
        if ln.startswith("partition"):
            groups = ln[len("partition"):].split("|")
            try:
                partitions.append([[int(x) for x in g.split()] for g in groups])
            except ValueError:
                raise CodeFileError(f"line {lineno}: malformed partition") from None
            continue
        rows.append((lineno, ln.split()))
    try:
        F = make_field(p, m, modulus)
    except ValueError as exc:
        raise CodeFileError(f"bad field: {exc}") from None
    if F.q != q:
        raise CodeFileError("q does not equal p^m")
    G = np.zeros((len(rows), n), dtype=np.int64)
    for r_i, (lineno, toks) in enumerate(rows):
        if len(toks) != n:
            raise CodeFileError(f"line {lineno}: expected {n} entries, found {len(toks)}")
        for c, tok in enumerate(toks):
            try:
                G[r_i, c] = F.parse(tok)
            except ValueError as exc:
                raise CodeFileError(f"line {lineno}: {exc}") from None
    if len(partitions) != npart or len(rs) != npart:
        raise CodeFileError("partition count does not match the header")
    parts = []
    for sets, r in zip(partitions, rs):
        if any(len(s) != r + 1 for s in sets):
            raise CodeFileError(f"helper sets must have r + 1 = {r + 1} columns")
        parts.append(HelperPartition.from_generator(F, G, sets))
    code = LinearCode(F, G, parts, delta, family)
    if code.k != k:
        raise CodeFileError(f"header says k = {k} but the generator has rank {code.k}")
    return code
