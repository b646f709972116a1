"""Parity checks, minimum distance, Singleton gap and construction reports."""

from __future__ import annotations

import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field

import numpy as np

from .engine import LinearCode, RecoveryCheck
from .gf import GF
from .linalg import matmul, nullspace, rank, rref

__all__ = [
    "DistanceBudgetError",
    "LowWeightResult",
    "ConstructionReport",
    "parity_check",
    "span_table",
    "min_distance_exhaustive",
    "min_distance_low_weight",
    "singleton_bound",
    "singleton_gap",
    "verify_locality",
    "report",
    "worker_count",
]

DEFAULT_EXACT_BUDGET = 2**24
DEFAULT_LOW_WEIGHT = 4
# Ceiling on the number of half-support syndromes built by the low-weight search.
LOW_WEIGHT_WORK = 4_000_000
_BLOCK = 2**16


class DistanceBudgetError(ValueError):
    pass


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("LRC_THREADS", "1")))
    except ValueError:
        return 1


def parity_check(code_or_field, G=None) -> np.ndarray:
    """Matrix ``H`` with ``n`` columns, rank ``n - k`` and ``G H^T = 0``."""
    if isinstance(code_or_field, LinearCode):
        F, G = code_or_field.field, code_or_field.generator
    else:
        F = code_or_field
    return nullspace(F, G)


def span_table(F: GF, rows: np.ndarray) -> np.ndarray:
    """All ``q^len(rows)`` combinations of ``rows``, last row varying fastest."""
    n = rows.shape[1] if rows.ndim == 2 else 0
    T = np.zeros((1, n), dtype=np.int64)
    scal = np.array(F.canonical, dtype=np.int64)
    for row in rows:
        mult = F.vmul(scal[:, None], row[None, :])
        T = F.vadd(T[:, None, :], mult[None, :, :]).reshape(-1, n)
    return T


def _min_weight_coset(F: GF, base: np.ndarray, rows: np.ndarray) -> int:
    """Least weight of ``base + v`` for ``v`` in the span of ``rows``."""
    q = F.q
    nlow = 0
    while nlow < len(rows) and q ** (nlow + 1) <= _BLOCK:
        nlow += 1
    low = span_table(F, rows[len(rows) - nlow:])
    high = rows[: len(rows) - nlow]
    best = base.shape[0] + 1
    scal = F.canonical
    for coeffs in itertools.product(scal, repeat=len(high)):
        shift = base
        for c, row in zip(coeffs, high):
            if c:
                shift = F.vadd(shift, F.vmul(c, row))
        words = F.vadd(low, shift[None, :])
        w = int(np.count_nonzero(words, axis=1).min())
        if w < best:
            best = w
    return best


def _leading_task(args):
    F, basis, p = args
    return _min_weight_coset(F, basis[p], basis[p + 1:])


def min_distance_exhaustive(code: LinearCode, budget: int = DEFAULT_EXACT_BUDGET, workers: int | None = None) -> int:
    """Exact minimum distance by sweeping every codeword up to scaling.

    Codewords whose first nonzero message coordinate is 1 cover every
    nonzero codeword up to a scalar, which leaves the weight unchanged.
    """
    F, basis = code.field, code.basis
    k = basis.shape[0]
    if k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    if F.q**k > budget:
        raise DistanceBudgetError(
            f"q^k = {F.q}^{k} exceeds the exhaustive budget {budget}; use the low-weight search"
        )
    workers = worker_count() if workers is None else workers
    tasks = [(F, basis, p) for p in range(k)]
    if workers > 1 and k > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return min(ex.map(_leading_task, tasks))
    return min(_leading_task(t) for t in tasks)


@dataclass(frozen=True)
class LowWeightResult:
    """``exact`` is True when ``value`` is the minimum distance, else a lower bound."""

    value: int
    exact: bool
    searched_up_to: int


def _normalize_rows(F: GF, S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scale each row so its first nonzero entry is 1; also return a zero-row mask."""
    nz = S != 0
    has = nz.any(axis=1)
    first = nz.argmax(axis=1)
    lead = S[np.arange(S.shape[0]), first]
    lead = np.where(has, lead, 1)
    inv = F.vinv(lead)
    return F.vmul(inv[:, None], S), ~has


def _half_syndromes(F: GF, Hc: np.ndarray, size: int):
    """Normalised syndromes of all ``size``-subsets with leading coefficient 1.

    Yields ``(keys, supports)`` in chunks; ``keys`` are byte strings of the
    projectively normalised syndromes.
    """
    n = Hc.shape[0]
    nonzero = [c for c in F.canonical if c]
    dtype = np.uint8 if F.q <= 256 else np.uint16
    for support in itertools.combinations(range(n), size):
        cols = Hc[list(support)]
        if size == 1:
            S = cols[:1]
            coeffs = [()]
        else:
            coeffs = list(itertools.product(nonzero, repeat=size - 1))
            C = np.array(coeffs, dtype=np.int64)
            S = np.repeat(cols[:1], len(coeffs), axis=0)
            for j in range(1, size):
                S = F.vadd(S, F.vmul(C[:, j - 1][:, None], cols[j][None, :]))
        N, zero = _normalize_rows(F, S)
        yield support, N.astype(dtype), zero


def min_distance_low_weight(code_or_H, w_max: int = DEFAULT_LOW_WEIGHT, field: GF | None = None,
                            work_limit: int = LOW_WEIGHT_WORK) -> LowWeightResult:
    """Least size of a dependent set of parity-check columns, searched up to ``w_max``.

    A weight-``w`` codeword is a dependency among ``w`` columns of ``H``;
    splitting its support into a leading half and a trailing half, both
    halves have proportional syndromes.  Halves are matched through a hash
    of projectively normalised syndromes.  If the search for some weight
    would exceed ``work_limit`` syndromes it stops there and reports the
    certified lower bound.
    """
    if isinstance(code_or_H, LinearCode):
        F = code_or_H.field
        H = parity_check(code_or_H)
        n = code_or_H.n
    else:
        F = field
        H = np.asarray(code_or_H, dtype=np.int64)
        n = H.shape[1]
    if w_max < 1:
        raise ValueError("w_max must be at least 1")
    if H.shape[0] == 0:
        return LowWeightResult(1, True, 1) if n else LowWeightResult(1, False, 0)
    Hc = H.T.copy()
    q = F.q
    for w in range(1, min(w_max, n) + 1):
        a, b = (w + 1) // 2, w // 2
        cost = math.comb(n, a) * (q - 1) ** (a - 1) + math.comb(n, b) * (q - 1) ** max(b - 1, 0)
        if cost > work_limit:
            return LowWeightResult(w, False, w - 1)
        if w == 1:
            if np.any(~Hc.any(axis=1)):
                return LowWeightResult(1, True, 1)
            continue
        table: dict[bytes, list] = {}
        for support, N, zero in _half_syndromes(F, Hc, b):
            for row, z in zip(N, zero):
                if not z:
                    table.setdefault(row.tobytes(), []).append(set(support))
        for support, N, zero in _half_syndromes(F, Hc, a):
            sup = set(support)
            for row, z in zip(N, zero):
                if z:
                    continue
                for other in table.get(row.tobytes(), ()):
                    if not (sup & other):
                        return LowWeightResult(w, True, w)
    return LowWeightResult(min(w_max, n) + 1, False, min(w_max, n))


def singleton_bound(n: int, k: int, r: int) -> int:
    """Right-hand side ``n - k - ceil(k / r) + 2`` of the locality Singleton bound."""
    if r < 1:
        raise ValueError("r must be at least 1")
    return n - k - math.ceil(k / r) + 2


def singleton_gap(n: int, k: int, d: int, r: int) -> int:
    return singleton_bound(n, k, r) - d


def _random_codewords(code: LinearCode, count: int, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    msgs = rng.integers(0, code.field.q, size=(count, code.k))
    return matmul(code.field, msgs, code.basis)


def _all_codewords(code: LinearCode) -> np.ndarray:
    return span_table(code.field, code.basis)


def codeword_sample(code: LinearCode, exhaustive_limit: int = 2**16, samples: int = 10_000, seed: int = 0) -> tuple[np.ndarray, str]:
    """Every codeword when ``q^k`` is small, else a seeded random sample."""
    if code.k == 0:
        return np.zeros((1, code.n), dtype=np.int64), "exhaustive"
    if code.field.q**code.k <= exhaustive_limit:
        return _all_codewords(code), "exhaustive"
    return _random_codewords(code, samples, seed), f"random({samples})"


def _plan_residuals(code: LinearCode, part, words: np.ndarray) -> list[int]:
    """Coordinates whose repair formula disagrees with some word."""
    F = code.field
    bad = []
    for c in range(code.n):
        plan = part.plans.get(c)
        if plan is None:
            bad.append(c)
            continue
        others, lam = plan
        acc = np.zeros(words.shape[0], dtype=np.int64)
        for o, l in zip(others, lam):
            acc = F.vadd(acc, F.vmul(int(l), words[:, o]))
        if np.any(acc != words[:, c]):
            bad.append(c)
    return bad


@dataclass
class LocalityVerdict:
    ok: bool
    failures: list
    sweep: str

    def describe(self) -> str:
        if self.ok:
            return f"pass ({self.sweep})"
        return "fail: " + "; ".join(self.failures)


def verify_locality(code: LinearCode, samples: int = 10_000, seed: int = 0) -> LocalityVerdict:
    """Every helper set passes its check and every repair formula is exact.

    Repair is linear, so exactness on the generator rows already covers all
    codewords; a sweep of codewords (all of them when few) is run as well.
    """
    failures = []
    words, how = codeword_sample(code, samples=samples, seed=seed)
    words = np.vstack([code.generator, words]) if code.generator.size else words
    for pi, part in enumerate(code.partitions):
        tag = f"partition {pi + 1}: " if len(code.partitions) > 1 else ""
        for si, chk in part.failures():
            name = part.names[si] if si < len(part.names) else f"set {si}"
            failures.append(f"{tag}{name}: {chk.describe()}")
        if part.ok:
            bad = _plan_residuals(code, part, words)
            if bad:
                failures.append(f"{tag}repair mismatch at coordinates {bad[:10]}")
    return LocalityVerdict(not failures, failures, how)


@dataclass
class ConstructionReport:
    n: int
    k: int
    r: list
    d_exact: int | None
    d_designed: int
    d_lower_bound: int | None
    singleton_bound: int
    singleton_gap: int | None
    locality_verdict: str
    method: str
    raw_rows: int
    kernel_dim: int
    family: str = ""
    failing_sets: list = dc_field(default_factory=list)
    seconds: float = 0.0
    details: dict = dc_field(default_factory=dict)

    @property
    def distance_used(self) -> int:
        if self.d_exact is not None:
            return self.d_exact
        return max(self.d_designed, self.d_lower_bound or 0)

    @property
    def locality_ok(self) -> bool:
        return self.locality_verdict.startswith("pass")

    KEYS = ("n", "k", "r", "d_exact", "d_designed", "singleton_gap", "locality_verdict", "method")

    def as_dict(self) -> dict:
        return asdict(self)

    def core(self) -> dict:
        return {k: getattr(self, k) for k in self.KEYS}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        lines = []
        for key in ("family", "n", "k", "r", "raw_rows", "kernel_dim", "d_exact", "d_lower_bound",
                    "d_designed", "singleton_bound", "singleton_gap", "locality_verdict", "method"):
            val = getattr(self, key)
            if isinstance(val, list):
                val = ",".join(str(v) for v in val)
            lines.append(f"{key} = {'-' if val is None else val}")
        for f in self.failing_sets:
            lines.append(f"failing_set = {f}")
        return "\n".join(lines)


def report(code: LinearCode, exact_budget: int = DEFAULT_EXACT_BUDGET, low_weight: int | None = DEFAULT_LOW_WEIGHT,
           workers: int | None = None) -> ConstructionReport:
    """Full report: exact distance when ``q^k <= exact_budget``, else the low-weight search.

    The low-weight search does at most ``min(LOW_WEIGHT_WORK, exact_budget)``
    syndrome work; with ``low_weight`` of 0 or ``None``, or when the search
    certifies nothing, only the designed bound is reported.
    """
    t0 = time.perf_counter()
    F = code.field
    d_exact = lower = None
    if code.k == 0:
        method = "zero code"
    elif F.q**code.k <= exact_budget:
        d_exact = min_distance_exhaustive(code, budget=exact_budget, workers=workers)
        method = "exhaustive"
    else:
        method = "designed bound only"
        if low_weight:
            # the exact budget also caps the syndrome work of the search
            res = min_distance_low_weight(code, low_weight, work_limit=min(LOW_WEIGHT_WORK, exact_budget))
            if res.exact:
                d_exact = res.value
                method = f"low-weight(w<={low_weight})"
            elif res.searched_up_to > 0:
                lower = res.value
                method = f"low-weight(w<={res.searched_up_to}) lower bound"
    verdict = verify_locality(code)
    rmin = min(code.r) if code.r else 1
    sb = singleton_bound(code.n, code.k, rmin) if code.k else code.n + 2
    rep = ConstructionReport(
        n=code.n,
        k=code.k,
        r=list(code.r),
        d_exact=d_exact,
        d_designed=code.designed_distance,
        d_lower_bound=lower,
        singleton_bound=sb,
        singleton_gap=None,
        locality_verdict=verdict.describe(),
        method=method,
        raw_rows=code.raw_rows,
        kernel_dim=code.kernel_dim,
        family=code.family,
        failing_sets=list(verdict.failures),
    )
    rep.singleton_gap = sb - rep.distance_used if code.k else None
    rep.seconds = time.perf_counter() - t0
    return rep
