"""Lattice checks of ``d(a) + d(b) >= d(a | b) + d(a & b)``.

Every function here accepts either a validated :class:`ConcaveSpec` or a raw
sequence of samples ``g(0), g(1), ...``.  Raw tables are not validated, which
is how convex or otherwise inadmissible penalties are probed for violations.

Exhaustive sweeps encode a vector as an integer with coordinate 0 in the most
significant bit and visit pairs ``(a, b)`` in lexicographic order of the
``2k``-bit integer ``a·2^k + b``.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

import numpy as np

from .core import ConcaveSpec, LabelVector, Majority, dominant_label, deviation
from .errors import LengthMismatch, RangeError

#: margins below ``-MARGIN_TOL`` count as violations
MARGIN_TOL = 1e-9
#: largest k swept exhaustively (4**13 pairs)
K_MAX = 13

Penalty = Union[ConcaveSpec, Sequence[float]]

_CHUNK_CELLS = 1 << 20
_SAMPLE_BATCH = 1 << 16


@dataclass(frozen=True)
class KappaProfile:
    """Counts of the coordinate patterns 00, 01, 10, 11 of a pair ``(a, b)``."""

    k1: int
    k2: int
    k3: int
    k4: int

    @property
    def k(self) -> int:
        return self.k1 + self.k2 + self.k3 + self.k4

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k1, self.k2, self.k3, self.k4)


class ProofCase(enum.Enum):
    JOIN_ZERO = "JoinZero"
    MEET_ONE = "MeetOne"
    JOIN_ONE_MEET_ZERO = "JoinOneMeetZero"
    JOIN_ZERO_MEET_ONE = "JoinZeroMeetOne"
    TIE_INVOLVED = "TieInvolved"


class Violation(NamedTuple):
    a: LabelVector
    b: LabelVector
    margin: float


@dataclass
class VerifyReport:
    pairs_checked: int
    violations: list[Violation]
    min_margin: float
    n_violations: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.n_violations == 0


def _table(g: Penalty) -> np.ndarray:
    if isinstance(g, ConcaveSpec):
        return g.as_array()
    return np.asarray(g, dtype=float)


def _check_cover(table: np.ndarray, k: int) -> None:
    if len(table) - 1 < k // 2:
        raise RangeError(f"g sampled up to {len(table) - 1} but k={k} needs {k // 2}")


def _check_pair(a: LabelVector, b: LabelVector) -> None:
    if len(a) != len(b):
        raise LengthMismatch(f"vectors of length {len(a)} and {len(b)}")


def join_meet(a: LabelVector, b: LabelVector) -> tuple[LabelVector, LabelVector]:
    _check_pair(a, b)
    join = LabelVector(x | y for x, y in zip(a.bits, b.bits))
    meet = LabelVector(x & y for x, y in zip(a.bits, b.bits))
    return join, meet


def kappa_profile(a: LabelVector, b: LabelVector) -> KappaProfile:
    _check_pair(a, b)
    counts = [0, 0, 0, 0]
    for x, y in zip(a.bits, b.bits):
        counts[2 * x + y] += 1
    return KappaProfile(*counts)


def submodular_margin(g: Penalty, a: LabelVector, b: LabelVector) -> float:
    """``[d(a) + d(b)] - [d(a|b) + d(a&b)]``; nonnegative for admissible g."""
    join, meet = join_meet(a, b)
    table = _table(g)
    _check_cover(table, len(a))
    d = lambda x: float(table[deviation(x)])  # noqa: E731
    return (d(a) + d(b)) - (d(join) + d(meet))


def classify_case(a: LabelVector, b: LabelVector) -> tuple[ProofCase, KappaProfile]:
    """Which case of the proof the pair falls into, by majority of join and meet."""
    join, meet = join_meet(a, b)
    rj = dominant_label(join)[0]
    rm = dominant_label(meet)[0]
    if Majority.TIE in (rj, rm):
        case = ProofCase.TIE_INVOLVED
    elif rj is Majority.ZERO and rm is Majority.ONE:
        case = ProofCase.JOIN_ZERO_MEET_ONE
    elif rj is Majority.ZERO:
        case = ProofCase.JOIN_ZERO
    elif rm is Majority.ONE:
        case = ProofCase.MEET_ONE
    else:
        case = ProofCase.JOIN_ONE_MEET_ZERO
    return case, kappa_profile(a, b)


def _d_by_mask(table: np.ndarray, k: int) -> np.ndarray:
    pc = np.bitwise_count(np.arange(1 << k, dtype=np.uint32)).astype(np.int64)
    return table[np.minimum(pc, k - pc)]


def _d_by_count(table: np.ndarray, k: int) -> np.ndarray:
    n = np.arange(k + 1)
    return table[np.minimum(n, k - n)]


def _scan_rows(d: np.ndarray, a0: int, a1: int, tol: float):
    """Margins for a in [a0, a1) against every b.  Returns (min, a-idx, b-idx, margins)."""
    a = np.arange(a0, a1, dtype=np.int64)[:, None]
    b = np.arange(len(d), dtype=np.int64)[None, :]
    m = (d[a] + d[b]) - (d[a | b] + d[a & b])
    ia, ib = np.nonzero(m < -tol)
    return float(m.min()), ia + a0, ib, m[ia, ib]


def _row_chunks(k: int) -> list[tuple[int, int]]:
    n = 1 << k
    rows = max(1, _CHUNK_CELLS // n)
    return [(s, min(s + rows, n)) for s in range(0, n, rows)]


def verify_exhaustive(
    g: Penalty,
    k: int,
    *,
    workers: int = 1,
    max_violations: int | None = None,
    tol: float = MARGIN_TOL,
) -> VerifyReport:
    """Check every ordered pair in ``{0,1}^k x {0,1}^k``.

    ``workers > 1`` splits the rows over threads; chunks are merged in
    lexicographic order so the report matches the sequential one exactly.
    ``max_violations`` bounds how many violating pairs are materialized;
    ``n_violations`` always carries the full count.
    """
    if not 1 <= k <= K_MAX:
        raise RangeError(f"exhaustive sweep supports 1 <= k <= {K_MAX}, got {k}")
    if max_violations is not None and max_violations < 1:
        raise ValueError("max_violations must be positive or None")
    table = _table(g)
    _check_cover(table, k)
    start = time.perf_counter()
    d = _d_by_mask(table, k)
    chunks = _row_chunks(k)
    scan = lambda c: _scan_rows(d, c[0], c[1], tol)  # noqa: E731
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(scan, chunks))
    else:
        parts = [scan(c) for c in chunks]

    min_margin = min(p[0] for p in parts)
    n_viol = sum(len(p[1]) for p in parts)
    violations: list[Violation] = []
    for _, ia, ib, mv in parts:
        for x, y, m in zip(ia.tolist(), ib.tolist(), mv.tolist()):
            if max_violations is not None and len(violations) >= max_violations:
                break
            violations.append(Violation(LabelVector.from_int(x, k), LabelVector.from_int(y, k), m))
    return VerifyReport(1 << (2 * k), violations, min_margin, n_viol, time.perf_counter() - start)


def _sampled_batches(k: int, n_pairs: int, seed: int):
    """Deterministic stream of random pairs as boolean (batch, k) arrays.

    Each vector gets its own Bernoulli density drawn uniformly from [0, 1], so
    near-unanimous and lopsided vectors, where violations live, are common.
    """
    rng = np.random.default_rng(seed)
    left = n_pairs
    while left > 0:
        n = min(left, _SAMPLE_BATCH)
        pa = rng.random(n)[:, None]
        pb = rng.random(n)[:, None]
        A = rng.random((n, k)) < pa
        B = rng.random((n, k)) < pb
        yield A, B
        left -= n


def _batch_margins(dc: np.ndarray, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    na, nb = A.sum(1), B.sum(1)
    nj, nm = (A | B).sum(1), (A & B).sum(1)
    return (dc[na] + dc[nb]) - (dc[nj] + dc[nm])


def verify_sampled(
    g: Penalty,
    k: int,
    n_pairs: int,
    seed: int,
    *,
    max_violations: int | None = None,
    tol: float = MARGIN_TOL,
) -> VerifyReport:
    """Randomized counterpart of :func:`verify_exhaustive` for large k."""
    if k < 1 or n_pairs < 1:
        raise RangeError("need k >= 1 and n_pairs >= 1")
    if max_violations is not None and max_violations < 1:
        raise ValueError("max_violations must be positive or None")
    table = _table(g)
    _check_cover(table, k)
    start = time.perf_counter()
    dc = _d_by_count(table, k)
    min_margin = np.inf
    n_viol = 0
    violations: list[Violation] = []
    for A, B in _sampled_batches(k, n_pairs, seed):
        m = _batch_margins(dc, A, B)
        min_margin = min(min_margin, float(m.min()))
        idx = np.flatnonzero(m < -tol)
        n_viol += len(idx)
        for i in idx.tolist():
            if max_violations is not None and len(violations) >= max_violations:
                break
            violations.append(Violation(LabelVector(A[i]), LabelVector(B[i]), float(m[i])))
    return VerifyReport(n_pairs, violations, min_margin, n_viol, time.perf_counter() - start)


def find_counterexample(
    g_samples: Penalty,
    k: int,
    budget: int | None = None,
    *,
    seed: int = 0,
    tol: float = MARGIN_TOL,
) -> Violation | None:
    """First pair violating the lattice inequality, or ``None``.

    Scans lexicographically when ``k <= K_MAX`` (default budget: all pairs),
    otherwise samples from the stream of :func:`verify_sampled` (default
    budget: one million pairs).  The table is deliberately not validated.
    """
    if k < 2:
        raise RangeError(f"need k >= 2, got {k}")
    table = _table(g_samples)
    _check_cover(table, k)
    if k <= K_MAX:
        budget = 1 << (2 * k) if budget is None else budget
        n = 1 << k
        d = _d_by_mask(table, k)
        for a0, a1 in _row_chunks(k):
            if a0 * n >= budget:
                break
            a1 = min(a1, a0 + -(-(budget - a0 * n) // n))
            _, ia, ib, mv = _scan_rows(d, a0, a1, tol)
            for x, y, m in zip(ia.tolist(), ib.tolist(), mv.tolist()):
                if x * n + y >= budget:
                    return None
                return Violation(LabelVector.from_int(x, k), LabelVector.from_int(y, k), m)
        return None
    budget = 1_000_000 if budget is None else budget
    dc = _d_by_count(table, k)
    for A, B in _sampled_batches(k, budget, seed):
        m = _batch_margins(dc, A, B)
        idx = np.flatnonzero(m < -tol)
        if idx.size:
            i = int(idx[0])
            return Violation(LabelVector(A[i]), LabelVector(B[i]), float(m[i]))
    return None
