"""Label vectors, concave penalty tables and the disagreement potential.

The potential of a binary vector ``x`` of length ``k`` is ``g(k - n_rho)``,
where ``n_rho`` counts the coordinates carrying the dominant label.  Because
``k - n_rho == min(n0, n1)`` it is evaluated from counts alone, which also
gives a well-defined value when the two labels are tied.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError, RangeError, ValidationError

#: absolute slack on the monotonicity / concavity checks of sampled penalties
VALIDATION_TOL = 1e-12

KINDS = ("sqrt", "log1p", "power", "trunclin", "table")


@dataclass(frozen=True)
class LabelVector:
    """Immutable binary assignment ``x_1 .. x_k`` (coordinate 0 first)."""

    bits: tuple[int, ...]

    def __init__(self, bits: Iterable[int]):
        bits = tuple(int(b) for b in bits)
        if not bits:
            raise ValueError("a label vector needs at least one coordinate")
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"labels must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, s: str) -> "LabelVector":
        """Parse ``"0011"``; the leftmost character is coordinate 0."""
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bit string: {s!r}")
        return cls(int(c) for c in s)

    @classmethod
    def from_int(cls, mask: int, k: int) -> "LabelVector":
        """Inverse of :meth:`to_int`; coordinate 0 is the most significant bit."""
        return cls((mask >> (k - 1 - i)) & 1 for i in range(k))

    def to_int(self) -> int:
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out

    def complement(self) -> "LabelVector":
        return LabelVector(1 - b for b in self.bits)

    def as_array(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.int8)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, i):
        return self.bits[i]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


class Majority(enum.Enum):
    ZERO = 0
    ONE = 1
    TIE = "tie"


@dataclass(frozen=True)
class ConcaveSpec:
    """Nondecreasing, integer-concave penalty ``g`` sampled at ``0..T``.

    Build instances through :func:`make_concave_spec`, which validates the
    samples.  ``params`` records the family parameters so the spec can be
    serialized back to a function record.
    """

    samples: tuple[float, ...]
    kind: str
    params: tuple[float, ...] = ()
    weight: float = 1.0

    @property
    def T(self) -> int:
        return len(self.samples) - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.samples, dtype=float)

    def label(self) -> str:
        """Short human readable name, in the command-line mini syntax."""
        if self.kind in ("sqrt", "log1p"):
            s = self.kind
        elif self.kind == "power":
            s = f"power:{self.params[0]:g}"
        elif self.kind == "trunclin":
            s = f"trunclin:{self.params[0]:g},{self.params[1]:g}"
        else:
            s = "table:" + ",".join(f"{v:g}" for v in self.params)
        if self.weight != 1.0:
            s += f"*{self.weight:g}"
        return s


def _family_values(kind: str, T: int, params: dict) -> tuple[np.ndarray, tuple]:
    t = np.arange(T + 1, dtype=float)
    if kind == "sqrt":
        return np.sqrt(t), ()
    if kind == "log1p":
        return np.log1p(t), ()
    if kind == "power":
        if "p" not in params:
            raise ParameterError("power family needs an exponent p")
        p = float(params["p"])
        if not (0.0 < p <= 1.0):
            raise ParameterError(f"power exponent must lie in (0, 1], got {p}")
        return t**p, (p,)
    if kind == "trunclin":
        if not {"slope", "cap"} <= set(params):
            raise ParameterError("trunclin family needs slope and cap")
        slope = float(params["slope"])
        cap = float(params["cap"])
        if not (math.isfinite(slope) and slope >= 0.0):
            raise ParameterError(f"trunclin slope must be >= 0, got {slope}")
        if not (math.isfinite(cap) and cap >= 1.0):
            raise ParameterError(f"trunclin cap must be >= 1, got {cap}")
        return slope * np.minimum(t, cap), (slope, cap)
    raise ParameterError(f"unknown penalty family {kind!r}")


def validate_samples(samples: Sequence[float], tol: float = VALIDATION_TOL) -> None:
    """Raise :class:`ValidationError` unless ``samples`` is finite, nonnegative,
    nondecreasing and has nonpositive second differences (all within ``tol``)."""
    g = np.asarray(samples, dtype=float)
    bad = np.flatnonzero(~np.isfinite(g))
    if bad.size:
        raise ValidationError(int(bad[0]), "finite")
    if g[0] < -tol:
        raise ValidationError(0, "nonnegative", f"g(0) = {float(g[0])!r}")
    step = np.diff(g)
    bad = np.flatnonzero(step < -tol)
    if bad.size:
        i = int(bad[0]) + 1
        raise ValidationError(i, "monotonicity", f"g({i}) < g({i - 1})")
    curv = np.diff(step)
    bad = np.flatnonzero(curv > tol)
    if bad.size:
        i = int(bad[0]) + 2
        raise ValidationError(
            i, "concavity", f"second difference {float(curv[i - 2])!r} ending at sample {i}"
        )


def make_concave_spec(
    kind: str,
    T: int | None = None,
    weight: float = 1.0,
    *,
    p: float | None = None,
    slope: float | None = None,
    cap: float | None = None,
    values: Sequence[float] | None = None,
) -> ConcaveSpec:
    """Sample a penalty family at ``0..T`` and validate it.

    ``kind`` is one of ``sqrt``, ``log1p``, ``power`` (needs ``p``),
    ``trunclin`` (``slope``, ``cap``) or ``table`` (``values``; ``T`` then
    defaults to ``len(values) - 1``).
    """
    weight = float(weight)
    if not (math.isfinite(weight) and weight >= 0.0):
        raise ParameterError(f"weight must be a finite nonnegative number, got {weight}")
    if kind == "table":
        if values is None or len(values) < 2:
            raise ParameterError("a table needs at least two values g(0), g(1)")
        vals = np.asarray([float(v) for v in values])
        if T is None:
            T = len(vals) - 1
        if T < 1 or T > len(vals) - 1:
            raise ParameterError(f"T={T} does not fit a table of {len(vals)} values")
        raw, params = vals[: T + 1], tuple(float(v) for v in vals)
    else:
        if kind not in KINDS:
            raise ParameterError(f"unknown penalty family {kind!r}")
        if T is None or T < 1:
            raise ParameterError(f"T must be an integer >= 1, got {T}")
        given = {"p": p, "slope": slope, "cap": cap}
        raw, params = _family_values(kind, int(T), {k: v for k, v in given.items() if v is not None})
    samples = raw * weight
    validate_samples(samples)
    return ConcaveSpec(tuple(float(v) for v in samples), kind, params, weight)


def eval_g(spec: ConcaveSpec, t: int) -> float:
    if not 0 <= t <= spec.T:
        raise RangeError(f"g is sampled on 0..{spec.T}, asked for {t}")
    return spec.samples[t]


def dominant_label(x: LabelVector) -> tuple[Majority, int, int]:
    """Return ``(majority, n0, n1)``."""
    n1 = sum(x.bits)
    n0 = len(x) - n1
    if n1 > n0:
        return Majority.ONE, n0, n1
    if n0 > n1:
        return Majority.ZERO, n0, n1
    return Majority.TIE, n0, n1


def deviation(x: LabelVector) -> int:
    """Number of coordinates that disagree with the dominant label."""
    n1 = sum(x.bits)
    return min(n1, len(x) - n1)


def disagreement(spec: ConcaveSpec, x: LabelVector) -> float:
    k = len(x)
    if spec.T < k // 2:
        raise RangeError(f"g sampled up to {spec.T} but k={k} needs {k // 2}")
    return spec.samples[deviation(x)]


def builtin_specs(T: int) -> dict[str, ConcaveSpec]:
    """The standard penalty families sampled on ``0..T``, keyed by mini-syntax name."""
    specs = {
        "sqrt": make_concave_spec("sqrt", T),
        "log1p": make_concave_spec("log1p", T),
        "power:0.5": make_concave_spec("power", T, p=0.5),
        "linear": make_concave_spec("power", T, p=1.0),
    }
    for q in (1, 2, 3):
        specs[f"trunclin:1,{q}"] = make_concave_spec("trunclin", T, slope=1.0, cap=q)
    return specs
