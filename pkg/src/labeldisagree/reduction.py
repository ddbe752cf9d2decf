"""Truncated-linear decomposition of concave penalties and their cut gadgets.

A nondecreasing, integer-concave ``g`` on ``0..T`` is exactly

    g(t) = g(0) + sum_Q lam_Q * min(t, Q),   lam_Q = delta_Q - delta_{Q+1} >= 0

with ``delta_i = g(i) - g(i-1)`` and ``delta_{T+1} = 0``.  Each piece
``lam * min(n0, n1, Q)`` of a hyperedge penalty is then produced by two
auxiliary binaries, one per label side:

    E(x, z0, z1) = lam * [sum_i x_i (1 - z1) + Q z1]
                 + lam * [sum_i (1 - x_i) z0 + Q (1 - z0)] - lam * Q

Minimizing over ``z1`` gives ``lam * min(n1, Q)``, over ``z0`` gives
``lam * min(n0, Q)``, and ``min(n1, Q) + min(n0, Q) - Q = min(n0, n1, Q)``
whenever ``Q <= k // 2``.  The zero-side auxiliary is wired with inverted
polarity so that both pairwise terms are submodular.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import ConcaveSpec, LabelVector
from .errors import CapTooLarge, LengthMismatch, ParameterError, RangeError, ValidationError

#: negative second differences above this are treated as rounding and clamped
CLAMP_TOL = 1e-12
#: pieces lighter than this are not compiled into the cut graph
DROP_TOL = 1e-12


@dataclass(frozen=True)
class Piece:
    cap: int
    lam: float


@dataclass(frozen=True)
class Decomposition:
    constant: float
    pieces: tuple[Piece, ...]

    @property
    def T(self) -> int:
        return len(self.pieces)

    def active(self, drop_tol: float = DROP_TOL) -> tuple[Piece, ...]:
        return tuple(p for p in self.pieces if p.lam >= drop_tol)

    def lambdas(self) -> np.ndarray:
        return np.array([p.lam for p in self.pieces])

    def reconstruct(self, t) -> np.ndarray | float:
        """``constant + sum lam_Q * min(t, Q)`` at integer(s) ``t``."""
        t_arr = np.asarray(t, dtype=float)
        caps = np.array([p.cap for p in self.pieces], dtype=float)
        val = self.constant + (self.lambdas() * np.minimum(t_arr[..., None], caps)).sum(-1)
        return float(val) if np.ndim(val) == 0 else val


def decompose_truncated(spec: ConcaveSpec | Sequence[float], T_eff: int) -> Decomposition:
    g = spec.as_array() if isinstance(spec, ConcaveSpec) else np.asarray(spec, dtype=float)
    if T_eff < 1:
        raise RangeError(f"T_eff must be >= 1, got {T_eff}")
    if len(g) - 1 < T_eff:
        raise RangeError(f"g sampled up to {len(g) - 1}, decomposition needs {T_eff}")
    delta = np.diff(g[: T_eff + 1])
    lam = delta - np.append(delta[1:], 0.0)
    bad = np.flatnonzero(lam < -CLAMP_TOL)
    if bad.size:
        q = int(bad[0]) + 1
        raise ValidationError(q, "concavity", f"negative piece weight {float(lam[q - 1])!r} at cap {q}")
    lam = np.maximum(lam, 0.0)
    return Decomposition(float(g[0]), tuple(Piece(q + 1, float(w)) for q, w in enumerate(lam)))


@dataclass(frozen=True, eq=False)
class GadgetFragment:
    """Pairwise-submodular energy over a hyperedge plus two auxiliaries.

    ``pair_theta[j]`` is ``(θ00, θ01, θ10, θ11)`` for the pair
    ``(pair_u[j], pair_v[j])``; ``unary_theta[j]`` is ``(cost at 0, cost at 1)``
    for ``unary_v[j]``.
    """

    members: tuple[int, ...]
    z0: int
    z1: int
    lam: float
    cap: int
    pair_u: np.ndarray
    pair_v: np.ndarray
    pair_theta: np.ndarray
    unary_v: np.ndarray
    unary_theta: np.ndarray
    constant: float

    def energy(self, labels) -> float:
        """Evaluate at ``labels``, anything indexable by variable id."""
        lab = lambda ids: np.array([labels[i] for i in ids], dtype=np.int64)  # noqa: E731
        xu, xv = lab(self.pair_u), lab(self.pair_v)
        pair = self.pair_theta[np.arange(len(xu)), 2 * xu + xv].sum()
        un = self.unary_theta[np.arange(len(self.unary_v)), lab(self.unary_v)].sum()
        return float(pair + un + self.constant)


def is_submodular(theta) -> bool:
    t00, t01, t10, t11 = theta
    return t00 + t11 <= t01 + t10


def build_gadget(
    piece: Piece, members: Sequence[int], z0: int | None = None, z1: int | None = None
) -> GadgetFragment:
    """Compile ``lam * min(n0, n1, Q)`` over ``members``.

    Auxiliary ids default to the two ids following the largest member.
    """
    members = tuple(int(m) for m in members)
    k = len(members)
    if k < 2:
        raise RangeError(f"a hyperedge needs at least 2 members, got {k}")
    if len(set(members)) != k:
        raise ValueError(f"duplicate members in {members}")
    if piece.lam < 0:
        raise ParameterError(f"piece weight must be >= 0, got {piece.lam}")
    if not 1 <= piece.cap <= k // 2:
        raise CapTooLarge(f"cap {piece.cap} outside 1..{k // 2} for k={k}")
    if z0 is None or z1 is None:
        z0, z1 = max(members) + 1, max(members) + 2
    lam, Q = float(piece.lam), piece.cap
    mem = np.array(members, dtype=np.int64)
    pair_u = np.concatenate([mem, mem])
    pair_v = np.concatenate([np.full(k, z1), np.full(k, z0)]).astype(np.int64)
    theta = np.zeros((2 * k, 4))
    theta[:k, 2] = lam  # x_i = 1, z1 = 0
    theta[k:, 1] = lam  # x_i = 0, z0 = 1
    unary_v = np.array([z1, z0], dtype=np.int64)
    unary_theta = np.array([[0.0, lam * Q], [lam * Q, 0.0]])
    return GadgetFragment(members, z0, z1, lam, Q, pair_u, pair_v, theta, unary_v, unary_theta, -lam * Q)


def gadget_min_over_aux(fragment: GadgetFragment, x: LabelVector) -> float:
    """Minimum of the fragment over its two auxiliaries with members fixed to ``x``."""
    if len(x) != len(fragment.members):
        raise LengthMismatch(f"x has length {len(x)}, fragment has {len(fragment.members)} members")
    labels = dict(zip(fragment.members, x.bits))
    best = np.inf
    for z0 in (0, 1):
        for z1 in (0, 1):
            labels[fragment.z0] = z0
            labels[fragment.z1] = z1
            best = min(best, fragment.energy(labels))
    return best
