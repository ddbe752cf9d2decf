"""Hypergraph energies: exact minimization by min cut, and a brute-force oracle.

The energy of an assignment ``x`` is the sum of the chosen unary costs plus,
for every hyperedge, the disagreement penalty of ``x`` restricted to it.

Cut convention: label 1 is the source side.  A variable with unary costs
``(c0, c1)`` gets an arc source -> i of ``c0 - m`` and i -> sink of
``c1 - m`` with ``m = min(c0, c1)`` moved into the constant.  A submodular
pairwise term ``theta(x_u, x_v)`` is split into its constant, two unary
parts and an arc ``v -> u`` of weight ``θ01 + θ10 - θ00 - θ11``, which is cut
exactly when ``x_u = 0`` and ``x_v = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import ConcaveSpec, LabelVector, disagreement, make_concave_spec
from .errors import LengthMismatch, SemanticError, TooLarge
from .maxflow import max_flow as _max_flow
from .reduction import build_gadget, decompose_truncated

#: fixed-point scale applied to real costs before the flow computation
SCALE = 1 << 20
BRUTE_MAX_N = 20
_CAP_LIMIT = 1 << 62


@dataclass(frozen=True)
class Instance:
    n: int
    unary: tuple[tuple[float, float], ...]
    hyperedges: tuple[tuple[tuple[int, ...], ConcaveSpec], ...] = ()

    def __init__(self, n: int, unary, hyperedges=()):
        n = int(n)
        if n < 1:
            raise SemanticError(f"need at least one node, got {n}")
        unary = tuple((float(c0), float(c1)) for c0, c1 in unary)
        if len(unary) != n:
            raise SemanticError(f"{len(unary)} unary pairs for {n} nodes")
        for i, pair in enumerate(unary):
            if not all(math.isfinite(c) for c in pair):
                raise SemanticError(f"unary cost of node {i} is not finite")
        edges = []
        for j, (members, spec) in enumerate(hyperedges):
            members = tuple(int(m) for m in members)
            if len(members) < 2:
                raise SemanticError("a hyperedge needs at least 2 members", j)
            if len(set(members)) != len(members):
                raise SemanticError(f"duplicate member in {list(members)}", j)
            bad = [m for m in members if not 0 <= m < n]
            if bad:
                raise SemanticError(f"member id {bad[0]} out of range 0..{n - 1}", j)
            if not isinstance(spec, ConcaveSpec):
                raise SemanticError("penalty must be a validated ConcaveSpec", j)
            if spec.T < len(members) // 2:
                raise SemanticError(
                    f"g sampled up to {spec.T}, edge of size {len(members)} needs {len(members) // 2}", j
                )
            edges.append((members, spec))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "unary", unary)
        object.__setattr__(self, "hyperedges", tuple(edges))


@dataclass(frozen=True, eq=False)
class CutGraph:
    """Pairwise-submodular energy in arc form over original + auxiliary variables.

    ``*_real`` arrays hold the exact real weights; ``caps``, ``src`` and ``snk``
    are the same weights rounded to multiples of ``1 / scale``.
    """

    n_vars: int
    n_original: int
    tails: np.ndarray
    heads: np.ndarray
    caps_real: np.ndarray
    src_real: np.ndarray
    snk_real: np.ndarray
    offset: float
    scale: int = SCALE
    caps: np.ndarray = field(init=False)
    src: np.ndarray = field(init=False)
    snk: np.ndarray = field(init=False)

    def __post_init__(self):
        total = 0
        for name in ("caps", "src", "snk"):
            real = getattr(self, name + "_real")
            scaled = np.rint(real * self.scale)
            if scaled.size and (not np.isfinite(scaled).all() or scaled.max() >= _CAP_LIMIT):
                raise OverflowError(f"{name} capacity exceeds the int64 range at scale {self.scale}")
            total += float(scaled.sum())
            object.__setattr__(self, name, scaled.astype(np.int64))
        if total >= _CAP_LIMIT:
            raise OverflowError(f"total capacity {total:.3g} exceeds the int64 range")

    @property
    def n_aux(self) -> int:
        return self.n_vars - self.n_original

    def energy(self, labels) -> float:
        """Real-valued pairwise energy at a full labelling (original + aux)."""
        x = np.asarray(labels, dtype=bool)
        if len(x) != self.n_vars:
            raise LengthMismatch(f"{len(x)} labels for {self.n_vars} variables")
        cut = self.caps_real[x[self.tails] & ~x[self.heads]].sum()
        cut += self.src_real[~x].sum() + self.snk_real[x].sum()
        return float(self.offset + cut)


@dataclass
class Solution:
    assignment: LabelVector
    energy: float
    method: str
    stats: dict = field(default_factory=dict)


def instance_energy(inst: Instance, x: LabelVector) -> float:
    if len(x) != inst.n:
        raise LengthMismatch(f"assignment of length {len(x)} for {inst.n} nodes")
    bits = x.bits
    total = 0.0
    for (c0, c1), b in zip(inst.unary, bits):
        total += c1 if b else c0
    for members, spec in inst.hyperedges:
        total += disagreement(spec, LabelVector(bits[m] for m in members))
    return total


def minimize_bruteforce(inst: Instance) -> Solution:
    """Exact minimum over all ``2**n`` assignments.

    Ties go to the smallest assignment read as an integer, node 0 first.
    """
    n = inst.n
    if n > BRUTE_MAX_N:
        raise TooLarge(f"brute force is limited to {BRUTE_MAX_N} nodes, got {n}")
    masks = np.arange(1 << n, dtype=np.int64)
    cols = [((masks >> (n - 1 - i)) & 1).astype(np.uint8) for i in range(n)]
    E = np.zeros(1 << n)
    for (c0, c1), col in zip(inst.unary, cols):
        E += np.where(col == 1, c1, c0)
    for members, spec in inst.hyperedges:
        k = len(members)
        cnt = np.zeros(1 << n, dtype=np.int64)
        for m in members:
            cnt += cols[m]
        E += spec.as_array()[np.minimum(cnt, k - cnt)]
    best = int(np.argmin(E))
    x = LabelVector.from_int(best, n)
    return Solution(x, instance_energy(inst, x), "brute", {"assignments": 1 << n})


def assemble_energy(inst: Instance) -> CutGraph:
    """Compile unaries and hyperedge penalties into one cut graph.

    Auxiliary ids start at ``n`` and are handed out in hyperedge order, then
    piece order, ``z0`` before ``z1``.  Pieces lighter than the drop
    tolerance are skipped.
    """
    n = inst.n
    offset = 0.0
    fragments = []
    next_id = n
    for members, spec in inst.hyperedges:
        dec = decompose_truncated(spec, len(members) // 2)
        offset += dec.constant
        for piece in dec.active():
            fragments.append(build_gadget(piece, members, next_id, next_id + 1))
            next_id += 2
    n_vars = next_id

    c0 = np.zeros(n_vars)
    c1 = np.zeros(n_vars)
    c0[:n] = [u[0] for u in inst.unary]
    c1[:n] = [u[1] for u in inst.unary]
    if fragments:
        offset += sum(f.constant for f in fragments)
        uv = np.concatenate([f.unary_v for f in fragments])
        ut = np.concatenate([f.unary_theta for f in fragments])
        np.add.at(c0, uv, ut[:, 0])
        np.add.at(c1, uv, ut[:, 1])
        pu = np.concatenate([f.pair_u for f in fragments])
        pv = np.concatenate([f.pair_v for f in fragments])
        th = np.concatenate([f.pair_theta for f in fragments])
        t00, t01, t10, t11 = th.T
        offset += float(t00.sum())
        np.add.at(c1, pu, t10 - t00)
        np.add.at(c1, pv, t11 - t10)
        w = t01 + t10 - t00 - t11
        if (w < 0).any():
            raise ValueError("non-submodular pairwise term in assembled energy")
        keep = w > 0
        tails, heads, caps = pv[keep], pu[keep], w[keep]
    else:
        tails = heads = np.zeros(0, np.int64)
        caps = np.zeros(0)
    m = np.minimum(c0, c1)
    offset += float(m.sum())
    return CutGraph(n_vars, n, tails, heads, caps, c0 - m, c1 - m, offset)


def max_flow(graph: CutGraph) -> tuple[int, np.ndarray, dict]:
    """Integral max flow on the fixed-point capacities of ``graph``.

    The boolean array marks the source side (label 1) of the minimum cut.
    """
    return _max_flow(graph.n_vars, graph.tails, graph.heads, graph.caps, graph.src, graph.snk)


def minimize_cut(inst: Instance) -> Solution:
    graph = assemble_energy(inst)
    flow, side, stats = max_flow(graph)
    x = LabelVector(side[: inst.n].astype(int))
    stats.update(
        flow=flow,
        cut_energy=graph.offset + flow / graph.scale,
        variables=graph.n_vars,
        auxiliary=graph.n_aux,
    )
    return Solution(x, instance_energy(inst, x), "cut", stats)


def random_penalty(rng: np.random.Generator, T: int) -> ConcaveSpec:
    """One penalty drawn from the builtin families (plus random concave tables)."""
    weight = float(rng.uniform(0.0, 5.0))
    family = int(rng.integers(6))
    if family == 0:
        return make_concave_spec("sqrt", T, weight)
    if family == 1:
        return make_concave_spec("log1p", T, weight)
    if family == 2:
        return make_concave_spec("power", T, weight, p=float(rng.uniform(0.05, 1.0)))
    if family == 3:
        return make_concave_spec("power", T, weight, p=1.0)
    if family == 4:
        return make_concave_spec(
            "trunclin", T, weight, slope=float(rng.uniform(0.0, 3.0)), cap=int(rng.integers(1, 5))
        )
    steps = np.sort(rng.uniform(0.0, 3.0, T))[::-1]
    values = np.concatenate([[rng.uniform(0.0, 1.0)], steps]).cumsum()
    return make_concave_spec("table", T, weight, values=values.tolist())


def random_instance(
    seed: int,
    *,
    n_range: tuple[int, int] = (2, 16),
    max_edges: int = 5,
    max_edge_size: int = 8,
    unary_high: float = 10.0,
    families: Sequence[str] | None = None,
) -> Instance:
    """Seeded random instance.

    Node count is uniform in ``n_range``, the edge count in ``0..max_edges``,
    each edge size in ``2..min(max_edge_size, n)``; unary costs are uniform in
    ``[0, unary_high]``.  ``families=["sqrt"]`` pins the penalty to unit-weight
    square root; by default penalties come from :func:`random_penalty`.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    unary = rng.uniform(0.0, unary_high, size=(n, 2)).tolist()
    edges = []
    if n >= 2:
        for _ in range(int(rng.integers(0, max_edges + 1))):
            k = int(rng.integers(2, min(max_edge_size, n) + 1))
            members = sorted(rng.choice(n, size=k, replace=False).tolist())
            if families:
                spec = make_concave_spec(str(rng.choice(families)), k // 2)
            else:
                spec = random_penalty(rng, k // 2)
            edges.append((members, spec))
    return Instance(n, unary, edges)
