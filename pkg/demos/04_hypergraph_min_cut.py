# Unary costs plus hyperedge disagreement penalties, minimized exactly by a
# single minimum cut and cross-checked against enumeration.
import time
from pathlib import Path

import numpy as np

from labeldisagree import Instance, make_concave_spec, minimize_bruteforce, minimize_cut, parse_instance, random_instance

inst = parse_instance((Path(__file__).parent / "three_node.json").read_text())
print("three nodes:", minimize_cut(inst).assignment, minimize_bruteforce(inst).energy)

gaps = []
for seed in range(20):
    r = random_instance(seed)
    gaps.append(abs(minimize_cut(r).energy - minimize_bruteforce(r).energy))
print("largest cut/brute gap over 20 random instances:", max(gaps))

# a larger problem: 10k nodes, 2k hyperedges of up to 20 members
rng = np.random.default_rng(0)
n = 10_000
edges = []
for _ in range(2_000):
    size = int(rng.integers(2, 21))
    edges.append((rng.choice(n, size, replace=False).tolist(), make_concave_spec("sqrt", size // 2)))
big = Instance(n, rng.uniform(0, 10, (n, 2)).tolist(), edges)
start = time.perf_counter()
sol = minimize_cut(big)
print(f"10k nodes: energy {sol.energy:.3f} in {time.perf_counter() - start:.2f}s,",
      sol.stats["auxiliary"], "auxiliary variables,", sol.stats["arcs"], "arcs")
