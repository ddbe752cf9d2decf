# A concave penalty as a sum of truncated-linear pieces lam * min(t, Q), and the
# two-auxiliary gadget that turns each piece into a graph-representable energy.
import itertools

import numpy as np

from labeldisagree import LabelVector, build_gadget, decompose_truncated, gadget_min_over_aux, make_concave_spec

k = 6
spec = make_concave_spec("sqrt", k // 2)
dec = decompose_truncated(spec, k // 2)
for p in dec.pieces:
    print(f"Q={p.cap}  lambda={p.lam:.8f}")
t = np.arange(k // 2 + 1)
print("reconstruction residual", np.abs(dec.reconstruct(t) - spec.as_array()).max())

# each piece over a hyperedge of 6 members, minimized over its two auxiliaries
frags = [build_gadget(p, range(k)) for p in dec.active()]
for bits in itertools.islice(itertools.product((0, 1), repeat=k), 0, 64, 5):
    x = LabelVector(bits)
    via_gadgets = dec.constant + sum(gadget_min_over_aux(f, x) for f in frags)
    n1 = sum(bits)
    print(x, round(via_gadgets, 6), round(float(spec.samples[min(n1, k - n1)]), 6))
