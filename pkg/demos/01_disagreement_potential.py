# The disagreement potential of a binary vector: how many coordinates
# disagree with the majority label, passed through a concave penalty.
import numpy as np

from labeldisagree import LabelVector, builtin_specs, deviation, disagreement, dominant_label, make_concave_spec

x = LabelVector.from_string("1011")
print(x, dominant_label(x))            # (Majority.ONE, n0=1, n1=3)
print("deviation", deviation(x))        # 1

# ties have no dominant label, but the deviation min(n0, n1) is still defined
tie = LabelVector.from_string("0011")
print(tie, dominant_label(tie), deviation(tie))

# a few penalty families sampled on 0..T
for name, spec in builtin_specs(4).items():
    print(f"{name:14s}", np.round(spec.samples, 4))

# the potential itself; unanimous vectors cost nothing
g = make_concave_spec("sqrt", 4)
for s in ("00000000", "00000001", "00000011", "00001111", "11111110"):
    print(s, round(disagreement(g, LabelVector.from_string(s)), 4))

# convex tables are refused at construction
try:
    make_concave_spec("table", values=[0, 1, 4])
except ValueError as exc:
    print("rejected:", exc)
