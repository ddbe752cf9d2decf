# Checking d(a) + d(b) >= d(a|b) + d(a&b) over the whole Boolean lattice.
from labeldisagree import (
    LabelVector,
    builtin_specs,
    classify_case,
    find_counterexample,
    join_meet,
    submodular_margin,
    verify_exhaustive,
    verify_sampled,
)

a, b = LabelVector.from_string("0011"), LabelVector.from_string("0101")
join, meet = join_meet(a, b)
case, kappa = classify_case(a, b)
print(f"a={a} b={b} join={join} meet={meet} kappa={kappa.as_tuple()} case={case.value}")

# every builtin family, every pair up to k = 10
for name, spec in builtin_specs(5).items():
    worst = min(verify_exhaustive(spec, k).min_margin for k in range(1, 11))
    print(f"{name:14s} smallest margin over k<=10: {worst:.3g}")

# a convex penalty breaks the inequality
squares = [t * t for t in range(40)]
rep = verify_exhaustive(squares, 6, max_violations=3)
print("t^2, k=6:", rep.n_violations, "violating pairs, min margin", rep.min_margin)
print(" 000011 / 000101 margin:", submodular_margin(squares, LabelVector.from_string("000011"),
                                                     LabelVector.from_string("000101")))
print(" first found:", find_counterexample(squares, 6))

# beyond k = 13, random pairs with mixed label densities
print("sqrt, k=64:", verify_sampled(builtin_specs(32)["sqrt"], 64, 200_000, seed=1).n_violations, "violations")
print("t^2,  k=64:", verify_sampled(squares, 64, 200_000, seed=1).n_violations, "violations")
