import itertools
import math

import pytest
from hypothesis import given, strategies as st

from labeldisagree import (
    LabelVector,
    LengthMismatch,
    RangeError,
    builtin_specs,
    classify_case,
    deviation,
    dominant_label,
    find_counterexample,
    join_meet,
    kappa_profile,
    make_concave_spec,
    submodular_margin,
    verify_exhaustive,
    verify_sampled,
)
from labeldisagree.core import Majority
from labeldisagree.verifier import ProofCase

SQUARES = [float(t * t) for t in range(40)]
V = LabelVector.from_string


def naive_sweep(table, k):
    """Independent reference: plain tuples, direct counting, lexicographic order."""
    def d(x):
        n1 = sum(x)
        return table[min(n1, k - n1)]

    out, low = [], math.inf
    vecs = list(itertools.product((0, 1), repeat=k))
    for a in vecs:
        for b in vecs:
            j = tuple(x | y for x, y in zip(a, b))
            m = tuple(x & y for x, y in zip(a, b))
            margin = (d(a) + d(b)) - (d(j) + d(m))
            low = min(low, margin)
            if margin < -1e-9:
                out.append((a, b, margin))
    return low, out


def test_join_meet_table_rows():
    assert join_meet(V("0011"), V("0101")) == (V("0111"), V("0001"))
    assert join_meet(V("10"), V("01")) == (V("11"), V("00"))
    x = V("01101")
    assert join_meet(x, x) == (x, x)
    with pytest.raises(LengthMismatch):
        join_meet(V("00"), V("011"))


def test_kappa_profile():
    assert kappa_profile(V("0011"), V("0101")).as_tuple() == (1, 1, 1, 1)
    assert kappa_profile(V("10"), V("01")).as_tuple() == (0, 1, 1, 0)
    x = V("0110100")
    assert kappa_profile(x, x).as_tuple() == (4, 0, 0, 3)
    with pytest.raises(LengthMismatch):
        kappa_profile(V("0"), V("01"))


def test_margin_sqrt_example():
    # 2*sqrt(2) - 2, evaluated symbolically
    assert submodular_margin(make_concave_spec("sqrt", 2), V("0011"), V("0101")) == pytest.approx(
        0.82842712474619009760, abs=1e-12
    )


def test_margin_convex_example():
    assert submodular_margin(SQUARES, V("000011"), V("000101")) == -2.0
    assert kappa_profile(V("000011"), V("000101")).as_tuple() == (3, 1, 1, 1)


def test_margin_range_error():
    with pytest.raises(RangeError):
        submodular_margin(make_concave_spec("sqrt", 1), V("0000"), V("0001"))


@pytest.mark.parametrize(
    "a, b, case, kappa",
    [
        ("00", "00", ProofCase.JOIN_ZERO, (2, 0, 0, 0)),
        ("11000", "01100", ProofCase.JOIN_ONE_MEET_ZERO, (2, 1, 1, 1)),
        ("01", "01", ProofCase.TIE_INVOLVED, (1, 0, 0, 1)),
        ("111", "110", ProofCase.MEET_ONE, (0, 0, 1, 2)),
    ],
)
def test_classify_case(a, b, case, kappa):
    got, prof = classify_case(V(a), V(b))
    assert got is case
    assert prof.as_tuple() == kappa


@pytest.mark.parametrize("k", range(1, 6))
@pytest.mark.parametrize("table", [SQUARES, [math.sqrt(t) for t in range(10)], [0, 1, 1, 5, 5]])
def test_exhaustive_matches_naive(k, table):
    if len(table) - 1 < k // 2:
        pytest.skip("table too short")
    low, viol = naive_sweep(table, k)
    rep = verify_exhaustive(table, k)
    assert rep.pairs_checked == 4**k
    assert rep.min_margin == low
    assert rep.n_violations == len(viol)
    assert [(v.a.bits, v.b.bits, v.margin) for v in rep.violations] == viol


def test_exhaustive_sqrt_k6():
    rep = verify_exhaustive(make_concave_spec("sqrt", 3), 6)
    assert rep.pairs_checked == 4096
    assert rep.violations == [] and rep.ok
    assert rep.min_margin == 0.0  # attained on comparable pairs


@pytest.mark.parametrize("name", list(builtin_specs(1)))
def test_exhaustive_k1_trivial(name):
    rep = verify_exhaustive(builtin_specs(1)[name], 1)
    assert rep.pairs_checked == 4 and rep.ok


def test_exhaustive_convex_contains_known_pair_up_to_permutation():
    rep = verify_exhaustive(SQUARES, 6)
    assert rep.n_violations > 0
    target = sorted(zip(V("000011").bits, V("000101").bits))
    assert any(sorted(zip(v.a.bits, v.b.bits)) == target for v in rep.violations)
    assert all(v.margin < -1e-9 for v in rep.violations)


def test_exhaustive_bounds():
    with pytest.raises(RangeError):
        verify_exhaustive(make_concave_spec("sqrt", 7), 14)
    with pytest.raises(RangeError):
        verify_exhaustive(make_concave_spec("sqrt", 7), 0)
    with pytest.raises(RangeError):
        verify_exhaustive(make_concave_spec("sqrt", 2), 6)


def test_max_violations_caps_list_not_count():
    full = verify_exhaustive(SQUARES, 6)
    capped = verify_exhaustive(SQUARES, 6, max_violations=5)
    assert capped.violations == full.violations[:5]
    assert capped.n_violations == full.n_violations


def test_parallel_equals_sequential():
    for g in (SQUARES, make_concave_spec("sqrt", 4)):
        assert verify_exhaustive(g, 9, workers=3) == verify_exhaustive(g, 9)


def test_sampled_sqrt_clean_and_deterministic():
    spec = make_concave_spec("sqrt", 32)
    r1 = verify_sampled(spec, 64, 200_000, seed=1)
    r2 = verify_sampled(spec, 64, 200_000, seed=1)
    assert r1.ok and r1.pairs_checked == 200_000
    assert r1 == r2
    # the seed does select the stream
    assert verify_sampled(SQUARES, 64, 1000, seed=2) != verify_sampled(SQUARES, 64, 1000, seed=3)


def test_sampled_convex_finds_violations():
    rep = verify_sampled(SQUARES, 64, 100_000, seed=1, max_violations=10)
    assert rep.n_violations > 0 and len(rep.violations) == 10
    for v in rep.violations:
        assert submodular_margin(SQUARES, v.a, v.b) == v.margin


def test_find_counterexample_convex():
    hit = find_counterexample(SQUARES, 6)
    assert hit is not None
    assert hit.margin == -2.0
    assert submodular_margin(SQUARES, hit.a, hit.b) == -2.0
    # lexicographically first violating pair
    assert (str(hit.a), str(hit.b)) == ("000001", "000010")


def test_find_counterexample_budget():
    # the first violation sits at pair index 1*64 + 2; a budget of 66 stops just short
    assert find_counterexample(SQUARES, 6, budget=66) is None
    assert find_counterexample(SQUARES, 6, budget=67) is not None


def test_find_counterexample_concave_absent():
    assert find_counterexample([math.sqrt(t) for t in range(5)], 8) is None
    assert find_counterexample([min(t, 2) for t in range(3)], 5) is None


def test_find_counterexample_sampled_path():
    hit = find_counterexample(SQUARES, 40, budget=50_000)
    assert hit is not None and hit.margin < 0
    assert find_counterexample([math.sqrt(t) for t in range(21)], 40, budget=20_000) is None


def test_find_counterexample_needs_k2():
    with pytest.raises(RangeError):
        find_counterexample(SQUARES, 1)


pairs = st.integers(1, 12).flatmap(
    lambda k: st.tuples(
        st.lists(st.integers(0, 1), min_size=k, max_size=k), st.lists(st.integers(0, 1), min_size=k, max_size=k)
    )
)


@given(pairs)
def test_margin_symmetry_and_nonnegativity(ab):
    a, b = map(LabelVector, ab)
    for spec in builtin_specs(6).values():
        m = submodular_margin(spec, a, b)
        assert m == submodular_margin(spec, b, a)
        assert m >= -1e-9


@given(pairs)
def test_chain_pairs_are_modular(ab):
    a, b = map(LabelVector, ab)
    meet, join = join_meet(a, b)[1], join_meet(a, b)[0]
    # meet <= join componentwise
    assert submodular_margin(SQUARES, meet, join) == 0.0
    assert submodular_margin(make_concave_spec("sqrt", 6), meet, join) == 0.0


@given(pairs)
def test_table_identities(ab):
    a, b = map(LabelVector, ab)
    k1, k2, k3, k4 = kappa_profile(a, b).as_tuple()
    join, meet = join_meet(a, b)
    assert k1 + k2 + k3 + k4 == len(a)
    assert deviation(join) == min(k1, k2 + k3 + k4)
    assert deviation(meet) == min(k1 + k2 + k3, k4)


@given(pairs)
def test_case_implications(ab):
    a, b = map(LabelVector, ab)
    join, meet = join_meet(a, b)
    rj, rm = dominant_label(join)[0], dominant_label(meet)[0]
    if rj is Majority.ZERO:
        assert rm is Majority.ZERO
    if rm is Majority.ONE:
        assert rj is Majority.ONE
    assert classify_case(a, b)[0] is not ProofCase.JOIN_ZERO_MEET_ONE


@pytest.mark.parametrize("T", [4, 8])
def test_slope_inequality_of_first_case(T):
    # [g(k2+k4) - g(k4)]/k2 >= [g(k2+k3+k4) - g(k3+k4)]/k2 for validated g
    for spec in builtin_specs(T).values():
        g = spec.samples
        for k2, k3, k4 in itertools.product(range(T + 1), repeat=3):
            if k2 == 0 or k2 + k3 + k4 > T:
                continue
            lhs = (g[k2 + k4] - g[k4]) / k2
            rhs = (g[k2 + k3 + k4] - g[k3 + k4]) / k2
            assert lhs >= rhs - 1e-12
