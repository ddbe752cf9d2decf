import itertools

import numpy as np
import pytest

from labeldisagree import (
    CapTooLarge,
    LabelVector,
    LengthMismatch,
    Piece,
    RangeError,
    ValidationError,
    build_gadget,
    builtin_specs,
    decompose_truncated,
    disagreement,
    gadget_min_over_aux,
    make_concave_spec,
)
from labeldisagree.reduction import is_submodular


def all_vectors(k):
    return [LabelVector(b) for b in itertools.product((0, 1), repeat=k)]


def test_trunclin_single_piece():
    dec = decompose_truncated(make_concave_spec("trunclin", 3, slope=1, cap=2), 3)
    assert dec.constant == 0
    assert dec.lambdas().tolist() == [0, 1, 0]
    assert [p.cap for p in dec.active()] == [2]


def test_sqrt_lambdas():
    # second differences of sqrt, evaluated symbolically to 20 digits
    dec = decompose_truncated(make_concave_spec("sqrt", 3), 3)
    expected = [0.58578643762690495120, 0.096376317177312804076, 0.31783724519578224473]
    assert dec.lambdas() == pytest.approx(expected, abs=1e-12)
    assert dec.reconstruct(2) == pytest.approx(np.sqrt(2), abs=1e-12)


def test_linear_single_top_piece():
    dec = decompose_truncated(make_concave_spec("power", 4, weight=1.7, p=1.0), 4)
    assert [(p.cap, p.lam) for p in dec.active()] == [(4, pytest.approx(1.7))]


def test_constant_carries_offset():
    dec = decompose_truncated(make_concave_spec("table", values=[2, 3, 3.5]), 2)
    assert dec.constant == 2
    assert dec.reconstruct(np.arange(3)).tolist() == pytest.approx([2, 3, 3.5])


def test_decompose_range_and_validation():
    with pytest.raises(RangeError):
        decompose_truncated(make_concave_spec("sqrt", 2), 3)
    with pytest.raises(ValidationError):
        decompose_truncated([0, 1, 4], 2)


def test_decompose_only_uses_prefix():
    # a table that turns convex beyond T_eff still decomposes on its prefix
    dec = decompose_truncated([0, 2, 3, 10], 2)
    assert dec.lambdas().tolist() == [1, 1]


@pytest.mark.parametrize("T", [1, 2, 3, 7, 16, 32])
def test_reconstruction_and_nonnegativity(T):
    t = np.arange(T + 1)
    for spec in builtin_specs(T).values():
        dec = decompose_truncated(spec, T)
        assert (dec.lambdas() >= 0).all()
        assert np.abs(dec.reconstruct(t) - spec.as_array()).max() < 1e-9
        assert len(dec.active()) <= T


@pytest.mark.parametrize(
    "lam, cap, x, expected",
    [
        (1.0, 1, "01", 1.0),
        (1.0, 2, "000001", 1.0),
        (2.0, 2, "00111", 4.0),
        (1.0, 2, "0011", 2.0),
        (1.0, 1, "0011", 1.0),
        (3.0, 2, "1111", 0.0),
    ],
)
def test_gadget_examples(lam, cap, x, expected):
    x = LabelVector.from_string(x)
    frag = build_gadget(Piece(cap, lam), range(len(x)))
    assert gadget_min_over_aux(frag, x) == expected


@pytest.mark.parametrize("k", range(2, 9))
def test_gadget_exact_all_vectors(k):
    for Q in range(1, k // 2 + 1):
        frag = build_gadget(Piece(Q, 0.75), list(range(10, 10 + k)))
        for x in all_vectors(k):
            n1 = sum(x.bits)
            assert gadget_min_over_aux(frag, x) == pytest.approx(0.75 * min(n1, k - n1, Q), abs=1e-12)


def test_gadget_terms_submodular():
    frag = build_gadget(Piece(2, 1.3), [3, 1, 4, 5, 9])
    assert all(is_submodular(t) for t in frag.pair_theta)
    assert frag.z0 == 10 and frag.z1 == 11


def test_gadget_errors():
    with pytest.raises(CapTooLarge):
        build_gadget(Piece(3, 1.0), range(5))
    with pytest.raises(RangeError):
        build_gadget(Piece(1, 1.0), [0])
    frag = build_gadget(Piece(1, 1.0), range(4))
    with pytest.raises(LengthMismatch):
        gadget_min_over_aux(frag, LabelVector("000"))


@pytest.mark.parametrize("k", range(2, 9))
def test_potential_reassembly(k):
    for spec in builtin_specs(4).values():
        dec = decompose_truncated(spec, k // 2)
        frags = [build_gadget(p, range(k)) for p in dec.active()]
        for x in all_vectors(k):
            total = dec.constant + sum(gadget_min_over_aux(f, x) for f in frags)
            assert total == pytest.approx(disagreement(spec, x), abs=1e-9)
