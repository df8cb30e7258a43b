from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kmvir.errors import AlgebraMismatchError, NotSimpleError
from kmvir.lie_core import LieVector, bracket, build_sl, check_invariants, dual_basis, form, with_constant


def _matrix(label, N):
    """Matrix of a basis label (E_ij or H_i), the independent model for sl_N."""
    m = np.zeros((N, N), dtype=object)
    if label in ("E", "H", "F"):
        label = {"E": "E12", "H": "H1", "F": "E21"}[label]
    if label[0] == "E":
        m[int(label[1]) - 1, int(label[2]) - 1] = 1
    else:
        i = int(label[1]) - 1
        m[i, i], m[i + 1, i + 1] = 1, -1
    return m


def _to_matrix(v: LieVector, N):
    out = np.zeros((N, N), dtype=object)
    for a, x in v.coeffs.items():
        out = out + _matrix(v.algebra.basis_labels[a], N) * x
    return out


@pytest.mark.parametrize("N", [2, 3, 4])
def test_brackets_match_matrix_commutators(N):
    g = build_sl(N)
    basis = g.basis()
    for x, y in product(basis, repeat=2):
        mx, my = _to_matrix(x, N), _to_matrix(y, N)
        assert (_to_matrix(bracket(g, x, y), N) == mx.dot(my) - my.dot(mx)).all()
        assert form(g, x, y) == np.trace(mx.dot(my))


@pytest.mark.parametrize("N", [2, 3])
def test_shape_and_invariants(N):
    g = build_sl(N)
    assert (g.dimension, g.rank, g.dual_coxeter) == (N * N - 1, N - 1, N)
    assert check_invariants(g) == []


def test_sl2_conventions():
    g = build_sl(2)
    assert g.basis_labels == ("E", "H", "F")
    e, h, f = g.basis()
    assert bracket(g, h, e) == 2 * e
    assert bracket(g, e, f) == h
    assert form(g, h, h) == 2 and form(g, e, f) == 1


def test_dual_basis_pairs_to_identity():
    for N in (2, 3):
        g = build_sl(N)
        for a, b in product(range(g.dimension), repeat=2):
            assert form(g, g.basis()[a], dual_basis(g)[b]) == Fraction(int(a == b))


def test_casimir_pairs_sl2():
    g = build_sl(2)
    assert set(g.casimir_pairs) == {(0, 2, Fraction(1)), (1, 1, Fraction(1, 2)), (2, 0, Fraction(1))}


def test_corrupted_constant_is_detected():
    g = build_sl(2)
    e = g.basis_labels.index("E")
    h = g.basis_labels.index("H")
    bad = with_constant(g, h, e, [(e, 3)])
    assert bad != g
    assert check_invariants(bad)


def test_errors():
    with pytest.raises(NotSimpleError):
        build_sl(1)
    g2, g3 = build_sl(2), build_sl(3)
    with pytest.raises(AlgebraMismatchError):
        bracket(g2, g2.basis()[0], g3.basis()[0])


@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8), st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_form_is_invariant_and_symmetric(xs, ys):
    g = build_sl(3)
    x = LieVector(g, dict(enumerate(xs)))
    y = LieVector(g, dict(enumerate(ys)))
    assert form(g, x, y) == form(g, y, x)
    assert bracket(g, x, y) == -1 * bracket(g, y, x)
    for z in g.basis():
        assert form(g, bracket(g, z, x), y) + form(g, x, bracket(g, z, y)) == 0
