import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from kmvir.errors import AlgebraMismatchError, TruncationError
from kmvir.fock import (
    J,
    L,
    ModuleVector,
    apply_generator,
    apply_word,
    basis_up_to,
    classical_monomial,
    classical_product,
    enumerate_basis,
    format_monomial,
    module_spec,
    normal_order,
    parse_monomial,
    project_vacuum,
    reduce_word,
    vacuum,
)
from kmvir.scalars import ONE, rf, symbol

k, c = symbol("k"), symbol("c")
E, H, F = 0, 1, 2


def _series(dim_g, with_virasoro, degree):
    q = sympy.Symbol("q")
    expr = sympy.Integer(1)
    for j in range(1, degree + 1):
        expr *= (1 - q**j) ** (-dim_g)
        if with_virasoro and j >= 2:
            expr /= 1 - q**j
    poly = sympy.series(expr, q, 0, degree + 1).removeO()
    return [int(poly.coeff(q, d)) for d in range(degree + 1)]


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("kind,lie,dim_g,vir", [("KacMoody", 2, 3, False), ("Virasoro", None, 0, True), ("Semidirect", 2, 3, True)])
def test_basis_counts_match_generating_function(kind, lie, dim_g, vir, n):
    spec = module_spec(kind, lie, n, 6)
    assert [len(enumerate_basis(spec, d)) for d in range(7)] == _series(dim_g, vir, 6)


def test_sl3_counts():
    spec = module_spec("KacMoody", 3, 0, 4)
    assert [len(enumerate_basis(spec, d)) for d in range(5)] == _series(8, False, 4)


def test_basis_words_are_canonical():
    spec = module_spec("Semidirect", 2, 1, 4)
    for w in basis_up_to(spec, 4):
        assert list(w) == sorted(w)
        assert all(spec.is_creation(g) for g in w)
        assert normal_order(w, spec) == ModuleVector(spec, {w: 1})


def test_small_products_n0():
    spec = module_spec("Semidirect", 2, 0, 4)
    vac = vacuum(spec)
    assert apply_word([J(E, 0), J(F, -1)], vac) == apply_generator(J(H, -1), vac)
    assert apply_word([J(H, 1), J(H, -1)], vac) == vac * (2 * k)
    assert apply_word([J(E, 1), J(F, -1)], vac) == vac * k
    assert apply_word([L(2), L(-2)], vac) == vac * (c / 2)
    assert apply_word([L(0), J(E, -1)], vac) == apply_generator(J(E, -1), vac)
    assert apply_word([L(1), J(E, -1)], vac) == 0
    assert apply_generator(J(E, 0), vac) == 0
    assert apply_generator(L(-1), vac) == 0


def test_level_structure_moves_the_vacuum():
    spec = module_spec("Semidirect", 2, 1, 4)
    vac = vacuum(spec)
    assert not apply_generator(J(E, 0), vac).is_zero()
    assert apply_generator(J(E, 1), vac) == 0
    assert not apply_generator(L(0), vac).is_zero()
    assert apply_generator(L(1), vac) == 0
    assert spec.weight(J(E, 0)) == 1 and spec.weight(L(0)) == 2


def test_truncation_is_enforced():
    spec = module_spec("KacMoody", 2, 0, 2)
    with pytest.raises(TruncationError):
        normal_order([J(E, -3)], spec)
    with pytest.raises(TruncationError):
        enumerate_basis(spec, 3)


def test_generator_checks():
    spec = module_spec("KacMoody", 2, 0, 2)
    with pytest.raises(AlgebraMismatchError):
        apply_generator(L(-2), vacuum(spec))
    with pytest.raises(AlgebraMismatchError):
        apply_generator(J(5, -1), vacuum(spec))


def test_monomial_text_roundtrip():
    spec = module_spec("Semidirect", 2, 0, 6)
    for w in basis_up_to(spec, 3):
        assert parse_monomial(format_monomial(w, spec), spec) == w
    assert format_monomial((J(H, -1), L(-2)), spec) == "J[a=H,m=-1] L[m=-2] |0;n=0>"


gens = st.one_of(
    st.builds(J, st.integers(0, 2), st.integers(-2, 2)),
    st.builds(L, st.integers(-2, 2)),
)


def _fits(spec, word):
    total, top = 0, 0
    for g in reversed(word):
        total += spec.weight(g)
        top = max(top, total)
    return top <= spec.truncation_degree


@settings(max_examples=80, deadline=None)
@given(st.lists(gens, max_size=4), st.integers(0, 1))
def test_rewriting_is_confluent(word, n):
    spec = module_spec("Semidirect", 2, n, 5)
    if not _fits(spec, word):
        return
    a = apply_word(word, vacuum(spec))
    assert reduce_word(word, spec, "leftmost") == a
    assert reduce_word(word, spec, "rightmost") == a


@settings(max_examples=80, deadline=None)
@given(st.lists(gens, max_size=4))
def test_normal_order_preserves_conformal_degree(word):
    spec = module_spec("Semidirect", 2, 0, 5)
    if not _fits(spec, word):
        return
    v = apply_word(word, vacuum(spec))
    assert v.is_zero() or v.degree == -sum(g.mode for g in word)


@settings(max_examples=60, deadline=None)
@given(st.lists(gens, max_size=3), st.lists(gens, max_size=3))
def test_classical_product_is_commutative(a, b):
    spec = module_spec("Semidirect", 2, 0, 40, "Classical")
    x, y = classical_monomial(spec, a, 2), classical_monomial(spec, b, k)
    assert classical_product(x, y) == classical_product(y, x)
    assert classical_product(x, classical_monomial(spec, [], 1)) == x


def test_projection_drops_annihilators():
    spec = module_spec("KacMoody", 2, 0, 10, "Classical")
    v = classical_monomial(spec, [J(E, -1)]) + classical_monomial(spec, [J(E, -1), J(F, 0)])
    assert project_vacuum(v) == classical_monomial(spec, [J(E, -1)])


def test_vector_arithmetic():
    spec = module_spec("KacMoody", 2, 0, 2)
    v = normal_order([J(E, -1)], spec)
    assert v - v == 0
    assert (v * rf(2) / 2) == v
    assert v.coefficient((J(E, -1),)) == ONE
    assert v.to_text() == "1 * J[a=E,m=-1] |0;n=0>"
