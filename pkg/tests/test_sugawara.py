from fractions import Fraction

import pytest

from kmvir.errors import CriticalLevelError, DomainError, TruncationError
from kmvir.fock import J, L, apply_generator, apply_word, module_spec, normal_order, vacuum
from kmvir.scalars import ONE, ZERO, rf, symbol
from kmvir.sugawara import (
    SugawaraConfig,
    casimir_mode,
    embed_virasoro,
    shifted_mode,
    sigma_block,
    singular_vector,
    sugawara_mode,
    tensor_iso,
    tensor_iso_inverse,
    tensor_iso_inverse_many,
)

k, c = symbol("k"), symbol("c")
E, H, F = 0, 1, 2


def _by_hand_minus_two(spec):
    """(1 / 2(k + h)) sum_ab w_ab J^a_{-1} J^b_{-1} vac, straight from the inverse Gram matrix."""
    g = spec.lie
    out = vacuum(spec) * 0
    for a, b, w in g.casimir_pairs:
        out = out + normal_order([J(a, -1), J(b, -1)], spec) * rf(w)
    return out / (2 * (k + g.dual_coxeter))


@pytest.mark.parametrize("N", [2, 3])
def test_minus_two_mode_on_vacuum(N):
    spec = module_spec("KacMoody", N, 0, 2)
    assert sugawara_mode(-2, vacuum(spec)) == _by_hand_minus_two(spec)


@pytest.mark.parametrize("N,charge", [(2, 3 * k / (k + 2)), (3, 8 * k / (k + 3))])
def test_central_charge_from_two_point_function(N, charge):
    spec = module_spec("KacMoody", N, 0, 2)
    v = sugawara_mode(-2, vacuum(spec))
    assert sugawara_mode(2, v) == vacuum(spec) * (charge / 2)
    assert SugawaraConfig(spec).central_charge == charge


def test_zero_mode_measures_degree():
    spec = module_spec("KacMoody", 2, 0, 3)
    for word in ([J(E, -1)], [J(H, -2)], [J(E, -1), J(F, -1)], [J(H, -1), J(H, -1), J(H, -1)]):
        v = normal_order(word, spec)
        assert sugawara_mode(0, v) == v * (-sum(g.mode for g in word))


def test_lowering_mode_on_current():
    # [L^S_{-1}, J^a_{-1}] = J^a_{-2}, and L^S_{-1} vac = 0
    spec = module_spec("KacMoody", 2, 0, 2)
    assert sugawara_mode(-1, vacuum(spec)) == 0
    assert sugawara_mode(-1, normal_order([J(E, -1)], spec)) == normal_order([J(E, -2)], spec)


def test_casimir_is_polynomial():
    spec = module_spec("KacMoody", 2, 0, 4)
    v = casimir_mode(-2, normal_order([J(E, -1), J(F, -1)], spec))
    assert all(x.is_polynomial() for x in v.terms.values())


def test_singular_vector_expansion():
    spec = module_spec("Semidirect", 2, 0, 4)
    cfg = SugawaraConfig(spec)
    s = singular_vector(cfg)
    assert s == apply_generator(L(-2), vacuum(spec)) - _by_hand_minus_two(spec)
    for a in range(3):
        for m in range(0, 3):
            assert apply_generator(J(a, m), s) == 0


def test_shifted_modes_commute_with_currents():
    spec = module_spec("Semidirect", 2, 0, 4)
    v = normal_order([J(E, -1)], spec)
    for m in (-1, 0, 1):
        lhs = shifted_mode(m, apply_generator(J(F, -1), v)) - apply_generator(J(F, -1), shifted_mode(m, v))
        assert lhs == 0


def _pbw_sign(rows, cols):
    order = [rows.index(jm + vm) for jm, vm in cols]
    sign, seen = 1, [False] * len(order)
    for i in range(len(order)):
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length:
            sign *= (-1) ** (length - 1)
    return sign


@pytest.mark.parametrize("n", [0, 1])
def test_sigma_is_unitriangular_up_to_order(n):
    cfg = SugawaraConfig(module_spec("Semidirect", 2, n, 5))
    for d in range(6):
        rows, cols, matrix, det = sigma_block(cfg, d)
        assert len(rows) == len(cols)
        assert det == rf(_pbw_sign(rows, cols))
        for jm, vm in cols:
            assert matrix[jm + vm][(jm, vm)] == ONE


def test_embedding_of_virasoro_words():
    cfg = SugawaraConfig(module_spec("Semidirect", 2, 0, 4))
    assert embed_virasoro([], cfg) == vacuum(cfg.spec)
    assert embed_virasoro([L(-2)], cfg) == singular_vector(cfg)
    assert cfg.virasoro_spec.c == c - 3 * k / (k + 2)
    with pytest.raises(DomainError):
        embed_virasoro([L(-1)], cfg)
    with pytest.raises(DomainError):
        embed_virasoro([L(-2), L(-3)], cfg)
    with pytest.raises(DomainError):
        tensor_iso([J(E, 0)], [], cfg)


@pytest.mark.parametrize("n", [0, 1])
def test_inverse_roundtrip(n):
    cfg = SugawaraConfig(module_spec("Semidirect", 2, n, 4))
    pairs = [((), ()), ((J(E, n - 1),), ()), ((), (L(2 * n - 2),)), ((J(H, n - 1),), (L(2 * n - 2),))]
    images = [tensor_iso(jm, vm, cfg) for jm, vm in pairs]
    for (jm, vm), coords in zip(pairs, tensor_iso_inverse_many(images, cfg)):
        assert coords == [(jm, vm, ONE)]


def test_inverse_of_plain_virasoro_word():
    cfg = SugawaraConfig(module_spec("Semidirect", 2, 0, 2))
    coords = tensor_iso_inverse(normal_order([L(-2)], cfg.spec), cfg)
    assert len(coords) == 4
    total = vacuum(cfg.spec) * 0
    for jm, vm, x in coords:
        total = total + tensor_iso(jm, vm, cfg) * x
    assert total == normal_order([L(-2)], cfg.spec)


def test_configuration_errors():
    with pytest.raises(CriticalLevelError):
        SugawaraConfig(module_spec("KacMoody", 2, 0, 4, params={"k": -2}))
    with pytest.raises(DomainError):
        SugawaraConfig(module_spec("Virasoro", None, 0, 4))
    with pytest.raises(DomainError):
        shifted_mode(-2, vacuum(module_spec("KacMoody", 2, 0, 4)))
    with pytest.raises(TruncationError):
        sugawara_mode(-3, vacuum(module_spec("KacMoody", 2, 0, 2)))


def test_numeric_level():
    spec = module_spec("KacMoody", 2, 0, 2, params={"k": 1})
    v = sugawara_mode(-2, vacuum(spec))
    assert sugawara_mode(2, v) == vacuum(spec) * Fraction(1, 2)
    assert SugawaraConfig(spec).central_charge == ONE
    assert SugawaraConfig(spec).shifted_level != ZERO


def test_quadratic_level_of_vacuum():
    for n in (1, 2):
        spec = module_spec("KacMoody", 2, n, 6)
        vac = vacuum(spec)
        assert not sugawara_mode(2 * n - 2, vac).is_zero()
        for m in range(2 * n - 1, 2 * n + 3):
            assert sugawara_mode(m, vac) == 0


def test_mode_window_is_wide_enough():
    spec = module_spec("KacMoody", 2, 1, 8)
    v = apply_word([J(E, -1), J(F, 0)], vacuum(spec))
    for m in (-2, 0, 2):
        assert sugawara_mode(m, v) == sugawara_mode(m, v, margin=6)
