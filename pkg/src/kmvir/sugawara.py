"""Segal-Sugawara operators, the singular vector and the tensor decomposition.

Normal-ordered quadratic sums are evaluated on one PBW word at a time over a
finite window of modes.  For a word of weight ``w`` in a module with level
structure ``n``, ``J_p`` kills the word as soon as ``p > n + w`` (its weight
``n - p`` would push the result below weight 0).  In
``:J^a_m J_{a, n0 - m}:`` the annihilation-ordered factor acts first, so only
``n0 - n - w <= m <= n + w`` can contribute.  The window actually used is
the wider ``[n0 - (w + n + |n0| + 2), w + n + |n0| + 2]``, plus an optional
margin for stability tests.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Sequence

from .errors import CriticalLevelError, DomainError, TruncationError
from .fock import (
    AlgebraKind,
    Gen,
    J,
    L,
    ModuleVector,
    Regime,
    VacuumModuleSpec,
    _accumulate,
    apply_generator,
    engine,
    enumerate_basis,
    vacuum,
)
from .linalg import determinant, solve_many
from .scalars import ONE, RationalFunction, rf

__all__ = [
    "SugawaraConfig",
    "sugawara_mode",
    "casimir_mode",
    "shifted_mode",
    "singular_vector",
    "embed_virasoro",
    "tensor_iso",
    "tensor_iso_inverse",
    "tensor_iso_inverse_many",
    "sigma_block",
]


@dataclass(frozen=True)
class SugawaraConfig:
    spec: VacuumModuleSpec

    def __post_init__(self):
        spec = self.spec
        if spec.algebra_kind not in (AlgebraKind.KAC_MOODY, AlgebraKind.SEMIDIRECT):
            raise DomainError("Sugawara operators need a Kac-Moody or semidirect module")
        if spec.regime is not Regime.QUANTUM:
            raise DomainError("Sugawara operators need a Quantum-regime module")
        if (spec.k + spec.lie.dual_coxeter).is_zero():
            raise CriticalLevelError(f"k = -h_dual = {-spec.lie.dual_coxeter} is the critical level")

    @property
    def symbolic_k(self) -> bool:
        return not self.spec.k.is_constant()

    @cached_property
    def shifted_level(self) -> RationalFunction:
        return self.spec.k + self.spec.lie.dual_coxeter

    @cached_property
    def central_charge(self) -> RationalFunction:
        """k dim g / (k + h_dual)."""
        return self.spec.k * self.spec.lie.dimension / self.shifted_level

    @cached_property
    def c_k(self) -> RationalFunction:
        return self.spec.c - self.central_charge

    @cached_property
    def kac_moody_spec(self) -> VacuumModuleSpec:
        return self.spec.replace(algebra_kind=AlgebraKind.KAC_MOODY, params=_only(self.spec, "k"))

    @cached_property
    def virasoro_spec(self) -> VacuumModuleSpec:
        """Source module of the embedding: Virasoro vacuum module with central charge c_k.

        Same level structure index ``n``, hence annihilated by ``L_m`` with
        ``m >= 2n - 1``, i.e. by the order-``2n`` vector fields.
        """
        return VacuumModuleSpec(
            AlgebraKind.VIRASORO,
            None,
            self.spec.level_structure,
            self.spec.truncation_degree,
            Regime.QUANTUM,
            (("c", self.c_k),),
        )


def _only(spec: VacuumModuleSpec, *names: str) -> dict:
    return {name: value for name, value in spec.params if name in names}


def _config(v_or_spec, cfg: SugawaraConfig | None) -> SugawaraConfig:
    if cfg is not None:
        return cfg
    spec = v_or_spec.module if isinstance(v_or_spec, ModuleVector) else v_or_spec
    return _cached_config(spec)


@lru_cache(maxsize=64)
def _cached_config(spec: VacuumModuleSpec) -> SugawaraConfig:
    return SugawaraConfig(spec)


class _QuadraticEngine:
    """Memoized ``sum_a sum_m :J^a_m J_{a, n0-m}:`` on canonical words."""

    def __init__(self, spec: VacuumModuleSpec):
        self.spec = spec
        self.eng = engine(spec)
        self.pairs = tuple((a, b, rf(w)) for a, b, w in spec.lie.casimir_pairs)
        self._memo: dict = {}
        self._lock = threading.Lock()

    def window(self, n0: int, word, margin: int = 0) -> range:
        w = self.spec.word_weight(word)
        n = self.spec.level_structure
        reach = w + n + abs(n0) + 2 + margin
        return range(n0 - reach, reach + 1)

    def on_word(self, n0: int, word, margin: int = 0) -> dict:
        key = (n0, word, margin)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        act = self.eng.act
        res: dict = {}
        for m in self.window(n0, word, margin):
            for a, b, wt in self.pairs:
                if m < 0:
                    left, right = J(a, m), J(b, n0 - m)
                else:
                    left, right = J(b, n0 - m), J(a, m)
                for w2, x in act(right, word).items():
                    _accumulate(res, act(left, w2), x * wt)
        self._memo[key] = res
        return res

    def on_terms(self, n0: int, terms, margin: int = 0) -> dict:
        out: dict = {}
        for w, x in terms.items():
            _accumulate(out, self.on_word(n0, w, margin), x)
        return out


@lru_cache(maxsize=64)
def quadratic_engine(spec: VacuumModuleSpec) -> _QuadraticEngine:
    return _QuadraticEngine(spec)


def _check_room(v: ModuleVector, shift: int):
    D = v.module.truncation_degree
    if v.terms and v.weight + shift > D:
        raise TruncationError(f"result weight {v.weight + shift} exceeds truncation {D}")


def casimir_mode(n0: int, v: ModuleVector, margin: int = 0) -> ModuleVector:
    """``sum_a sum_m :J^a_m J_{a, n0-m}: v`` (no prefactor); polynomial in k."""
    spec = v.module
    _check_room(v, 2 * spec.level_structure - n0)
    return ModuleVector._wrap(spec, quadratic_engine(spec).on_terms(n0, v.terms, margin))


def sugawara_mode(n0: int, v: ModuleVector, cfg: SugawaraConfig | None = None, margin: int = 0) -> ModuleVector:
    """``L^S_{n0} v = (1 / (2 (k + h_dual))) sum_a sum_m :J^a_m J_{a, n0-m}: v``."""
    cfg = _config(v, cfg)
    return casimir_mode(n0, v, margin) * (ONE / (2 * cfg.shifted_level))


def shifted_mode(m: int, v: ModuleVector, cfg: SugawaraConfig | None = None) -> ModuleVector:
    """``S_m v = L_m v - L^S_m v``; commutes with every ``J^a_l``."""
    cfg = _config(v, cfg)
    if v.module.algebra_kind is not AlgebraKind.SEMIDIRECT:
        raise DomainError("shifted modes need the semidirect module")
    return apply_generator(L(m), v) - sugawara_mode(m, v, cfg)


def singular_vector(cfg: SugawaraConfig) -> ModuleVector:
    spec = cfg.spec
    if spec.algebra_kind is not AlgebraKind.SEMIDIRECT or spec.level_structure != 0:
        raise DomainError("the singular vector lives in the semidirect module with n = 0")
    return shifted_mode(-2, vacuum(spec), cfg)


def _check_virasoro_word(word: Sequence[Gen], cfg: SugawaraConfig) -> tuple:
    word = tuple(word)
    src = cfg.virasoro_spec
    for g in word:
        if not isinstance(g, tuple) or g.kind != 1:
            raise DomainError(f"{g!r} is not a Virasoro generator")
        if not src.is_creation(g):
            raise DomainError(f"L_{g.mode} annihilates the source vacuum (need mode < {2 * src.level_structure - 1})")
    if list(word) != sorted(word):
        raise DomainError("source monomial is not in canonical order")
    return word


def embed_virasoro(word: Sequence[Gen], cfg: SugawaraConfig) -> ModuleVector:
    """Image of ``L_{n_1} ... L_{n_l} vac`` under the embedding: ``S_{n_1} ... S_{n_l} vac_n``."""
    word = _check_virasoro_word(word, cfg)
    v = vacuum(cfg.spec)
    for g in reversed(word):
        v = shifted_mode(g.mode, v, cfg)
    return v


def _check_kac_moody_word(word: Sequence[Gen], cfg: SugawaraConfig) -> tuple:
    word = tuple(word)
    km = cfg.kac_moody_spec
    for g in word:
        if not isinstance(g, tuple) or g.kind != 0:
            raise DomainError(f"{g!r} is not a Kac-Moody generator")
        km.check_gen(g)
        if not km.is_creation(g):
            raise DomainError(f"{g!r} annihilates the Kac-Moody vacuum")
    if list(word) != sorted(word):
        raise DomainError("Kac-Moody monomial is not in canonical order")
    return word


def tensor_iso(jm: Sequence[Gen], vm: Sequence[Gen], cfg: SugawaraConfig) -> ModuleVector:
    """``(J... vac) (x) (L... vac)  |->  J... S... vac_n``."""
    jm = _check_kac_moody_word(jm, cfg)
    v = embed_virasoro(vm, cfg)
    for g in reversed(jm):
        v = apply_generator(g, v)
    return v


# ---------------------------------------------------------------------------
# change of basis


def _product_basis(cfg: SugawaraConfig, weight: int, exact: bool = True):
    """Pairs (J-word, L-word) whose weights sum to ``weight`` (or to at most it)."""
    km, vir = cfg.kac_moody_spec, cfg.virasoro_spec
    out = []
    for total in ([weight] if exact else range(weight + 1)):
        for w1 in range(total + 1):
            for jm, vm in product(enumerate_basis(km, w1), enumerate_basis(vir, total - w1)):
                out.append((jm, vm))
    return out


@lru_cache(maxsize=4096)
def _sigma_column(jm, vm, cfg: SugawaraConfig) -> ModuleVector:
    return tensor_iso(jm, vm, cfg)


def sigma_block(cfg: SugawaraConfig, weight: int):
    """Leading block of the tensor isomorphism at one weight.

    Columns are product basis pairs of total weight ``weight``; rows are PBW
    words of that weight; entries are the weight-``weight`` components of
    the images (for n = 0 these are the full images).  Returns
    ``(rows, cols, matrix, det)``.
    """
    spec = cfg.spec
    cols = _product_basis(cfg, weight)
    rows = enumerate_basis(spec, weight)
    matrix: dict = {}
    for col in cols:
        for w, x in _sigma_column(col[0], col[1], cfg).terms.items():
            if spec.word_weight(w) == weight:
                matrix.setdefault(w, {})[col] = x
    det = determinant(matrix, rows, cols) if len(rows) == len(cols) else None
    return rows, cols, matrix, det


def _inverse_system(cfg: SugawaraConfig, top: int, degrees: set):
    cols = [
        p
        for p in _product_basis(cfg, top, exact=False)
        if VacuumModuleSpec.word_degree(p[0] + p[1]) in degrees
    ]
    matrix: dict = {}
    for col in cols:
        for w, x in _sigma_column(col[0], col[1], cfg).terms.items():
            matrix.setdefault(w, {})[col] = x
    return cols, matrix


def _ordered(solution: dict, cols: list) -> list:
    order = {col: i for i, col in enumerate(cols)}
    return [(col[0], col[1], x) for col, x in sorted(solution.items(), key=lambda item: order[item[0]])]


def tensor_iso_inverse(v: ModuleVector, cfg: SugawaraConfig) -> list[tuple[tuple, tuple, RationalFunction]]:
    """Coordinates of ``v`` in the image basis ``{J... S... vac_n}``.

    The system is square: columns are product pairs of weight at most the top
    weight of ``v`` and matching conformal degree, rows the PBW words they hit.
    """
    return tensor_iso_inverse_many([v], cfg)[0]


def tensor_iso_inverse_many(vectors: Sequence[ModuleVector], cfg: SugawaraConfig) -> list[list]:
    """:func:`tensor_iso_inverse` for several vectors, sharing one elimination."""
    spec = cfg.spec
    for v in vectors:
        if v.module != spec:
            raise DomainError("vector is not in the configured module")
    live = [v for v in vectors if v.terms]
    if not live:
        return [[] for _ in vectors]
    top = max(v.weight for v in live)
    degrees = {VacuumModuleSpec.word_degree(w) for v in live for w in v.terms}
    cols, matrix = _inverse_system(cfg, top, degrees)
    solutions = iter(solve_many(matrix, [v.terms for v in live], cols))
    return [_ordered(next(solutions), cols) if v.terms else [] for v in vectors]
