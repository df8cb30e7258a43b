"""Graded vacuum modules with PBW bases and the normal-ordering rewriter.

A vacuum module is described by a :class:`VacuumModuleSpec`.  Vectors are
sparse maps from canonical PBW words to :class:`RationalFunction`
coefficients.  A word is a tuple of :class:`Gen` symbols; tuple order on
``Gen`` (kind, mode, index) *is* the canonical monomial order: the J block
precedes the L block, J sorted by (mode, basis index), L by mode.

The central elements K and C never appear as symbols: they act by the
scalars ``spec.k`` and ``spec.c`` and are folded into coefficients while
rewriting.  The current cocycle carries the mode factor,
``[J^a_p, J^b_q] = [J^a, J^b]_{p+q} + p (J^a, J^b) delta_{p+q,0} K``; without
it the bracket is not antisymmetric and does not split over the modes p >= 0.

Truncation uses the *weight* of a word, the sum over its symbols of
``n - m`` for ``J_m`` and ``2n - m`` for ``L_m`` (``n`` the level
structure).  Every creation symbol has weight >= 1, so each weight space is
finite-dimensional.  For ``n = 0`` the weight is the conformal degree.  For
``n >= 1`` the conformal degree of a vector stays exact but is no longer a
finite grading (``J_0`` has degree 0), and weight is only a filtration:
commutators never raise it, so truncating by weight never loses terms.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import AlgebraMismatchError, TruncationError
from .lie_core import SimpleLieAlgebra, build_sl
from .scalars import ONE, ZERO, RationalFunction, rf, symbol, to_text

__all__ = [
    "AlgebraKind",
    "Regime",
    "Gen",
    "J",
    "L",
    "VacuumModuleSpec",
    "ModuleVector",
    "module_spec",
    "vacuum",
    "enumerate_basis",
    "normal_order",
    "apply_generator",
    "classical_product",
    "reduce_word",
    "format_monomial",
    "parse_monomial",
    "ORDERING_VERSION",
]

ORDERING_VERSION = 1


class AlgebraKind(str, Enum):
    KAC_MOODY = "KacMoody"
    VIRASORO = "Virasoro"
    SEMIDIRECT = "Semidirect"


class Regime(str, Enum):
    QUANTUM = "Quantum"
    CLASSICAL = "Classical"


class Gen(NamedTuple):
    """Generator symbol: ``J^index_mode`` (kind 0) or ``L_mode`` (kind 1)."""

    kind: int
    mode: int
    index: int = 0

    @property
    def is_J(self) -> bool:
        return self.kind == 0

    def __repr__(self):
        return f"J({self.index},{self.mode})" if self.kind == 0 else f"L({self.mode})"


def J(a: int, m: int) -> Gen:
    return Gen(0, m, a)


def L(m: int) -> Gen:
    return Gen(1, m, 0)


Word = tuple  # tuple[Gen, ...]


@dataclass(frozen=True)
class VacuumModuleSpec:
    algebra_kind: AlgebraKind
    lie: SimpleLieAlgebra | None = None
    level_structure: int = 0
    truncation_degree: int = 6
    regime: Regime = Regime.QUANTUM
    params: tuple[tuple[str, RationalFunction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "algebra_kind", AlgebraKind(self.algebra_kind))
        object.__setattr__(self, "regime", Regime(self.regime))
        if self.algebra_kind is AlgebraKind.VIRASORO:
            object.__setattr__(self, "lie", None)
        elif self.lie is None:
            raise ValueError(f"{self.algebra_kind.value} module needs a Lie algebra")
        if self.level_structure < 0 or self.truncation_degree < 0:
            raise ValueError("level structure and truncation degree must be non-negative")

    # -- parameters -----------------------------------------------------
    def param(self, name: str) -> RationalFunction:
        for key, value in self.params:
            if key == name:
                return value
        return symbol(name)

    @cached_property
    def k(self) -> RationalFunction:
        return self.param("k")

    @cached_property
    def c(self) -> RationalFunction:
        return self.param("c")

    @property
    def has_J(self) -> bool:
        return self.algebra_kind is not AlgebraKind.VIRASORO

    @property
    def has_L(self) -> bool:
        return self.algebra_kind is not AlgebraKind.KAC_MOODY

    # -- grading --------------------------------------------------------
    def is_creation(self, g: Gen) -> bool:
        n = self.level_structure
        return g.mode < n if g.kind == 0 else g.mode < 2 * n - 1

    def weight(self, g: Gen) -> int:
        n = self.level_structure
        return n - g.mode if g.kind == 0 else 2 * n - g.mode

    def word_weight(self, word: Sequence[Gen]) -> int:
        return sum(self.weight(g) for g in word)

    @staticmethod
    def word_degree(word: Sequence[Gen]) -> int:
        return -sum(g.mode for g in word)

    def check_gen(self, g: Gen) -> None:
        if g.kind == 0:
            if not self.has_J:
                raise AlgebraMismatchError("Virasoro module has no Kac-Moody generators")
            if not 0 <= g.index < self.lie.dimension:
                raise AlgebraMismatchError(f"basis index {g.index} out of range for {self.lie!r}")
        elif g.kind == 1:
            if not self.has_L:
                raise AlgebraMismatchError("Kac-Moody module has no Virasoro generators")
        else:
            raise AlgebraMismatchError(f"unknown generator kind {g.kind}")

    def replace(self, **changes) -> "VacuumModuleSpec":
        fields = dict(
            algebra_kind=self.algebra_kind,
            lie=self.lie,
            level_structure=self.level_structure,
            truncation_degree=self.truncation_degree,
            regime=self.regime,
            params=self.params,
        )
        if "params" in changes and isinstance(changes["params"], Mapping):
            changes["params"] = _normalize_params(changes["params"])
        fields.update(changes)
        return VacuumModuleSpec(**fields)

    @cached_property
    def fingerprint(self) -> str:
        lie = self.lie.fingerprint if self.lie is not None else "-"
        params = ",".join(f"{k}={to_text(v)}" for k, v in self.params)
        return (
            f"{self.algebra_kind.value}|{self.regime.value}|lie={lie}|n={self.level_structure}"
            f"|D={self.truncation_degree}|{params}|order=v{ORDERING_VERSION}"
        )

    def label(self, g: Gen) -> str:
        if g.kind == 0:
            return f"J[a={self.lie.basis_labels[g.index]},m={g.mode}]"
        return f"L[m={g.mode}]"


def _normalize_params(params: Mapping[str, object] | None) -> tuple[tuple[str, RationalFunction], ...]:
    if not params:
        return ()
    from .scalars import _param_name

    out = {}
    for key, value in params.items():
        name = _param_name(key)
        value = rf(value)
        if value != symbol(name):
            out[name] = value
    return tuple(sorted(out.items()))


def module_spec(
    kind: str | AlgebraKind,
    lie: SimpleLieAlgebra | int | None = None,
    n: int = 0,
    D: int = 6,
    regime: str | Regime = Regime.QUANTUM,
    params: Mapping[str, object] | None = None,
) -> VacuumModuleSpec:
    """Convenience constructor; ``lie`` may be an integer N meaning sl_N."""
    if isinstance(lie, int):
        lie = build_sl(lie)
    return VacuumModuleSpec(AlgebraKind(kind), lie, n, D, Regime(regime), _normalize_params(params))


# ---------------------------------------------------------------------------
# vectors


def _accumulate(target: dict, source: Mapping, coeff: RationalFunction | None = None) -> None:
    for w, x in source.items():
        if coeff is not None:
            x = x * coeff
        old = target.get(w)
        if old is None:
            target[w] = x
        else:
            s = old + x
            if s.is_zero():
                del target[w]
            else:
                target[w] = s


class ModuleVector:
    """Finite linear combination of PBW words over Q(k, c, lambda, mu)."""

    __slots__ = ("module", "terms")

    def __init__(self, module: VacuumModuleSpec, terms: Mapping | None = None):
        self.module = module
        self.terms = {w: rf(x) for w, x in (terms or {}).items() if not rf(x).is_zero()}

    @classmethod
    def _wrap(cls, module, terms):
        v = cls.__new__(cls)
        v.module = module
        v.terms = terms
        return v

    # -- gradings -------------------------------------------------------
    @property
    def degree(self) -> int | None:
        """Conformal degree; None for the zero vector or a non-homogeneous one."""
        degrees = {VacuumModuleSpec.word_degree(w) for w in self.terms}
        return degrees.pop() if len(degrees) == 1 else None

    @property
    def weight(self) -> int:
        """Largest weight among the terms (0 for the zero vector)."""
        return max((self.module.word_weight(w) for w in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word) -> RationalFunction:
        return self.terms.get(tuple(word), ZERO)

    # -- arithmetic -----------------------------------------------------
    def _same(self, other):
        if not isinstance(other, ModuleVector) or other.module != self.module:
            raise AlgebraMismatchError("vectors live in different modules")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return ModuleVector._wrap(self.module, out)

    def __sub__(self, other):
        self._same(other)
        out = dict(self.terms)
        _accumulate(out, other.terms, rf(-1))
        return ModuleVector._wrap(self.module, out)

    def __neg__(self):
        return ModuleVector._wrap(self.module, {w: -x for w, x in self.terms.items()})

    def __mul__(self, scalar):
        s = rf(scalar)
        if s.is_zero():
            return ModuleVector._wrap(self.module, {})
        return ModuleVector._wrap(self.module, {w: x * s for w, x in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (ONE / rf(scalar))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, ModuleVector) and self.module == other.module and self.terms == other.terms

    def __hash__(self):
        return hash((self.module, frozenset(self.terms.items())))

    def map_coefficients(self, fn) -> "ModuleVector":
        out = {}
        for w, x in self.terms.items():
            y = fn(x)
            if not y.is_zero():
                out[w] = y
        return ModuleVector._wrap(self.module, out)

    def sorted_terms(self) -> list[tuple[Word, RationalFunction]]:
        spec = self.module
        return sorted(self.terms.items(), key=lambda item: (spec.word_weight(item[0]), item[0]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, x in self.sorted_terms():
            coeff = to_text(x)
            if " " in coeff:
                coeff = f"({coeff})"
            parts.append(f"{coeff} * {format_monomial(w, self.module)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ModuleVector({self.to_text()})"


def format_monomial(word: Sequence[Gen], spec: VacuumModuleSpec) -> str:
    body = " ".join(spec.label(g) for g in word)
    vac = f"|0;n={spec.level_structure}>"
    return f"{body} {vac}" if body else vac


_SYMBOL = re.compile(r"J\[a=([^,\]]+),m=(-?\d+)\]|L\[m=(-?\d+)\]")


def parse_monomial(text: str, spec: VacuumModuleSpec) -> Word:
    head, sep, _ = text.partition("|0;n=")
    if not sep:
        raise ValueError(f"not a monomial: {text!r}")
    word = []
    for label, jm, lm in _SYMBOL.findall(head):
        if label:
            word.append(J(spec.lie.basis_labels.index(label), int(jm)))
        else:
            word.append(L(int(lm)))
    return tuple(word)


def vacuum(spec: VacuumModuleSpec) -> ModuleVector:
    return ModuleVector._wrap(spec, {(): ONE})


# ---------------------------------------------------------------------------
# basis enumeration


def _creation_gens(spec: VacuumModuleSpec, max_weight: int) -> list[Gen]:
    n = spec.level_structure
    gens = []
    if spec.has_J:
        for m in range(n - max_weight, n):
            gens.extend(J(a, m) for a in range(spec.lie.dimension))
    if spec.has_L:
        gens.extend(L(m) for m in range(2 * n - max_weight, 2 * n - 1))
    return sorted(gens)


@lru_cache(maxsize=None)
def _basis_of_weight(kind: AlgebraKind, lie, n: int, weight: int) -> tuple[Word, ...]:
    spec = VacuumModuleSpec(kind, lie, n, weight)
    gens = _creation_gens(spec, weight)
    weights = [spec.weight(g) for g in gens]
    out: list[Word] = []

    def extend(start: int, remaining: int, prefix: list[Gen]):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for i in range(start, len(gens)):
            wt = weights[i]
            if wt <= remaining:
                prefix.append(gens[i])
                extend(i, remaining - wt, prefix)
                prefix.pop()

    extend(0, weight, [])
    return tuple(sorted(out))


def enumerate_basis(spec: VacuumModuleSpec, degree: int) -> list[Word]:
    """All canonical PBW words of the given weight, in canonical order."""
    if degree < 0:
        return []
    if degree > spec.truncation_degree:
        raise TruncationError(f"degree {degree} exceeds truncation degree {spec.truncation_degree}")
    return list(_basis_of_weight(spec.algebra_kind, spec.lie, spec.level_structure, degree))


def basis_up_to(spec: VacuumModuleSpec, max_weight: int) -> list[Word]:
    out: list[Word] = []
    for w in range(0, min(max_weight, spec.truncation_degree) + 1):
        out.extend(enumerate_basis(spec, w))
    return out


# ---------------------------------------------------------------------------
# the rewriter


class _Engine:
    """Memoized action of single generators on canonical words."""

    def __init__(self, spec: VacuumModuleSpec):
        self.spec = spec
        self._memo: dict[tuple[Gen, Word], dict] = {}
        self._brackets: dict[tuple[Gen, Gen], tuple] = {}
        self._lock = threading.Lock()
        lie = spec.lie
        if lie is not None:
            self._consts = {
                key: tuple((d, rf(x)) for d, x in vals) for key, vals in lie.structure_constants.items()
            }
            self._form = [[rf(x) for x in row] for row in lie.form_matrix]
        self._k = spec.k
        self._c = spec.c

    def bracket(self, x: Gen, y: Gen):
        """``[x, y]`` as (((gen, coeff), ...), central scalar or None)."""
        key = (x, y)
        hit = self._brackets.get(key)
        if hit is not None:
            return hit
        s = x.mode + y.mode
        gens: list[tuple[Gen, RationalFunction]] = []
        scalar = None
        if x.kind == 0 and y.kind == 0:
            for d, cd in self._consts.get((x.index, y.index), ()):
                gens.append((J(d, s), cd))
            if s == 0 and x.mode:
                f = self._form[x.index][y.index]
                if not f.is_zero():
                    scalar = f * self._k * x.mode
        elif x.kind == 1 and y.kind == 1:
            if x.mode != y.mode:
                gens.append((L(s), rf(x.mode - y.mode)))
            if s == 0 and x.mode ** 3 != x.mode:
                scalar = rf(x.mode**3 - x.mode) * self._c / 12
        elif x.kind == 1:
            if y.mode:
                gens.append((J(y.index, s), rf(-y.mode)))
        else:
            if x.mode:
                gens.append((J(x.index, s), rf(x.mode)))
        out = (tuple(gens), scalar)
        self._brackets[key] = out
        return out

    def act(self, g: Gen, word: Word) -> dict:
        key = (g, word)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        spec = self.spec
        if not word:
            res = {(g,): ONE} if spec.is_creation(g) else {}
        else:
            y = word[0]
            if g <= y and spec.is_creation(g):
                res = {(g,) + word: ONE}
            else:
                rest = word[1:]
                res: dict = {}
                for w, cf in self.act(g, rest).items():
                    _accumulate(res, self.act(y, w), cf)
                gens, scalar = self.bracket(g, y)
                for z, cz in gens:
                    _accumulate(res, self.act(z, rest), cz)
                if scalar is not None:
                    _accumulate(res, {rest: scalar})
        self._memo[key] = res
        return res

    def act_vector(self, g: Gen, terms: Mapping) -> dict:
        out: dict = {}
        for w, x in terms.items():
            _accumulate(out, self.act(g, w), x)
        return out

    def act_word(self, word: Sequence[Gen], terms: Mapping) -> dict:
        """Apply ``word`` (rightmost symbol first) to a vector."""
        out = dict(terms)
        for g in reversed(word):
            out = self.act_vector(g, out)
        return out


@lru_cache(maxsize=64)
def engine(spec: VacuumModuleSpec) -> _Engine:
    if spec.regime is not Regime.QUANTUM:
        raise ValueError("the rewriter acts on Quantum-regime modules only")
    return _Engine(spec)


def normal_order(word: Sequence[Gen], spec: VacuumModuleSpec) -> ModuleVector:
    """Expand ``word . vac`` in the canonical PBW basis."""
    word = tuple(word)
    for g in word:
        spec.check_gen(g)
    if spec.regime is not Regime.QUANTUM:
        raise ValueError("normal_order needs a Quantum-regime module")
    if spec.word_weight(word) > spec.truncation_degree:
        raise TruncationError(f"word weight {spec.word_weight(word)} exceeds truncation {spec.truncation_degree}")
    return ModuleVector._wrap(spec, engine(spec).act_word(word, {(): ONE}))


def apply_generator(gen: Gen, v: ModuleVector) -> ModuleVector:
    spec = v.module
    spec.check_gen(gen)
    if spec.regime is not Regime.QUANTUM:
        raise ValueError("apply_generator needs a Quantum-regime module")
    if v.terms and v.weight + spec.weight(gen) > spec.truncation_degree:
        raise TruncationError(
            f"result weight {v.weight + spec.weight(gen)} exceeds truncation {spec.truncation_degree}"
        )
    return ModuleVector._wrap(spec, engine(spec).act_vector(gen, v.terms))


def apply_word(word: Sequence[Gen], v: ModuleVector) -> ModuleVector:
    for g in reversed(tuple(word)):
        v = apply_generator(g, v)
    return v


# ---------------------------------------------------------------------------
# an independent rewriter on bare words, for confluence checks


def reduce_word(word: Sequence[Gen], spec: VacuumModuleSpec, strategy: str = "leftmost") -> ModuleVector:
    """Normal-order ``word . vac`` by repeatedly rewriting one redex.

    Redexes are adjacent pairs (annihilator, creator) or (creator, smaller
    creator), rewritten by ``xy = yx + [x, y]``, and a trailing annihilator,
    which kills the term.  ``strategy`` picks the leftmost or rightmost redex.
    Shares only the bracket table with :func:`normal_order`.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    eng = _Engine(spec)
    done: dict = {}
    pending: dict = {tuple(word): ONE}
    while pending:
        w, coeff = pending.popitem()
        redexes = []
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            cx, cy = spec.is_creation(x), spec.is_creation(y)
            if (not cx and cy) or (cx and cy and x > y):
                redexes.append(i)
        if w and not spec.is_creation(w[-1]):
            redexes.append(len(w) - 1)
        if not redexes:
            _accumulate(done, {w: coeff})
            continue
        i = redexes[0] if strategy == "leftmost" else redexes[-1]
        if i == len(w) - 1 and not spec.is_creation(w[-1]):
            continue
        x, y = w[i], w[i + 1]
        new = {w[:i] + (y, x) + w[i + 2 :]: coeff}
        gens, scalar = eng.bracket(x, y)
        for z, cz in gens:
            _accumulate(new, {w[:i] + (z,) + w[i + 2 :]: cz * coeff})
        if scalar is not None:
            _accumulate(new, {w[:i] + w[i + 2 :]: scalar * coeff})
        _accumulate(pending, new)
    return ModuleVector._wrap(spec, done)


# ---------------------------------------------------------------------------
# classical regime


def classical_product(v: ModuleVector, w: ModuleVector) -> ModuleVector:
    """Commutative product in the polynomial algebra on the rescaled symbols."""
    spec = v.module
    if spec.regime is not Regime.CLASSICAL:
        raise ValueError("classical_product needs a Classical-regime module")
    if w.module != spec:
        raise AlgebraMismatchError("vectors live in different modules")
    if v.terms and w.terms and v.weight + w.weight > spec.truncation_degree:
        raise TruncationError(f"product weight {v.weight + w.weight} exceeds truncation {spec.truncation_degree}")
    out: dict = {}
    for a, x in v.terms.items():
        for b, y in w.terms.items():
            _accumulate(out, {tuple(sorted(a + b)): x * y})
    return ModuleVector._wrap(spec, out)


def classical_monomial(spec: VacuumModuleSpec, gens: Iterable[Gen], coeff=1) -> ModuleVector:
    if spec.regime is not Regime.CLASSICAL:
        raise ValueError("classical_monomial needs a Classical-regime module")
    gens = tuple(sorted(gens))
    for g in gens:
        spec.check_gen(g)
    return ModuleVector(spec, {gens: coeff})


def project_vacuum(v: ModuleVector) -> ModuleVector:
    """Image in the classical vacuum module: drop every monomial containing an annihilation symbol."""
    spec = v.module
    return ModuleVector._wrap(
        spec, {w: x for w, x in v.terms.items() if all(spec.is_creation(g) for g in w)}
    )
