"""Verification suites.

Each suite expands into a fixed, ordered list of tasks.  A task is a plain
tuple, so it can be shipped to worker processes; each worker rebuilds the
modules from the config and returns :class:`CheckResult` records.  Results
are reassembled in task order, so reports do not depend on the worker count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product

from ..checks import CheckResult, admissible_words, compare_vectors
from ..errors import KmvirError
from ..fock import (
    Gen,
    J,
    L,
    ModuleVector,
    VacuumModuleSpec,
    apply_generator,
    enumerate_basis,
    format_monomial,
    module_spec,
    normal_order,
    reduce_word,
    vacuum,
)
from ..lie_core import LieVector, SimpleLieAlgebra, bracket, check_invariants, dual_basis, form, with_constant
from ..limits import (
    PoissonBracketTable,
    classical_bracket,
    classical_poisson,
    classical_spec,
    critical_against_virasoro,
    critical_bracket,
    critical_commutes_with_current,
    poisson_jacobi,
    quantum_classical_check,
    rees_relation_check,
)
from ..scalars import ONE, ZERO, RationalFunction, symbol, to_text
from ..sugawara import (
    SugawaraConfig,
    embed_virasoro,
    shifted_mode,
    sigma_block,
    singular_vector,
    sugawara_mode,
    tensor_iso,
    tensor_iso_inverse_many,
    _product_basis,
)
from .cache import OperatorMatrixCache
from .config import SuiteConfig
from .oracles import graded_dimensions
from .report import VerificationReport

Task = tuple  # (suite, kind, *args)


def negative_control_algebra(g: SimpleLieAlgebra) -> SimpleLieAlgebra:
    """Copy of ``g`` with one corrupted structure constant: ``[H, E] = 3 E`` (sl2 labels)."""
    h = g.index("H" if "H" in g.basis_labels else "H1")
    e = g.index("E" if "E" in g.basis_labels else "E12")
    return with_constant(g, h, e, [(e, 3)])


# ---------------------------------------------------------------------------
# context


class Context:
    """Modules built from a config, shared by all tasks in one process."""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.n = cfg.level_structure
        self.D = cfg.truncation_degree
        self.N = cfg.mode_range

    @cached_property
    def lie(self) -> SimpleLieAlgebra:
        return self.cfg.lie()

    @cached_property
    def params(self) -> dict:
        return self.cfg.parameter_values()

    def spec(self, kind: str, n: int | None = None) -> VacuumModuleSpec:
        lie = None if kind == "Virasoro" else self.lie
        return module_spec(kind, lie, self.n if n is None else n, self.D, "Quantum", self.params)

    def gens(self, spec: VacuumModuleSpec) -> list[Gen]:
        out = []
        if spec.has_J:
            out += [J(a, m) for m in range(-self.N, self.N + 1) for a in range(spec.lie.dimension)]
        if spec.has_L:
            out += [L(m) for m in range(-self.N, self.N + 1)]
        return sorted(out)

    @cached_property
    def cache(self) -> OperatorMatrixCache | None:
        return OperatorMatrixCache(self.cfg.cache) if self.cfg.cache else None


_CONTEXTS: dict = {}


def _context(cfg: SuiteConfig) -> Context:
    key = repr(sorted(vars(cfg).items()))
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        ctx = _CONTEXTS[key] = Context(cfg)
    return ctx


def _result(id: str, lhs: str, rhs: str, witness: dict | None, **info) -> CheckResult:
    return CheckResult(id=id, lhs=lhs, rhs=rhs, passed=witness is None, witness=witness, info=info)


def _first_failure(spec, words, lhs, rhs, tag: str = "") -> dict | None:
    for w in words:
        v = ModuleVector._wrap(spec, {w: ONE})
        wit = compare_vectors(format_monomial(w, spec), lhs(v), rhs(v), spec)
        if wit:
            if tag:
                wit["operator"] = tag
            return wit
    return None


# ---------------------------------------------------------------------------
# lie


def _lie_checks(ctx: Context) -> list[CheckResult]:
    g = ctx.lie
    problems = check_invariants(g)
    out = []
    for key, lhs in (
        ("antisymmetry", "[x, y] + [y, x]"),
        ("form not symmetric", "(x, y) - (y, x)"),
        ("Jacobi", "[x,[y,z]] + cyclic"),
        ("form invariance", "([x,y],z) + (y,[x,z])"),
        ("adjoint Casimir", "sum_a [J^a,[J_a,x]] - 2 h x"),
        ("singular", "det form"),
    ):
        hits = [p for p in problems if key in p]
        wit = {"source": g.name, "monomial": hits[0], "lhs": "violated", "rhs": "0"} if hits else None
        out.append(_result(f"lie/{key.replace(' ', '-')}", lhs, "0" if key != "singular" else "nonzero", wit))
    # biduality: the dual basis of the dual basis is the original basis
    duals = dual_basis(g)
    gram = [[form(g, x, y) for y in duals] for x in duals]
    from ..lie_core import _invert

    inv = _invert(gram)
    back = [
        sum((d * inv[a][b] for b, d in enumerate(duals)), LieVector(g, {}))
        for a in range(g.dimension)
    ]
    wit = None
    for a, (x, y) in enumerate(zip(back, g.basis())):
        if x != y:
            wit = {"source": g.basis_labels[a], "monomial": g.basis_labels[a], "lhs": repr(x), "rhs": repr(y)}
            break
    out.append(_result("lie/biduality", "dual(dual(J^a))", "J^a", wit))
    pairing_ok = all(
        form(g, x, y) == (1 if a == b else 0) for a, x in enumerate(g.basis()) for b, y in enumerate(duals)
    )
    out.append(
        _result(
            "lie/dual-pairing",
            "(J^a, J_b)",
            "delta",
            None if pairing_ok else {"source": g.name, "monomial": "pairing", "lhs": "not identity", "rhs": "identity"},
        )
    )
    N = ctx.cfg.rank_n
    shape = (g.dimension, g.rank, g.dual_coxeter)
    out.append(
        _result(
            "lie/shape",
            "(dim, rank, h_dual)",
            str((N * N - 1, N - 1, N)),
            None if shape == (N * N - 1, N - 1, N) else {"source": g.name, "monomial": "shape", "lhs": str(shape), "rhs": str((N * N - 1, N - 1, N))},
        )
    )
    return out


# ---------------------------------------------------------------------------
# defining relations, with an oracle built from lie_core data


@lru_cache(maxsize=None)
def _lie_data(g: SimpleLieAlgebra, a: int, b: int) -> tuple[tuple, Fraction]:
    basis = g.basis()
    xb, yb = basis[a], basis[b]
    return tuple(bracket(g, xb, yb).coeffs.items()), form(g, xb, yb)


def bracket_oracle(x: Gen, y: Gen, v: ModuleVector) -> ModuleVector:
    """``[x, y] v`` from the defining relations, independent of the rewriter's table."""
    spec = v.module
    s = x.mode + y.mode
    out = v * 0
    if x.kind == 0 and y.kind == 0:
        coeffs, pairing = _lie_data(spec.lie, x.index, y.index)
        for d, cd in coeffs:
            out = out + apply_generator(J(d, s), v) * cd
        if s == 0 and pairing:
            out = out + v * (spec.k * x.mode * pairing)
    elif x.kind == 1 and y.kind == 1:
        out = apply_generator(L(s), v) * (x.mode - y.mode)
        if s == 0:
            out = out + v * (spec.c * Fraction(x.mode**3 - x.mode, 12))
    elif x.kind == 1:
        out = apply_generator(J(y.index, s), v) * (-y.mode)
    else:
        out = apply_generator(J(x.index, s), v) * x.mode
    return out


def _kind_label(kind: int) -> str:
    return "J" if kind == 0 else "L"


def _mode_pairs(ctx: Context, kinds: tuple[tuple[int, int], ...]):
    N = ctx.N
    out = []
    for kx, ky in kinds:
        for p in range(-N, N + 1):
            for q in range(-N, N + 1):
                if kx == ky and q < p:
                    continue
                out.append((kx, p, ky, q))
    return out


def _relation_check(ctx: Context, kind: str, kx: int, p: int, ky: int, q: int) -> list[CheckResult]:
    spec = ctx.spec(kind)
    xs = [J(a, p) for a in range(spec.lie.dimension)] if kx == 0 else [L(p)]
    ys = [J(b, q) for b in range(spec.lie.dimension)] if ky == 0 else [L(q)]
    wx = spec.weight(xs[0])
    wy = spec.weight(ys[0])
    words = admissible_words(spec, [wx, wy], [wy, wx], [wx + wy])
    witness = None
    for x, y in product(xs, ys):
        witness = _first_failure(
            spec,
            words,
            lambda v: apply_generator(x, apply_generator(y, v)) - apply_generator(y, apply_generator(x, v)),
            lambda v: bracket_oracle(x, y, v),
            tag=f"[{spec.label(x)}, {spec.label(y)}]",
        )
        if witness:
            break
    lx, ly = f"{_kind_label(kx)}_{p}", f"{_kind_label(ky)}_{q}"
    return [
        _result(
            f"{_SUITE_OF[kind]}/relation/[{lx},{ly}]",
            f"[{lx}, {ly}] on basis",
            "defining relation",
            witness,
            words=len(words),
            level_structure=spec.level_structure,
        )
    ]


_SUITE_OF = {"KacMoody": "kac-moody", "Virasoro": "virasoro", "Semidirect": "semidirect"}


def _grading_check(ctx: Context, kind: str) -> list[CheckResult]:
    spec = ctx.spec(kind)
    witness = None
    checked = 0
    for g in ctx.gens(spec):
        for w in admissible_words(spec, [spec.weight(g)]):
            v = ModuleVector._wrap(spec, {w: ONE})
            img = apply_generator(g, v)
            checked += 1
            d0 = VacuumModuleSpec.word_degree(w)
            for t in img.terms:
                bad_degree = VacuumModuleSpec.word_degree(t) != d0 - g.mode
                bad_weight = spec.word_weight(t) > spec.word_weight(w) + spec.weight(g)
                if bad_degree or bad_weight:
                    witness = {
                        "source": format_monomial(w, spec),
                        "monomial": format_monomial(t, spec),
                        "lhs": f"degree {VacuumModuleSpec.word_degree(t)}, weight {spec.word_weight(t)}",
                        "rhs": f"degree {d0 - g.mode}, weight <= {spec.word_weight(w) + spec.weight(g)}",
                        "operator": spec.label(g),
                    }
                    break
            if witness:
                break
        if witness:
            break
    return [_result(f"{_SUITE_OF[kind]}/grading", "degree(g . v)", "degree(v) - mode(g)", witness, applications=checked)]


def _confluence_check(ctx: Context, kind: str, samples: int = 40) -> list[CheckResult]:
    spec = ctx.spec(kind)
    rng = random.Random(f"{kind}/{spec.fingerprint}")
    gens = ctx.gens(spec)
    witness = None
    tried = 0
    for _ in range(samples * 5):
        if tried >= samples:
            break
        word = tuple(rng.choice(gens) for _ in range(rng.randint(1, 4)))
        total = spec.word_weight(word)
        prefixes = [spec.word_weight(word[i:]) for i in range(len(word))]
        if total > spec.truncation_degree or max(prefixes) > spec.truncation_degree:
            continue
        tried += 1
        direct = normal_order(word, spec)
        for strategy in ("leftmost", "rightmost"):
            other = reduce_word(word, spec, strategy)
            wit = compare_vectors(" ".join(spec.label(g) for g in word), direct, other, spec)
            if wit:
                witness = dict(wit, strategy=strategy)
                break
        if witness:
            break
    return [_result(f"{_SUITE_OF[kind]}/confluence", "normal_order(word)", "redex rewriting (both strategies)", witness, words=tried)]


# ---------------------------------------------------------------------------
# dimensions


def _dimension_checks(ctx: Context, kind: str) -> list[CheckResult]:
    spec = ctx.spec(kind)
    dim_g = spec.lie.dimension if spec.has_J else 0
    expected = graded_dimensions(dim_g, spec.has_L, ctx.D)
    out = []
    for d in range(ctx.D + 1):
        got = len(enumerate_basis(spec, d))
        wit = None
        if got != expected[d]:
            wit = {"source": kind, "monomial": f"weight {d}", "lhs": str(got), "rhs": str(expected[d])}
        out.append(
            _result(f"dimensions/{_SUITE_OF[kind]}/n={spec.level_structure}/weight={d}", "len(enumerate_basis)", str(expected[d]), wit)
        )
    return out


# ---------------------------------------------------------------------------
# sugawara


def _sug_cfg(ctx: Context, kind: str = "KacMoody", n: int | None = None) -> SugawaraConfig:
    return SugawaraConfig(ctx.spec(kind, n))


def _central_charge(cfg: SugawaraConfig) -> RationalFunction:
    return cfg.central_charge


def _lnj_check(ctx: Context, p: int, q: int) -> list[CheckResult]:
    cfg = _sug_cfg(ctx)
    spec = cfg.spec
    n = spec.level_structure
    wp, wq = 2 * n - p, n - q
    words = admissible_words(spec, [wp, wq], [wq, wp], [wp + wq])
    witness = None
    for a in range(spec.lie.dimension):
        g = J(a, q)
        witness = _first_failure(
            spec,
            words,
            lambda v: sugawara_mode(p, apply_generator(g, v), cfg) - apply_generator(g, sugawara_mode(p, v, cfg)),
            lambda v: apply_generator(J(a, p + q), v) * (-q),
            tag=f"[L^S_{p}, {spec.label(g)}]",
        )
        if witness:
            break
    return [_result(f"sugawara/LnJ/p={p},q={q}", f"[L^S_{p}, J^a_{q}]", f"{-q} J^a_{p + q}", witness, words=len(words))]


def _lns_check(ctx: Context, p: int, q: int) -> list[CheckResult]:
    cfg = _sug_cfg(ctx)
    spec = cfg.spec
    n = spec.level_structure
    wp, wq = 2 * n - p, 2 * n - q
    words = admissible_words(spec, [wp, wq], [wq, wp], [wp + wq])
    central = cfg.central_charge * Fraction(p**3 - p, 12) if p + q == 0 else ZERO

    def rhs(v):
        out = sugawara_mode(p + q, v, cfg) * (p - q) if p != q else v * 0
        return out + v * central

    witness = _first_failure(
        spec,
        words,
        lambda v: sugawara_mode(p, sugawara_mode(q, v, cfg), cfg) - sugawara_mode(q, sugawara_mode(p, v, cfg), cfg),
        rhs,
    )
    return [
        _result(
            f"sugawara/LnS/p={p},q={q}",
            f"[L^S_{p}, L^S_{q}]",
            f"({p - q}) L^S_{p + q} + ({to_text(central)})",
            witness,
            words=len(words),
            central_charge=to_text(cfg.central_charge),
        )
    ]


def _quadratic_level_checks(ctx: Context) -> list[CheckResult]:
    out = []
    for n in sorted({ctx.n, 1, 2} if ctx.n == 0 else {ctx.n}):
        cfg = _sug_cfg(ctx, n=n)
        spec = cfg.spec
        vac = vacuum(spec)
        wit = None
        for m in range(2 * n - 1, 2 * n + ctx.N):
            img = sugawara_mode(m, vac, cfg)
            if img.terms:
                w, x = img.sorted_terms()[0]
                wit = {"source": f"L^S_{m} vac_{n}", "monomial": format_monomial(w, spec), "lhs": to_text(x), "rhs": "0"}
                break
        out.append(_result(f"sugawara/quadratic-level/n={n}/annihilation", f"L^S_m vac_{n}, m >= {2 * n - 1}", "0", wit))
        if n >= 1 and spec.truncation_degree >= 2:
            img = sugawara_mode(2 * n - 2, vac, cfg)
            wit = None if img.terms else {"source": f"L^S_{2 * n - 2} vac_{n}", "monomial": "-", "lhs": "0", "rhs": "nonzero"}
            out.append(_result(f"sugawara/quadratic-level/n={n}/sharp", f"L^S_{2 * n - 2} vac_{n}", "nonzero", wit))
    return out


def _window_check(ctx: Context, m: int) -> list[CheckResult]:
    cfg = _sug_cfg(ctx)
    spec = cfg.spec
    words = admissible_words(spec, [2 * spec.level_structure - m])
    witness = _first_failure(spec, words, lambda v: sugawara_mode(m, v, cfg, margin=5), lambda v: sugawara_mode(m, v, cfg))
    return [_result(f"sugawara/window/m={m}", f"L^S_{m} with margin 5", f"L^S_{m}", witness, words=len(words))]


def _sugawara_examples(ctx: Context) -> list[CheckResult]:
    if ctx.n != 0 or ctx.D < 2 or ctx.cfg.rank_n != 2:
        return []
    cfg = _sug_cfg(ctx)
    spec = cfg.spec
    vac = vacuum(spec)
    E = spec.lie.index("E")
    e1 = apply_generator(J(E, -1), vac)
    k = spec.k
    cases = [
        ("L^S_0 E_-1 vac", sugawara_mode(0, e1, cfg), e1),
        ("L^S_-1 E_-1 vac", sugawara_mode(-1, e1, cfg), apply_generator(J(E, -2), vac)),
        ("L^S_2 L^S_-2 vac", sugawara_mode(2, sugawara_mode(-2, vac, cfg), cfg), vac * (3 * k / (2 * (k + 2)))),
    ]
    return [
        _result(f"sugawara/example/{name.replace(' ', '.')}", name, rhs.to_text(), compare_vectors(name, lhs, rhs, spec))
        for name, lhs, rhs in cases
    ]


def sugawara_matrix(cfg: SugawaraConfig, m: int, weight: int) -> dict:
    """Images of ``L^S_m`` on the PBW words of one weight."""
    spec = cfg.spec
    return {w: sugawara_mode(m, ModuleVector._wrap(spec, {w: ONE}), cfg) for w in enumerate_basis(spec, weight)}


def _cache_check(ctx: Context, m: int) -> list[CheckResult]:
    cache = ctx.cache
    cfg = _sug_cfg(ctx)
    spec = cfg.spec
    out = []
    for d in range(spec.truncation_degree + 1):
        if d + 2 * spec.level_structure - m > spec.truncation_degree:
            continue
        fresh = sugawara_matrix(cfg, m, d)
        op = f"sugawara/L^S_{m}"
        cached = cache.load(op, d, spec)
        if cached is None:
            cache.store(op, d, spec, fresh)
            cached = cache.load(op, d, spec)
        wit = None
        for w in fresh:
            wit = compare_vectors(format_monomial(w, spec), cached.get(w, ModuleVector(spec)), fresh[w], spec)
            if wit:
                break
        if set(cached) != set(fresh) and wit is None:
            wit = {"source": op, "monomial": f"weight {d}", "lhs": f"{len(cached)} columns", "rhs": f"{len(fresh)} columns"}
        out.append(_result(f"sugawara/cache/L^S_{m}/weight={d}", "cached matrix", "recomputed matrix", wit))
    return out


# ---------------------------------------------------------------------------
# shifted / singular


def _ss_check(ctx: Context, l: int, m: int) -> list[CheckResult]:
    cfg = _sug_cfg(ctx, "Semidirect")
    spec = cfg.spec
    n = spec.level_structure
    wl, wm = 2 * n - l, 2 * n - m
    words = admissible_words(spec, [wl, wm], [wm, wl], [wl + wm])
    central = cfg.c_k * Fraction(l**3 - l, 12) if l + m == 0 else ZERO

    def rhs(v):
        out = shifted_mode(l + m, v, cfg) * (l - m) if l != m else v * 0
        return out + v * central

    witness = _first_failure(
        spec,
        words,
        lambda v: shifted_mode(l, shifted_mode(m, v, cfg), cfg) - shifted_mode(m, shifted_mode(l, v, cfg), cfg),
        rhs,
    )
    return [
        _result(
            f"shifted/SS/l={l},m={m}",
            f"[S_{l}, S_{m}]",
            f"({l - m}) S_{l + m} + ({to_text(central)})",
            witness,
            words=len(words),
            c_k=to_text(cfg.c_k),
        )
    ]


def _sj_check(ctx: Context, m: int, l: int) -> list[CheckResult]:
    cfg = _sug_cfg(ctx, "Semidirect")
    spec = cfg.spec
    n = spec.level_structure
    wm, wl = 2 * n - m, n - l
    words = admissible_words(spec, [wm, wl], [wl, wm])
    witness = None
    for a in range(spec.lie.dimension):
        g = J(a, l)
        witness = _first_failure(
            spec,
            words,
            lambda v: shifted_mode(m, apply_generator(g, v), cfg) - apply_generator(g, shifted_mode(m, v, cfg)),
            lambda v: v * 0,
            tag=f"[S_{m}, {spec.label(g)}]",
        )
        if witness:
            break
    return [_result(f"shifted/SJ/m={m},l={l}", f"[S_{m}, J^a_{l}]", "0", witness, words=len(words))]


def _singular_checks(ctx: Context) -> list[CheckResult]:
    if ctx.D < 2:
        return []
    cfg = _sug_cfg(ctx, "Semidirect", n=0)
    spec = cfg.spec
    S = singular_vector(cfg)
    out = [
        _result("singular/degree", "degree(S)", "2", None if S.degree == 2 else {"source": "S", "monomial": "-", "lhs": str(S.degree), "rhs": "2"})
    ]
    for m in range(0, ctx.N + 1):
        wit = None
        for a in range(spec.lie.dimension):
            img = apply_generator(J(a, m), S)
            if img.terms:
                w, x = img.sorted_terms()[0]
                wit = {"source": f"{spec.label(J(a, m))} S", "monomial": format_monomial(w, spec), "lhs": to_text(x), "rhs": "0"}
                break
        out.append(_result(f"singular/annihilated/m={m}", f"J^a_{m} S", "0", wit))
    emb = embed_virasoro((L(-2),), cfg)
    out.append(_result("singular/embedding", "embed(L_-2 vac)", "S", compare_vectors("L_-2 vac", emb, S, spec)))
    iso = tensor_iso((), (L(-2),), cfg)
    out.append(_result("singular/tensor-iso", "sigma(vac (x) L_-2 vac)", "S", compare_vectors("vac (x) L_-2 vac", iso, S, spec)))
    if ctx.D >= 3:
        emb3 = embed_virasoro((L(-3),), cfg)
        out.append(
            _result("singular/embedding-L-3", "embed(L_-3 vac)", "S_-3 vac", compare_vectors("L_-3 vac", emb3, shifted_mode(-3, vacuum(spec), cfg), spec))
        )
    return out


# ---------------------------------------------------------------------------
# tensor isomorphism


def _sigma_check(ctx: Context, d: int) -> list[CheckResult]:
    cfg = _sug_cfg(ctx, "Semidirect")
    rows, cols, _, det = sigma_block(cfg, d)
    wit = None
    if len(rows) != len(cols):
        wit = {"source": f"weight {d}", "monomial": "dimension", "lhs": str(len(rows)), "rhs": str(len(cols))}
    elif det is None or det.is_zero():
        wit = {"source": f"weight {d}", "monomial": "determinant", "lhs": "0", "rhs": "nonzero"}
    return [
        _result(
            f"tensor-iso/sigma/weight={d}",
            f"dim V_(k,c)^{cfg.spec.level_structure} at weight {d}, det sigma",
            "sum dim V_k * dim Vir, nonzero",
            wit,
            dimension=len(rows),
            determinant=to_text(det) if det is not None else None,
        )
    ]


def _roundtrip_check(ctx: Context, d: int) -> list[CheckResult]:
    cfg = _sug_cfg(ctx, "Semidirect")
    spec = cfg.spec
    words = enumerate_basis(spec, d)
    vectors = [ModuleVector._wrap(spec, {w: ONE}) for w in words]
    pairs = _product_basis(cfg, d)
    images = [tensor_iso(jm, vm, cfg) for jm, vm in pairs]
    solved = tensor_iso_inverse_many(vectors + images, cfg)
    wit = None
    for w, v, coords in zip(words, vectors, solved[: len(words)]):
        back = ModuleVector._wrap(spec, {})
        for jm, vm, x in coords:
            back = back + tensor_iso(jm, vm, cfg) * x
        wit = compare_vectors(format_monomial(w, spec), back, v, spec)
        if wit:
            wit["direction"] = "sigma(sigma^-1(v))"
            break
    if wit is None:
        for (jm, vm), coords in zip(pairs, solved[len(words) :]):
            if coords != [(jm, vm, ONE)]:
                wit = {
                    "source": f"{format_monomial(jm, cfg.kac_moody_spec)} (x) {format_monomial(vm, cfg.virasoro_spec)}",
                    "monomial": "coordinates",
                    "lhs": repr([(a, b, to_text(x)) for a, b, x in coords]),
                    "rhs": "itself with coefficient 1",
                    "direction": "sigma^-1(sigma(p))",
                }
                break
    return [_result(f"tensor-iso/roundtrip/weight={d}", "sigma o sigma^-1, sigma^-1 o sigma", "identity", wit, words=len(words))]


# ---------------------------------------------------------------------------
# rees / critical / classical / poisson


def _rees_check(ctx: Context, kx: int, p: int, ky: int, q: int) -> list[CheckResult]:
    spec = ctx.spec("Semidirect")
    xs = [J(a, p) for a in range(spec.lie.dimension)] if kx == 0 else [L(p)]
    ys = [J(b, q) for b in range(spec.lie.dimension)] if ky == 0 else [L(q)]
    which = "KacMoody" if kx == ky == 0 else "Virasoro" if kx == ky == 1 else "Semidirect"
    lx, ly = f"{_kind_label(kx)}_{p}", f"{_kind_label(ky)}_{q}"
    rel_wit, cls_wit, words = None, None, 0
    for x, y in product(xs, ys):
        if kx == ky and q == p and y < x:
            continue
        r = rees_relation_check(x, y, "Semidirect", spec)
        words = max(words, r.info.get("words", 0))
        if not r.passed and rel_wit is None:
            rel_wit = dict(r.witness, operator=r.lhs)
        c = quantum_classical_check(x, y, spec)
        if not c.passed and cls_wit is None:
            cls_wit = dict(c.witness, operator=c.lhs)
        if rel_wit and cls_wit:
            break
    return [
        _result(f"rees/relation/[{lx}',{ly}']", f"[{lx}', {ly}']", "rescaled relation", rel_wit, words=words, family=which),
        _result(f"rees/classical/[{lx}',{ly}']", f"lambda/k coefficient of [{lx}', {ly}']", "Poisson table", cls_wit, words=words),
    ]


def _critical_bracket_check(ctx: Context, l: int, m: int) -> list[CheckResult]:
    _, r = critical_bracket(l, m, ctx.spec("Semidirect"))
    return [r]


def _critical_current_check(ctx: Context, m: int, l: int) -> list[CheckResult]:
    spec = ctx.spec("Semidirect")
    wit = None
    for a in range(spec.lie.dimension):
        r = critical_commutes_with_current(m, J(a, l), spec)
        if not r.passed:
            wit = r.witness
            break
    return [_result(f"critical/current/m={m},l={l}", f"[Sc_{m}, J^a_{l}]", "0", wit)]


def _critical_virasoro_check(ctx: Context, m: int, l: int) -> list[CheckResult]:
    return [critical_against_virasoro(m, l, ctx.spec("Semidirect"))]


def _classical_bracket_check(ctx: Context, l: int, m: int) -> list[CheckResult]:
    _, r = classical_bracket(l, m, ctx.spec("Semidirect"))
    return [r]


def _virasoro_poisson_jacobi(ctx: Context) -> list[CheckResult]:
    """Limit brackets close into the Virasoro Poisson algebra with central charge lambda mu."""
    lam, mu = ctx.params.get("lambda", symbol("lambda")), ctx.params.get("mu", symbol("mu"))
    D = ctx.D + 6 * ctx.N
    vspec = module_spec("Virasoro", None, ctx.n, D, "Classical", {"lambda": lam, "mu": lam * mu})
    table = PoissonBracketTable(vspec)
    modes = range(-ctx.N, ctx.N + 1)
    wit, count = None, 0
    for a, b, c in product(modes, repeat=3):
        if not a < b < c:
            continue
        count += 1
        jac = poisson_jacobi(L(a), L(b), L(c), table)
        if jac.terms:
            w, x = jac.sorted_terms()[0]
            wit = {"source": f"L_{a}, L_{b}, L_{c}", "monomial": format_monomial(w, vspec), "lhs": to_text(x), "rhs": "0"}
            break
    return [_result("classical/limit-jacobi", "Jacobi of the limit Virasoro brackets (central lambda mu)", "0", wit, triples=count)]


def _poisson_checks(ctx: Context) -> list[CheckResult]:
    qspec = ctx.spec("Semidirect")
    pad = 2 * (2 * ctx.n + ctx.N)
    cspec = classical_spec(qspec).replace(truncation_degree=ctx.D + pad)
    table = PoissonBracketTable(cspec)
    gens = ctx.gens(cspec)
    out = []
    # antisymmetry
    wit = None
    for x, y in product(gens, repeat=2):
        vx, vy = ModuleVector._wrap(cspec, {(x,): ONE}), ModuleVector._wrap(cspec, {(y,): ONE})
        w = compare_vectors(f"{{{cspec.label(x)}, {cspec.label(y)}}}", classical_poisson(vx, vy, table), -classical_poisson(vy, vx, table), cspec)
        if w:
            wit = w
            break
    out.append(_result("poisson/antisymmetry", "{x, y}", "-{y, x}", wit))
    # Jacobi on generator triples of total weight <= D
    wit, count = None, 0
    for x, y, z in product(gens, repeat=3):
        if not x <= y <= z:
            continue
        if cspec.weight(x) + cspec.weight(y) + cspec.weight(z) > ctx.D:
            continue
        count += 1
        jac = poisson_jacobi(x, y, z, table)
        if jac.terms:
            t, val = jac.sorted_terms()[0]
            wit = {
                "source": ", ".join(cspec.label(g) for g in (x, y, z)),
                "monomial": format_monomial(t, cspec),
                "lhs": to_text(val),
                "rhs": "0",
            }
            break
    out.append(_result("poisson/jacobi", "{x,{y,z}} + cyclic", "0", wit, triples=count))
    # Leibniz on sampled polynomials
    rng = random.Random(f"poisson/{cspec.fingerprint}")
    creators = [g for g in gens if cspec.is_creation(g) and cspec.weight(g) <= 2]
    wit = None
    for _ in range(25):
        u, v, w = (
            ModuleVector(cspec, {tuple(sorted(rng.choice(creators) for _ in range(rng.randint(1, 2)))): rng.randint(1, 3)})
            for _ in range(3)
        )
        lhs = classical_poisson(u, _product(v, w), table)
        rhs = _product(classical_poisson(u, v, table), w) + _product(v, classical_poisson(u, w, table))
        wit = compare_vectors("Leibniz sample", lhs, rhs, cspec)
        if wit:
            break
    out.append(_result("poisson/leibniz", "{u, v w}", "{u, v} w + v {u, w}", wit))
    return out


def _product(v: ModuleVector, w: ModuleVector) -> ModuleVector:
    out: dict = {}
    from ..fock import _accumulate

    for a, x in v.terms.items():
        for b, y in w.terms.items():
            _accumulate(out, {tuple(sorted(a + b)): x * y})
    return ModuleVector._wrap(v.module, out)


# ---------------------------------------------------------------------------
# task lists


def build_tasks(cfg: SuiteConfig) -> list[Task]:
    ctx = Context(cfg)
    N, D = cfg.mode_range, cfg.truncation_degree
    modes = range(-N, N + 1)
    tasks: list[Task] = []
    for suite in cfg.suites():
        if suite == "lie":
            tasks.append((suite, "lie"))
        elif suite in ("kac-moody", "virasoro", "semidirect"):
            kind = {"kac-moody": "KacMoody", "virasoro": "Virasoro", "semidirect": "Semidirect"}[suite]
            kinds = {
                "KacMoody": ((0, 0),),
                "Virasoro": ((1, 1),),
                "Semidirect": ((0, 0), (1, 1), (1, 0)),
            }[kind]
            tasks += [(suite, "relation", kind, *pair) for pair in _mode_pairs(ctx, kinds)]
            tasks += [(suite, "grading", kind), (suite, "confluence", kind)]
        elif suite == "sugawara":
            tasks += [(suite, "LnJ", p, q) for p in modes for q in modes]
            tasks += [(suite, "LnS", p, q) for p in modes for q in modes if p <= q]
            tasks += [(suite, "quadratic-level"), (suite, "examples")]
            tasks += [(suite, "window", m) for m in modes]
            if cfg.cache:
                tasks += [(suite, "cache", m) for m in modes]
        elif suite == "shifted":
            tasks += [(suite, "SS", l, m) for l in modes for m in modes if l <= m]
            tasks += [(suite, "SJ", m, l) for m in modes for l in modes]
        elif suite == "singular":
            tasks.append((suite, "singular"))
        elif suite == "tensor-iso":
            tasks += [(suite, "sigma", d) for d in range(D + 1)]
            tasks += [(suite, "roundtrip", d) for d in range(D + 1)]
        elif suite == "rees":
            tasks += [(suite, "rees", *pair) for pair in _mode_pairs(ctx, ((0, 0), (1, 1), (1, 0)))]
        elif suite == "critical":
            tasks += [(suite, "critical-bracket", l, m) for l in modes for m in modes if l <= m]
            tasks += [(suite, "critical-current", m, l) for m in modes for l in modes]
            tasks += [(suite, "critical-virasoro", m, l) for m in modes for l in modes]
        elif suite == "classical":
            tasks += [(suite, "classical-bracket", l, m) for l in modes for m in modes if l <= m]
            tasks.append((suite, "limit-jacobi"))
        elif suite == "poisson":
            tasks.append((suite, "poisson"))
        elif suite == "dimensions":
            tasks += [(suite, "dimensions", kind) for kind in ("KacMoody", "Virasoro", "Semidirect")]
    return tasks


_DISPATCH = {
    "lie": _lie_checks,
    "relation": _relation_check,
    "grading": _grading_check,
    "confluence": _confluence_check,
    "LnJ": _lnj_check,
    "LnS": _lns_check,
    "quadratic-level": _quadratic_level_checks,
    "examples": _sugawara_examples,
    "window": _window_check,
    "cache": _cache_check,
    "SS": _ss_check,
    "SJ": _sj_check,
    "singular": _singular_checks,
    "sigma": _sigma_check,
    "roundtrip": _roundtrip_check,
    "rees": _rees_check,
    "critical-bracket": _critical_bracket_check,
    "critical-current": _critical_current_check,
    "critical-virasoro": _critical_virasoro_check,
    "classical-bracket": _classical_bracket_check,
    "limit-jacobi": _virasoro_poisson_jacobi,
    "poisson": _poisson_checks,
    "dimensions": _dimension_checks,
}


def run_task(cfg: SuiteConfig, task: Task) -> list[dict]:
    suite, kind, *args = task
    ctx = _context(cfg)
    try:
        results = _DISPATCH[kind](ctx, *args)
    except (KmvirError, ArithmeticError) as exc:
        results = [
            CheckResult(
                id=f"{suite}/{kind}/{','.join(map(str, args))}",
                lhs=kind,
                rhs="no error",
                passed=False,
                witness={"source": kind, "monomial": "-", "lhs": f"{type(exc).__name__}: {exc}", "rhs": "no error"},
            )
        ]
    return [r.to_dict() for r in results]


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    cfg.validate()
    start = time.perf_counter()
    tasks = build_tasks(cfg)
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(run_task, [cfg] * len(tasks), tasks, chunksize=1))
    else:
        chunks = [run_task(cfg, t) for t in tasks]
    checks = [CheckResult.from_dict(d) for chunk in chunks for d in chunk]
    return VerificationReport(
        suite=cfg.suite,
        config=cfg.echo(),
        checks=checks,
        wall_time=time.perf_counter() - start,
    )
