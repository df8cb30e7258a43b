"""Finite-dimensional simple Lie algebra data.

Only the sl_N family is built in, realized on matrix units with the trace
form.  The trace form already gives the long roots square length 2, so the
adjoint Casimir acts by ``2 * h_dual`` with ``h_dual = N``.

:class:`SimpleLieAlgebra` is a plain data record: any other family can be
supplied as raw constants and checked with :func:`check_invariants`.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable

from .errors import AlgebraMismatchError, NotSimpleError

__all__ = [
    "SimpleLieAlgebra",
    "LieVector",
    "build_sl",
    "bracket",
    "form",
    "dual_basis",
    "check_invariants",
]

# sparse structure constants: (a, b) -> ((d, coefficient), ...)
Constants = dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]


@dataclass(frozen=True, eq=False)
class SimpleLieAlgebra:
    family: str
    rank: int
    basis_labels: tuple[str, ...]
    structure_constants: Constants
    form_matrix: tuple[tuple[Fraction, ...], ...]
    dual_coxeter: int
    name: str = ""

    @property
    def dimension(self) -> int:
        return len(self.basis_labels)

    def c(self, a: int, b: int) -> tuple[tuple[int, Fraction], ...]:
        return self.structure_constants.get((a, b), ())

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.family, self.rank, self.basis_labels, self.dual_coxeter)).encode())
        for key in sorted(self.structure_constants):
            h.update(repr((key, [(d, str(x)) for d, x in self.structure_constants[key]])).encode())
        h.update(repr([[str(x) for x in row] for row in self.form_matrix]).encode())
        return h.hexdigest()[:16]

    @cached_property
    def inverse_form(self) -> tuple[tuple[Fraction, ...], ...]:
        return _invert(self.form_matrix)

    @cached_property
    def casimir_pairs(self) -> tuple[tuple[int, int, Fraction], ...]:
        """Nonzero entries ``(a, b, w)`` with ``sum_a J^a (x) J_a = sum w J^a (x) J^b``."""
        inv = self.inverse_form
        n = self.dimension
        return tuple((a, b, inv[a][b]) for a in range(n) for b in range(n) if inv[a][b] != 0)

    def __eq__(self, other):
        return isinstance(other, SimpleLieAlgebra) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return f"SimpleLieAlgebra({self.name or self.family}, dim={self.dimension})"

    def basis(self) -> list["LieVector"]:
        return [LieVector(self, {a: Fraction(1)}) for a in range(self.dimension)]

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)


@dataclass(frozen=True)
class LieVector:
    algebra: SimpleLieAlgebra
    coeffs: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {i: Fraction(x) for i, x in self.coeffs.items() if x != 0}
        object.__setattr__(self, "coeffs", cleaned)

    def _check(self, other: "LieVector"):
        if not isinstance(other, LieVector) or other.algebra != self.algebra:
            raise AlgebraMismatchError("Lie vectors belong to different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, x in other.coeffs.items():
            out[i] = out.get(i, 0) + x
        return LieVector(self.algebra, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        return LieVector(self.algebra, {i: x * scalar for i, x in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (Fraction(1) / scalar)

    def __eq__(self, other):
        return isinstance(other, LieVector) and self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.algebra, frozenset(self.coeffs.items())))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        labels = self.algebra.basis_labels
        return " + ".join(f"{x}*{labels[i]}" for i, x in sorted(self.coeffs.items()))


def bracket(g: SimpleLieAlgebra, x: LieVector, y: LieVector) -> LieVector:
    for v in (x, y):
        if v.algebra != g:
            raise AlgebraMismatchError(f"{v!r} is not an element of {g!r}")
    out: dict[int, Fraction] = {}
    for a, xa in x.coeffs.items():
        for b, yb in y.coeffs.items():
            for d, cd in g.c(a, b):
                out[d] = out.get(d, 0) + xa * yb * cd
    return LieVector(g, out)


def form(g: SimpleLieAlgebra, x: LieVector, y: LieVector) -> Fraction:
    for v in (x, y):
        if v.algebra != g:
            raise AlgebraMismatchError(f"{v!r} is not an element of {g!r}")
    return sum(
        (xa * yb * g.form_matrix[a][b] for a, xa in x.coeffs.items() for b, yb in y.coeffs.items()),
        Fraction(0),
    )


def dual_basis(g: SimpleLieAlgebra) -> list[LieVector]:
    """The basis {J_a} with (J^a, J_b) = delta, from the inverse Gram matrix."""
    inv = g.inverse_form
    n = g.dimension
    return [LieVector(g, {b: inv[a][b] for b in range(n)}) for a in range(n)]


def _invert(matrix) -> tuple[tuple[Fraction, ...], ...]:
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise NotSimpleError("invariant form is degenerate")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


# ---------------------------------------------------------------------------
# sl_N on matrix units


def _sl_basis(N: int):
    """Basis matrices (sparse dicts) and labels in the fixed order E_ij (i<j), H_i, E_ij (i>j)."""
    mats, labels = [], []
    for i in range(N):
        for j in range(i + 1, N):
            mats.append({(i, j): Fraction(1)})
            labels.append(f"E{i + 1}{j + 1}")
    for i in range(N - 1):
        mats.append({(i, i): Fraction(1), (i + 1, i + 1): Fraction(-1)})
        labels.append(f"H{i + 1}")
    for i in range(N):
        for j in range(i):
            mats.append({(i, j): Fraction(1)})
            labels.append(f"E{i + 1}{j + 1}")
    return mats, labels


def _matmul(x, y):
    out: dict[tuple[int, int], Fraction] = {}
    for (i, j), a in x.items():
        for (j2, l), b in y.items():
            if j == j2:
                out[(i, l)] = out.get((i, l), 0) + a * b
    return out


def _decompose(m, N: int, labels: list[str]) -> dict[int, Fraction]:
    """Coordinates of a traceless matrix in the sl_N basis."""
    out: dict[int, Fraction] = {}
    running = Fraction(0)
    for i in range(N - 1):
        running += m.get((i, i), 0)
        if running:
            out[labels.index(f"H{i + 1}")] = running
    for (i, j), x in m.items():
        if i != j and x:
            out[labels.index(f"E{i + 1}{j + 1}")] = x
    return out


@lru_cache(maxsize=None)
def build_sl(N: int) -> SimpleLieAlgebra:
    if not isinstance(N, int) or N < 2:
        raise NotSimpleError(f"sl_{N} is not simple (need N >= 2)")
    mats, labels = _sl_basis(N)
    dim = len(mats)
    consts: Constants = {}
    gram = [[Fraction(0)] * dim for _ in range(dim)]
    for a, b in product(range(dim), repeat=2):
        xy = _matmul(mats[a], mats[b])
        yx = _matmul(mats[b], mats[a])
        comm = {key: xy.get(key, 0) - yx.get(key, 0) for key in set(xy) | set(yx)}
        coords = _decompose(comm, N, labels)
        if coords:
            consts[(a, b)] = tuple(sorted(coords.items()))
        gram[a][b] = sum((x for (i, j), x in xy.items() if i == j), Fraction(0))
    if N == 2:
        labels = ["E", "H", "F"]
    g = SimpleLieAlgebra(
        family="sl",
        rank=N - 1,
        basis_labels=tuple(labels),
        structure_constants=consts,
        form_matrix=tuple(tuple(row) for row in gram),
        dual_coxeter=N,
        name=f"sl{N}",
    )
    return g


def check_invariants(g: SimpleLieAlgebra) -> list[str]:
    """All violated type invariants, as human-readable strings (empty when valid)."""
    problems: list[str] = []
    n = g.dimension
    basis = g.basis()
    labels = g.basis_labels
    for a, b in product(range(n), repeat=2):
        if bracket(g, basis[a], basis[b]) != -1 * bracket(g, basis[b], basis[a]):
            problems.append(f"antisymmetry fails for ({labels[a]}, {labels[b]})")
        if g.form_matrix[a][b] != g.form_matrix[b][a]:
            problems.append(f"form not symmetric at ({labels[a]}, {labels[b]})")
    for a, b, d in product(range(n), repeat=3):
        x, y, z = basis[a], basis[b], basis[d]
        jac = bracket(g, x, bracket(g, y, z)) + bracket(g, y, bracket(g, z, x)) + bracket(g, z, bracket(g, x, y))
        if jac.coeffs:
            problems.append(f"Jacobi fails for ({labels[a]}, {labels[b]}, {labels[d]})")
        if form(g, bracket(g, x, y), z) + form(g, y, bracket(g, x, z)) != 0:
            problems.append(f"form invariance fails for ({labels[a]}, {labels[b]}, {labels[d]})")
    try:
        duals = dual_basis(g)
    except NotSimpleError:
        problems.append("form matrix is singular")
        return problems
    for x, xl in zip(basis, labels):
        cas = LieVector(g, {})
        for ja, jd in zip(basis, duals):
            cas = cas + bracket(g, ja, bracket(g, jd, x))
        if cas != 2 * g.dual_coxeter * x:
            problems.append(f"adjoint Casimir on {xl} is {cas!r}, expected {2 * g.dual_coxeter}*{xl}")
    return problems


def with_constant(g: SimpleLieAlgebra, a: int, b: int, new: Iterable[tuple[int, Fraction]]) -> SimpleLieAlgebra:
    """Copy of ``g`` with bracket(a, b) (and bracket(b, a)) replaced; used for negative controls."""
    consts = dict(g.structure_constants)
    new = tuple(sorted((d, Fraction(x)) for d, x in new))
    consts[(a, b)] = new
    consts[(b, a)] = tuple((d, -x) for d, x in new)
    return SimpleLieAlgebra(
        family=g.family,
        rank=g.rank,
        basis_labels=g.basis_labels,
        structure_constants=consts,
        form_matrix=g.form_matrix,
        dual_coxeter=g.dual_coxeter,
        name=g.name + "-modified",
    )
