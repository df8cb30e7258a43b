"""Operator identities on a truncated module, compared word by word.

An operator is a Python callable on :class:`ModuleVector` together with the
weight it adds.  Two operator expressions are compared by evaluating both on
every PBW basis word that keeps all intermediate results inside the
truncation.  The first disagreement (in canonical order) becomes the witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .fock import ModuleVector, VacuumModuleSpec, basis_up_to, format_monomial
from .scalars import ONE, ZERO, to_text

__all__ = ["Operator", "CheckResult", "admissible_words", "images", "compare_images", "compare_vectors"]


@dataclass(frozen=True)
class Operator:
    name: str
    weight: int
    apply: Callable[[ModuleVector], ModuleVector]

    def __call__(self, v: ModuleVector) -> ModuleVector:
        return self.apply(v)


@dataclass
class CheckResult:
    id: str
    lhs: str
    rhs: str
    passed: bool
    witness: dict | None = None
    info: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"id": self.id, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed, "witness": self.witness}
        if self.info:
            out["info"] = self.info
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "CheckResult":
        return cls(d["id"], d["lhs"], d["rhs"], d["pass"], d.get("witness"), d.get("info", {}))


def _headroom(chain: Sequence[int]) -> int:
    """Largest intermediate weight gain when applying the weights right to left."""
    top, run = 0, 0
    for w in reversed(chain):
        run += w
        top = max(top, run)
    return top


def admissible_words(spec: VacuumModuleSpec, *chains: Sequence[int]) -> list[tuple]:
    """Basis words on which every operator chain stays inside the truncation."""
    room = spec.truncation_degree - max((_headroom(c) for c in chains), default=0)
    if room < 0:
        return []
    return basis_up_to(spec, room)


def images(op: Callable[[ModuleVector], ModuleVector], spec: VacuumModuleSpec, words: Iterable[tuple]) -> dict:
    return {w: op(ModuleVector._wrap(spec, {w: ONE})) for w in words}


def compare_vectors(source: str, lhs: ModuleVector, rhs: ModuleVector, spec: VacuumModuleSpec) -> dict | None:
    """Witness for the first monomial where two vectors differ, or None."""
    if lhs.terms == rhs.terms:
        return None
    for w in sorted(set(lhs.terms) | set(rhs.terms), key=lambda t: (spec.word_weight(t), t)):
        a, b = lhs.terms.get(w, ZERO), rhs.terms.get(w, ZERO)
        if a != b:
            return {"source": source, "monomial": format_monomial(w, spec), "lhs": to_text(a), "rhs": to_text(b)}
    return None


def compare_images(lhs: dict, rhs: dict, spec: VacuumModuleSpec) -> dict | None:
    for w in sorted(lhs, key=lambda t: (spec.word_weight(t), t)):
        wit = compare_vectors(format_monomial(w, spec), lhs[w], rhs[w], spec)
        if wit is not None:
            return wit
    return None
