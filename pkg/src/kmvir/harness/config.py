"""Suite configuration and its validation."""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass, field

from ..errors import ConfigError, KmvirError
from ..lie_core import SimpleLieAlgebra, build_sl
from ..scalars import RationalFunction, from_text, to_text

SUITES = (
    "lie",
    "kac-moody",
    "virasoro",
    "semidirect",
    "sugawara",
    "shifted",
    "singular",
    "tensor-iso",
    "rees",
    "critical",
    "classical",
    "poisson",
    "dimensions",
)
ALL = "all"

# suites dividing by k + h_dual
_NEEDS_NONCRITICAL = {"sugawara", "shifted", "singular", "tensor-iso"}
# suites extracting limits in k, which must stay a free symbol
_NEEDS_SYMBOLIC_K = {"critical", "classical"}
# suites rescaling by lambda/k and mu/c
_RESCALES = {"rees", "classical"}


@dataclass
class SuiteConfig:
    suite: str = ALL
    algebra: str = "sl2"
    level_structure: int = 0
    truncation_degree: int = 6
    mode_range: int = 4
    params: dict = field(default_factory=dict)
    workers: int = 1
    cache: str | None = None
    out: str | None = None
    format: str = "json"
    negative_control: bool = False

    def suites(self) -> tuple[str, ...]:
        return SUITES if self.suite == ALL else (self.suite,)

    @property
    def rank_n(self) -> int:
        m = re.fullmatch(r"sl(\d+)", self.algebra)
        if not m:
            raise ConfigError(f"unknown algebra {self.algebra!r} (expected sl<N>)")
        return int(m.group(1))

    def lie(self) -> SimpleLieAlgebra:
        from .suites import negative_control_algebra

        try:
            g = build_sl(self.rank_n)
        except KmvirError as exc:
            raise ConfigError(str(exc)) from exc
        return negative_control_algebra(g) if self.negative_control else g

    def parameter_values(self) -> dict[str, RationalFunction]:
        out = {}
        for name, text in sorted(self.params.items()):
            try:
                out[name] = from_text(text) if isinstance(text, str) else RationalFunction(text)
            except (ValueError, TypeError, KmvirError) as exc:
                raise ConfigError(f"cannot parse --set {name}={text}: {exc}") from exc
        return out

    def validate(self) -> "SuiteConfig":
        if self.suite != ALL and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if self.truncation_degree < 0:
            raise ConfigError("degree must be >= 0")
        if self.mode_range < 1:
            raise ConfigError("mode range must be >= 1")
        if self.level_structure < 0:
            raise ConfigError("level structure must be >= 0")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.format not in ("json", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        for name in self.params:
            if name not in ("k", "c", "lambda", "mu"):
                raise ConfigError(f"unknown parameter {name!r}")
        h = build_sl(self.rank_n).dual_coxeter if self.rank_n >= 2 else None
        if h is None:
            raise ConfigError(f"{self.algebra} is not simple (need N >= 2)")
        values = self.parameter_values()
        suites = set(self.suites())
        for name, value in values.items():
            if not value.is_constant():
                continue
            x = value.to_fraction()
            if name == "k" and x == -h and suites & _NEEDS_NONCRITICAL:
                raise ConfigError(f"k = {x} is the critical level -h_dual; the {self.suite} suite divides by k + h_dual")
            if name == "k" and x == 0 and suites & _RESCALES:
                raise ConfigError("k = 0 is a pole of the rescaling lambda/k")
            if name == "c" and x == 0 and "rees" in suites:
                raise ConfigError("c = 0 is a pole of the rescaling mu/c")
            if name == "lambda" and x == 0 and "classical" in suites:
                raise ConfigError("lambda = 0 is a pole of the tie c = k mu / lambda")
        if "k" in values and suites & _NEEDS_SYMBOLIC_K:
            raise ConfigError(f"the {sorted(suites & _NEEDS_SYMBOLIC_K)[0]} suite expands in k; leave k symbolic")
        return self

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("format")
        d.pop("cache")
        d.pop("workers")
        d["params"] = {name: to_text(v) for name, v in self.parameter_values().items()}
        return d
