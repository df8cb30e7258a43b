"""Independent oracles: generating functions for graded dimensions."""

from __future__ import annotations


def _times_inverse_factor(series: list[int], j: int, exponent: int) -> list[int]:
    """Multiply by ``(1 - q^j)^(-exponent)`` by repeated geometric-series division."""
    out = list(series)
    for _ in range(exponent):
        for d in range(j, len(out)):
            out[d] += out[d - j]
    return out


def graded_dimensions(dim_g: int, with_virasoro: bool, degree: int) -> list[int]:
    """Coefficients of ``prod_{j>=1} (1-q^j)^(-dim g) * prod_{j>=2} (1-q^j)^(-1)`` through ``q^degree``.

    The Virasoro factor is included only when ``with_virasoro``.  Counting by
    weight, the same product serves every level structure.
    """
    series = [1] + [0] * degree
    for j in range(1, degree + 1):
        series = _times_inverse_factor(series, j, dim_g)
        if with_virasoro and j >= 2:
            series = _times_inverse_factor(series, j, 1)
    return series
