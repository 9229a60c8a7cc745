"""Dominance relation and Pareto-front extraction over score vectors.

All comparisons happen in canonical maximize space: minimize coordinates
are negated, minimize-absolute coordinates become -|v|. A vector
dominates another when it is at least as good everywhere and strictly
better somewhere; equal vectors never dominate, so duplicates all stay
on the front.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import copysign
from typing import Sequence

from .errors import BqrError
from .scoring import DimensionKind, DimensionSpec, Orientation, ScoredQuery


def _canonical_value(value: float, orientation: Orientation) -> float:
    if orientation is Orientation.MAXIMIZE:
        return value
    if orientation is Orientation.MINIMIZE:
        return -value
    return -abs(value)


@dataclass(frozen=True)
class OrientedVector:
    values: tuple[float, ...]
    orientations: tuple[Orientation, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.orientations):
            raise BqrError(
                f"values/orientations length mismatch: {len(self.values)} vs {len(self.orientations)}"
            )

    @property
    def canonical(self) -> tuple[float, ...]:
        return tuple(
            _canonical_value(v, o) for v, o in zip(self.values, self.orientations)
        )


def dominates(a: OrientedVector, b: OrientedVector) -> bool:
    """True iff a >= b coordinatewise in canonical space, with one strict >."""
    if a.orientations != b.orientations:
        raise BqrError("cannot compare vectors with different orientations")
    ca, cb = a.canonical, b.canonical
    return all(x >= y for x, y in zip(ca, cb)) and any(x > y for x, y in zip(ca, cb))


def _dominates_canonical(ca: tuple[float, ...], cb: tuple[float, ...]) -> bool:
    return all(x >= y for x, y in zip(ca, cb)) and any(x > y for x, y in zip(ca, cb))


def oriented(candidate: ScoredQuery, specs: Sequence[DimensionSpec]) -> OrientedVector:
    """Build the comparison vector for a scored query, checking the layout."""
    names = tuple(name for name, _ in candidate.dim_scores)
    expected = tuple(s.name for s in specs)
    if names != expected:
        raise BqrError(f"dimension layout mismatch: {names} vs {expected}")
    return OrientedVector(
        values=candidate.values,
        orientations=tuple(s.orientation for s in specs),
    )


def _front_indices(canonicals: list[tuple[float, ...]]) -> list[int]:
    # O(n^2) scan; candidate sets are at most hundreds.
    kept = []
    for i, ci in enumerate(canonicals):
        if not any(
            _dominates_canonical(cj, ci) for j, cj in enumerate(canonicals) if j != i
        ):
            kept.append(i)
    return kept


def pareto_front(
    candidates: Sequence[ScoredQuery], specs: Sequence[DimensionSpec]
) -> list[ScoredQuery]:
    """Exactly the non-dominated candidates, original order preserved."""
    if not candidates:
        return []
    canonicals = [oriented(c, specs).canonical for c in candidates]
    return [candidates[i] for i in _front_indices(canonicals)]


def pseudo_pareto_front(
    candidates: Sequence[ScoredQuery],
    specs: Sequence[DimensionSpec],
    signed_dim: str,
    original_value: float,
) -> list[ScoredQuery]:
    """Front extended with non-dominated queries biased opposite to the original.

    Branch (a): the plain front with the signed dimension oriented
    minimize-absolute. Branch (b): among candidates whose signed value
    has the opposite sign of `original_value`, the non-dominated ones
    with the signed dimension oriented toward larger magnitude (stronger
    counter-bias). Returns the union in original candidate order.
    """
    spec_by_name = {s.name: s for s in specs}
    if signed_dim not in spec_by_name:
        raise BqrError(f"unknown signed dimension {signed_dim!r}")
    if spec_by_name[signed_dim].kind is not DimensionKind.SIGNED_MEAN:
        raise BqrError(f"dimension {signed_dim!r} is not of signed-mean kind")
    if not candidates:
        return []

    dim_pos = [s.name for s in specs].index(signed_dim)
    abs_specs = tuple(
        DimensionSpec(s.name, s.kind, Orientation.MINIMIZE_ABS) if s.name == signed_dim else s
        for s in specs
    )
    keep = {id(c) for c in pareto_front(list(candidates), abs_specs)}

    original_sign = copysign(1.0, original_value) if original_value != 0.0 else 0.0
    if original_sign != 0.0:
        opposite = [c for c in candidates if c.values[dim_pos] * original_sign < 0.0]
        if opposite:
            # within the opposite-sign subset, stronger counter-bias is better:
            # all members share one sign, so maximizing |v| is a plain
            # monotone recoding of the signed value
            canonicals = []
            for c in opposite:
                vec = oriented(c, specs).canonical
                vec = vec[:dim_pos] + (abs(c.values[dim_pos]),) + vec[dim_pos + 1 :]
                canonicals.append(vec)
            for i in _front_indices(canonicals):
                keep.add(id(opposite[i]))
    return [c for c in candidates if id(c) in keep]
