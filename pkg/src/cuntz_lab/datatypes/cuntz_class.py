# Copyright 2026 cuntz-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Cuntz classes, affine functions on traces and spectral invariants"""

import logging

from dataclasses import dataclass, field
from fractions import Fraction
from typing import (
    Any,
    Dict,
    Mapping,
    Optional,
    Tuple,
    Union,
)

from cuntz_lab.datatypes.matrix_field import RankFunction
from cuntz_lab.exceptions import ComparisonError

logger = logging.getLogger(name=__name__)

Number = Union[Fraction, int, float]

PROJECTION = "projection"
SOFT = "soft"


class LAffFunction:
    """A lower semicontinuous affine function evaluated on registered traces."""

    def __init__(self, values: Mapping[str, Number]) -> None:
        for trace_id, value in values.items():
            if value < 0:
                raise ComparisonError(
                    f"affine function negative at trace {trace_id}")
        self.values: Dict[str, Number] = dict(values)

    @classmethod
    def constant(cls, trace_ids, value: Number) -> "LAffFunction":
        return cls({t: value for t in trace_ids})

    @property
    def trace_ids(self) -> frozenset:
        return frozenset(self.values)

    def is_strictly_positive(self) -> bool:
        return all(v > 0 for v in self.values.values())

    def __getitem__(self, trace_id: str) -> Number:
        return self.values[trace_id]

    def __add__(self, other: "LAffFunction") -> "LAffFunction":
        require_same_traces(self.trace_ids, other.trace_ids)
        return LAffFunction(
            {t: self.values[t] + other.values[t]
             for t in self.values})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LAffFunction):
            return NotImplemented
        return self.values == other.values

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.values.items())))

    def __repr__(self) -> str:
        return f"LAffFunction({self.values})"

    def to_dict(self) -> Dict[str, Any]:
        return {"values": dict(self.values)}


def require_same_traces(left: frozenset, right: frozenset) -> None:
    if left != right:
        raise ComparisonError(f"trace sets differ: {sorted(left)} vs "
                              f"{sorted(right)}")


class CuntzClassRepr:
    """The class of a positive field in V(A) (projection kind) or in
    W(A)_+ (soft kind). `iota` is the induced affine function."""

    def __init__(self, kind: str, rank_fn: RankFunction, iota: LAffFunction,
                 label: str) -> None:
        if kind not in (PROJECTION, SOFT):
            raise ComparisonError(f"unknown class kind {kind!r}")
        if kind == PROJECTION:
            space = rank_fn.space
            for x, y in space.adjacency_pairs():
                if rank_fn[x] != rank_fn[y]:
                    raise ComparisonError(
                        f"class {label}: projection kind needs locally "
                        f"constant rank, differs on edge ({x}, {y})")
        self.kind = kind
        self.rank_fn = rank_fn
        self.iota = iota
        self.label = label

    @property
    def is_projection(self) -> bool:
        return self.kind == PROJECTION

    def __repr__(self) -> str:
        return f"CuntzClassRepr({self.label!r}, kind={self.kind})"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "kind": self.kind,
            "ranks": dict(self.rank_fn.ranks),
            "iota": dict(self.iota.values),
        }


@dataclass
class SpectralInvariant:
    """Binned spectrum plus, per trace, the mass of each eigenvalue bin."""
    bins: int
    spectrum: Tuple[int, ...]
    distributions: Dict[str, Dict[int, Fraction]] = field(
        default_factory=dict)

    def spectrum_edges(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(k, self.bins) for k in self.spectrum)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bins": self.bins,
            "spectrum": list(self.spectrum_edges()),
            "distributions": {
                t: {
                    str(Fraction(k, self.bins)): mass
                    for k, mass in sorted(dist.items())
                }
                for t, dist in self.distributions.items()
            },
        }


@dataclass
class Certificate:
    """Outcome of a sufficient-condition check. `witness` names a violating
    point (or (stage, point)) when the check fails."""
    holds: bool
    witness: Optional[Any] = None
    checked: int = 0
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "holds": self.holds,
            "witness": self.witness,
            "checked": self.checked,
        }
        result.update(self.detail)
        return result
