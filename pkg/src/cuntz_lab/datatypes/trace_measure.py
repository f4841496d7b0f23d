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
"""Trace measures on sampled spaces"""

import logging

from fractions import Fraction
from typing import (
    Any,
    Dict,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
)

from cuntz_lab.datatypes.sampled_space import SampledSpace
from cuntz_lab.exceptions import ComparisonError

logger = logging.getLogger(name=__name__)


class TraceMeasure:
    """A trace given by finitely many weighted point evaluations.

    Each evaluation is normalised by the matrix size at that point, so
    d_tau(a) = sum_x weight(x) * rank(a(x)) / matrix_size_at(x).
    Points without weight are left out of `weights`.
    """

    def __init__(self, label: str, space: SampledSpace,
                 weights: Mapping[str, Fraction],
                 matrix_size_at: Mapping[str, int]) -> None:
        clean: Dict[str, Fraction] = dict()
        for point_id in space.point_ids:
            if point_id not in weights:
                continue
            weight = Fraction(weights[point_id])
            if weight < 0:
                raise ComparisonError(
                    f"trace {label}: negative weight at {point_id}")
            if weight > 0:
                clean[point_id] = weight
        stray = [p for p in weights if p not in space]
        if stray:
            raise ComparisonError(f"trace {label}: weights outside "
                                  f"{space.label}: {stray}")
        total = sum(clean.values(), Fraction(0))
        if total != 1:
            raise ComparisonError(
                f"trace {label}: weights sum to {total}, not 1")
        for point_id in clean:
            size = matrix_size_at.get(point_id)
            if size is None or size < 1:
                raise ComparisonError(f"trace {label}: no positive matrix "
                                      f"size at {point_id}")

        self.label = label
        self.space = space
        self.weights = clean
        self.matrix_size_at = {p: int(matrix_size_at[p]) for p in clean}

    def support(self) -> List[str]:
        return list(self.weights)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "weights": dict(self.weights),
            "matrix_size_at": dict(self.matrix_size_at),
        }

    def __repr__(self) -> str:
        return (f"TraceMeasure({self.label!r}, "
                f"support={len(self.weights)} points)")


def uniform_trace(space: SampledSpace,
                  matrix_size: int,
                  label: str = "uniform") -> TraceMeasure:
    weight = Fraction(1, len(space))
    return TraceMeasure(label, space, {p: weight
                                       for p in space.point_ids},
                        {p: matrix_size
                         for p in space.point_ids})


def extreme_trace(space: SampledSpace,
                  point_id: str,
                  matrix_size: int,
                  label: Optional[str] = None) -> TraceMeasure:
    """Point evaluation composed with the normalised trace."""
    if label is None:
        label = f"ev:{point_id}"
    return TraceMeasure(label, space, {point_id: Fraction(1)},
                        {point_id: matrix_size})


class TraceSet:
    """An ordered registry of traces with unique labels."""

    def __init__(self, traces: Sequence[TraceMeasure]) -> None:
        labels = [t.label for t in traces]
        if len(set(labels)) != len(labels):
            raise ComparisonError(f"duplicate trace labels: {labels}")
        spaces = {t.space.label for t in traces}
        if len(spaces) > 1:
            raise ComparisonError(f"traces span several spaces: {spaces}")
        self.traces = list(traces)

    @property
    def ids(self) -> List[str]:
        return [t.label for t in self.traces]

    def __iter__(self) -> Iterator[TraceMeasure]:
        return iter(self.traces)

    def __len__(self) -> int:
        return len(self.traces)


def all_extreme_traces(space: SampledSpace, matrix_size: int) -> TraceSet:
    return TraceSet(
        [extreme_trace(space, p, matrix_size) for p in space.point_ids])
