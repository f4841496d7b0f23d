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
"""Discrete measures on cubes kept in marginal form.

A measure is a weighted mixture of product measures (one discrete marginal
per coordinate) plus a list of weighted point masses. Every measure the
trace-simplex maps produce stays in this form, so nothing is expanded to a
joint distribution unless total variation is asked for.
"""

import itertools
import logging

from fractions import Fraction
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Sequence,
    Tuple,
)

from cuntz_lab.exceptions import MeasureError

logger = logging.getLogger(name=__name__)

# (value, probability) pairs sorted by value; probabilities sum to 1.
Marginal = Tuple[Tuple[Fraction, Fraction], ...]
Point = Tuple[Fraction, ...]

# Largest joint support expanded by `joint`.
MAX_JOINT_SUPPORT = 10**6


def make_marginal(distribution: Mapping[Any, Any]) -> Marginal:
    """Normalises a value -> probability mapping into a Marginal."""
    merged: Dict[Fraction, Fraction] = dict()
    for value, prob in distribution.items():
        value, prob = Fraction(value), Fraction(prob)
        if prob < 0:
            raise MeasureError(f"negative probability at {value}")
        if prob > 0:
            merged[value] = merged.get(value, Fraction(0)) + prob
    if sum(merged.values(), Fraction(0)) != 1:
        raise MeasureError("marginal probabilities must sum to 1")
    return tuple(sorted(merged.items()))


def point_marginal(value: Any) -> Marginal:
    return ((Fraction(value), Fraction(1)), )


class ProductComponent(NamedTuple):
    weight: Fraction
    marginals: Tuple[Marginal, ...]


class MarginalMeasure:
    """sum_c weight_c (x)_j marginal_{c,j}  +  sum_a weight_a delta_{point_a}"""

    def __init__(self, dim: int, components: Iterable[ProductComponent],
                 atoms: Iterable[Tuple[Fraction, Point]] = ()) -> None:
        if dim < 1:
            raise MeasureError(f"dimension must be positive, got {dim}")
        merged: Dict[Tuple[Marginal, ...], Fraction] = dict()
        for weight, marginals in components:
            weight = Fraction(weight)
            if weight < 0:
                raise MeasureError("negative component weight")
            if len(marginals) != dim:
                raise MeasureError(f"component has {len(marginals)} "
                                   f"marginals, expected {dim}")
            if weight > 0:
                key = tuple(marginals)
                merged[key] = merged.get(key, Fraction(0)) + weight
        point_weights: Dict[Point, Fraction] = dict()
        for weight, point in atoms:
            weight = Fraction(weight)
            point = tuple(Fraction(v) for v in point)
            if weight < 0:
                raise MeasureError("negative atom weight")
            if len(point) != dim:
                raise MeasureError(f"atom {point} is not in dimension {dim}")
            if weight > 0:
                point_weights[point] = point_weights.get(
                    point, Fraction(0)) + weight

        self.dim = dim
        self.components: Tuple[ProductComponent, ...] = tuple(
            ProductComponent(w, m) for m, w in sorted(merged.items()))
        self.atoms: Tuple[Tuple[Fraction, Point], ...] = tuple(
            (w, p) for p, w in sorted(point_weights.items()))

    @classmethod
    def product(cls, marginals: Sequence[Marginal]) -> "MarginalMeasure":
        return cls(len(marginals),
                   [ProductComponent(Fraction(1), tuple(marginals))])

    @classmethod
    def point_mass(cls, point: Sequence[Any]) -> "MarginalMeasure":
        return cls(len(point), [],
                   [(Fraction(1), tuple(Fraction(v) for v in point))])

    @classmethod
    def mixture(
            cls, parts: Sequence[Tuple[Fraction,
                                       "MarginalMeasure"]]) -> "MarginalMeasure":
        """sum_i weight_i * measure_i; all measures share a dimension."""
        if len(parts) == 0:
            raise MeasureError("empty mixture")
        dims = {m.dim for _, m in parts}
        if len(dims) != 1:
            raise MeasureError(f"mixture of dimensions {sorted(dims)}")
        components = []
        atoms = []
        for weight, measure in parts:
            weight = Fraction(weight)
            components.extend(
                ProductComponent(weight * c.weight, c.marginals)
                for c in measure.components)
            atoms.extend((weight * w, p) for w, p in measure.atoms)
        return cls(dims.pop(), components, atoms)

    @property
    def product_mass(self) -> Fraction:
        return sum((c.weight for c in self.components), Fraction(0))

    @property
    def atom_mass(self) -> Fraction:
        return sum((w for w, _ in self.atoms), Fraction(0))

    @property
    def total_mass(self) -> Fraction:
        return self.product_mass + self.atom_mass

    def is_probability(self) -> bool:
        return self.total_mass == 1

    def marginal(self, coords: Sequence[int]) -> "MarginalMeasure":
        """Integrates out every coordinate not in `coords`; the kept
        coordinates appear in the order given."""
        if len(coords) == 0:
            raise MeasureError("cannot marginalise onto no coordinates")
        if any(not 0 <= c < self.dim for c in coords):
            raise MeasureError(f"coordinates {list(coords)} outside "
                               f"dimension {self.dim}")
        components = [
            ProductComponent(c.weight, tuple(c.marginals[j] for j in coords))
            for c in self.components
        ]
        atoms = [(w, tuple(p[j] for j in coords)) for w, p in self.atoms]
        return MarginalMeasure(len(coords), components, atoms)

    def permuted(self, order: Sequence[int]) -> "MarginalMeasure":
        """New coordinate p carries old coordinate order[p]."""
        if sorted(order) != list(range(self.dim)):
            raise MeasureError(f"{list(order)} is not a permutation")
        return self.marginal(order)

    def joint(self) -> Dict[Point, Fraction]:
        """Expanded point -> mass mapping."""
        result: Dict[Point, Fraction] = dict()
        for weight, marginals in self.components:
            size = 1
            for marginal in marginals:
                size *= len(marginal)
            if size > MAX_JOINT_SUPPORT:
                raise MeasureError(f"joint support of {size} points is "
                                   f"too large to expand")
            for combo in itertools.product(*marginals):
                point = tuple(value for value, _ in combo)
                mass = weight
                for _, prob in combo:
                    mass *= prob
                result[point] = result.get(point, Fraction(0)) + mass
        for weight, point in self.atoms:
            result[point] = result.get(point, Fraction(0)) + weight
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarginalMeasure):
            return NotImplemented
        return (self.dim == other.dim and self.components == other.components
                and self.atoms == other.atoms)

    def __repr__(self) -> str:
        return (f"MarginalMeasure(dim={self.dim}, "
                f"components={len(self.components)}, "
                f"atoms={len(self.atoms)})")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "components": [{
                "weight": c.weight,
                "marginals": [[[v, p] for v, p in m] for m in c.marginals],
            } for c in self.components],
            "atoms": [{
                "weight": w,
                "point": list(p)
            } for w, p in self.atoms],
        }


def total_variation(mu: MarginalMeasure, nu: MarginalMeasure) -> Fraction:
    """sum over points of |mu - nu|, the full (unhalved) mass of the
    difference."""
    if mu.dim != nu.dim:
        raise MeasureError(f"dimensions differ: {mu.dim} vs {nu.dim}")
    left, right = mu.joint(), nu.joint()
    keys: List[Point] = sorted(set(left) | set(right))
    return sum((abs(left.get(k, Fraction(0)) - right.get(k, Fraction(0)))
                for k in keys), Fraction(0))
