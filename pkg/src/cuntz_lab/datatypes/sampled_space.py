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
"""Sampled compact spaces and closed regions"""

import logging

from fractions import Fraction
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Sequence,
    Tuple,
    Union,
)

from cuntz_lab.exceptions import SpaceError

logger = logging.getLogger(name=__name__)

Coordinate = Union[Fraction, float]


class SampledSpace:
    """A finite sample of a compact metric space.

    Topology is carried only by the symmetric, irreflexive `adjacency`
    relation. `covering_dim` is declared metadata and never inferred.
    Points keep the order in which they were given; every reduction over
    the space walks them in that order.
    """

    def __init__(self,
                 label: str,
                 points: Sequence[Tuple[str, Sequence[Coordinate]]],
                 adjacency: Iterable[Tuple[str, str]],
                 covering_dim: int) -> None:
        if covering_dim < 0:
            raise SpaceError(f"covering_dim must be >= 0, got {covering_dim}")

        coords: Dict[str, Tuple[Coordinate, ...]] = dict()
        for point_id, point_coords in points:
            if point_id in coords:
                raise SpaceError(f"duplicate point identifier {point_id}")
            coords[point_id] = tuple(point_coords)

        neighbours: Dict[str, set] = {point_id: set() for point_id in coords}
        for x, y in adjacency:
            if x == y:
                raise SpaceError(f"adjacency is not irreflexive at {x}")
            if x not in coords or y not in coords:
                raise SpaceError(f"adjacency pair ({x}, {y}) leaves the space")
            neighbours[x].add(y)
            neighbours[y].add(x)

        self.label = label
        self.covering_dim = covering_dim
        self._coords = coords
        self._neighbours: Dict[str, FrozenSet[str]] = {
            k: frozenset(v)
            for k, v in neighbours.items()
        }

    @property
    def point_ids(self) -> Tuple[str, ...]:
        return tuple(self._coords)

    def coords(self, point_id: str) -> Tuple[Coordinate, ...]:
        return self._coords[point_id]

    def neighbours(self, point_id: str) -> FrozenSet[str]:
        return self._neighbours[point_id]

    def adjacency_pairs(self) -> List[Tuple[str, str]]:
        """Each undirected edge once, in point order."""
        order = {p: idx for idx, p in enumerate(self._coords)}
        pairs = []
        for x in self._coords:
            for y in sorted(self._neighbours[x], key=order.__getitem__):
                if order[x] < order[y]:
                    pairs.append((x, y))
        return pairs

    def __contains__(self, point_id: object) -> bool:
        return point_id in self._coords

    def __iter__(self) -> Iterator[str]:
        return iter(self._coords)

    def __len__(self) -> int:
        return len(self._coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SampledSpace):
            return NotImplemented
        if self is other:
            return True
        return (self.label == other.label
                and self.covering_dim == other.covering_dim
                and self._coords == other._coords
                and self._neighbours == other._neighbours)

    def __hash__(self) -> int:
        return hash((self.label, self.covering_dim, tuple(self._coords)))

    def __repr__(self) -> str:
        return (f"SampledSpace(label={self.label!r}, points={len(self)}, "
                f"covering_dim={self.covering_dim})")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "covering_dim": self.covering_dim,
            "points": [{
                "id": p,
                "coords": list(c)
            } for p, c in self._coords.items()],
            "adjacency": [list(pair) for pair in self.adjacency_pairs()],
        }


class ClosedRegion:
    """A subset of sample points modelling a closed subset."""

    def __init__(self, space: SampledSpace, members: Iterable[str]) -> None:
        members = frozenset(members)
        outside = [m for m in members if m not in space]
        if outside:
            raise SpaceError(
                f"region members not in space {space.label}: {sorted(outside)}")
        self.space = space
        self.members: FrozenSet[str] = members

    def ordered_members(self) -> List[str]:
        return [p for p in self.space.point_ids if p in self.members]

    def __contains__(self, point_id: object) -> bool:
        return point_id in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClosedRegion):
            return NotImplemented
        return self.space == other.space and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.space.label, self.members))

    def __repr__(self) -> str:
        return f"ClosedRegion({self.space.label!r}, {self.ordered_members()})"
