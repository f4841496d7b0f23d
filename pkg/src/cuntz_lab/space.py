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
"""Grid construction and region operations on sampled spaces"""

import itertools
import logging

from fractions import Fraction
from typing import (
    Iterable,
    List,
    Optional,
    Sequence,
)

from cuntz_lab.datatypes.sampled_space import ClosedRegion, SampledSpace
from cuntz_lab.exceptions import SpaceError

logger = logging.getLogger(name=__name__)


def grid_point_id(index: Sequence[int]) -> str:
    return ",".join(str(i) for i in index)


def make_grid(dims: Sequence[int],
              resolution: int,
              label: Optional[str] = None) -> SampledSpace:
    """Samples the product of cubes [0,1]^d1 x [0,1]^d2 x ...

    Each axis gets resolution+1 equally spaced rational samples. Points are
    identified by their comma-joined axis indices, adjacency is the
    axis-neighbour relation and covering_dim is the total dimension.
    """
    if len(dims) == 0:
        raise SpaceError("grid needs at least one cube factor")
    if any(d < 1 for d in dims):
        raise SpaceError(f"cube dimensions must be positive: {list(dims)}")
    if resolution < 1:
        raise SpaceError(f"resolution must be >= 1, got {resolution}")

    total_dim = sum(dims)
    if label is None:
        label = "grid-" + "x".join(str(d) for d in dims) + f"-r{resolution}"

    axis = range(resolution + 1)
    points = []
    adjacency = []
    for index in itertools.product(axis, repeat=total_dim):
        point_id = grid_point_id(index)
        points.append(
            (point_id, tuple(Fraction(i, resolution) for i in index)))
        for ax in range(total_dim):
            if index[ax] + 1 <= resolution:
                up = list(index)
                up[ax] += 1
                adjacency.append((point_id, grid_point_id(up)))

    logger.debug(f"Built grid {label} with {len(points)} points")
    return SampledSpace(label, points, adjacency, total_dim)


def region_complement_closure(region: ClosedRegion) -> ClosedRegion:
    """Returns the members together with every point adjacent to a member.

    This is the sample model of the closure used when a region and its
    complement meet.
    """
    space = region.space
    closure = set(region.members)
    for member in region.members:
        closure.update(space.neighbours(member))
    return ClosedRegion(space, closure)


def complement(region: ClosedRegion) -> ClosedRegion:
    return ClosedRegion(region.space,
                        (p for p in region.space if p not in region.members))


def components(space: SampledSpace,
               members: Optional[Iterable[str]] = None) -> List[List[str]]:
    """Adjacency-connected components of `members` (default: all points).

    Components and their points follow the point order of the space.
    """
    if members is None:
        keep = set(space.point_ids)
    else:
        keep = set(members)
        outside = keep.difference(space.point_ids)
        if outside:
            raise SpaceError(f"points not in space: {sorted(outside)}")

    seen = set()
    result = []
    for start in space.point_ids:
        if start not in keep or start in seen:
            continue
        component = set()
        stack = [start]
        seen.add(start)
        while stack:
            current = stack.pop()
            component.add(current)
            for nb in space.neighbours(current):
                if nb in keep and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        result.append([p for p in space.point_ids if p in component])
    return result


def boundary_free_points(space: SampledSpace,
                         boundary: Optional[ClosedRegion]) -> List[str]:
    """Points of `space` outside `boundary`, in space order."""
    if boundary is None:
        return list(space.point_ids)
    return [p for p in space.point_ids if p not in boundary.members]
