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
"""Recursive subhomogeneous decompositions and inductive sequences of them.

Clutching maps are restricted to diagonal evaluation patterns: a boundary
point of stage k is sent to a list of (earlier stage, point) evaluations
whose matrix sizes add up to the size of stage k.
"""

import logging

from typing import (
    Any,
    Dict,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from cuntz_lab.datatypes.sampled_space import ClosedRegion, SampledSpace
from cuntz_lab.exceptions import DecompositionError

logger = logging.getLogger(name=__name__)

Target = Tuple[int, str]


class RshStage:
    """Stage data: base space X_k, boundary X_k^(0), size n(k), clutching."""

    def __init__(self,
                 base_space: SampledSpace,
                 matrix_size: int,
                 boundary: Optional[ClosedRegion] = None,
                 clutch: Optional[Mapping[str, Sequence[Target]]] = None
                 ) -> None:
        if matrix_size < 1:
            raise DecompositionError(
                f"matrix size must be positive, got {matrix_size}")
        if boundary is None:
            boundary = ClosedRegion(base_space, [])
        if boundary.space != base_space:
            raise DecompositionError(
                f"boundary is not a region of {base_space.label}")
        clutch = dict(clutch or {})
        if set(clutch) != set(boundary.members):
            raise DecompositionError(
                f"clutching must be given exactly on the boundary of "
                f"{base_space.label}")
        self.base_space = base_space
        self.matrix_size = matrix_size
        self.boundary = boundary
        self.clutch: Dict[str, Tuple[Target, ...]] = {
            p: tuple((int(k), str(y)) for k, y in clutch[p])
            for p in boundary.ordered_members()
        }

    @property
    def dim(self) -> int:
        return self.base_space.covering_dim

    def interior_points(self) -> List[str]:
        return [
            p for p in self.base_space.point_ids
            if p not in self.boundary.members
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": self.base_space.to_dict(),
            "boundary": self.boundary.ordered_members(),
            "matrix_size": self.matrix_size,
            "clutch": [{
                "point": p,
                "targets": [list(t) for t in targets]
            } for p, targets in self.clutch.items()],
        }


class RshDecomposition:
    """An ordered list of stages; its length is len(stages) - 1."""

    def __init__(self, stages: Sequence[RshStage], label: str = "") -> None:
        if len(stages) == 0:
            raise DecompositionError("a decomposition needs a stage")
        if len(stages[0].boundary) != 0:
            raise DecompositionError("stage 0 must have empty boundary")
        for k, stage in enumerate(stages):
            for point_id, targets in stage.clutch.items():
                total = 0
                for target_stage, target_point in targets:
                    if not 0 <= target_stage < k:
                        raise DecompositionError(
                            f"stage {k} point {point_id}: clutch target "
                            f"stage {target_stage} is not an earlier stage")
                    if target_point not in stages[target_stage].base_space:
                        raise DecompositionError(
                            f"stage {k} point {point_id}: no point "
                            f"{target_point} in stage {target_stage}")
                    total += stages[target_stage].matrix_size
                if total != stage.matrix_size:
                    raise DecompositionError(
                        f"stage {k} point {point_id}: clutch sizes add to "
                        f"{total}, not {stage.matrix_size}")
        self.stages = list(stages)
        self.label = label

    @property
    def length(self) -> int:
        return len(self.stages) - 1

    @property
    def matrix_sizes(self) -> List[int]:
        return [s.matrix_size for s in self.stages]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "stages": [s.to_dict() for s in self.stages],
        }


class ConnectingPattern(NamedTuple):
    """Stage `target_stage` of the next term receives `multiplicity` copies
    of each listed source stage (pullbacks or point evaluations alike)."""
    target_stage: int
    sources: Tuple[Tuple[int, int], ...]


class InductiveSequence:
    """Decompositions joined by unital diagonal connecting patterns."""

    def __init__(self,
                 terms: Sequence[RshDecomposition],
                 maps: Sequence[Sequence[ConnectingPattern]],
                 label: str = "") -> None:
        if len(terms) == 0:
            raise DecompositionError("a sequence needs a term")
        if len(maps) != len(terms) - 1:
            raise DecompositionError(
                f"{len(terms)} terms need {len(terms) - 1} connecting maps, "
                f"got {len(maps)}")
        for j, patterns in enumerate(maps):
            source, target = terms[j], terms[j + 1]
            covered = sorted(p.target_stage for p in patterns)
            if covered != list(range(len(target.stages))):
                raise DecompositionError(
                    f"map {j}: patterns must cover every stage of term "
                    f"{j + 1} once")
            for pattern in patterns:
                total = 0
                for source_stage, multiplicity in pattern.sources:
                    if not 0 <= source_stage < len(source.stages):
                        raise DecompositionError(
                            f"map {j}: no source stage {source_stage}")
                    if multiplicity < 1:
                        raise DecompositionError(
                            f"map {j}: multiplicities must be positive")
                    total += multiplicity * source.matrix_sizes[source_stage]
                expected = target.matrix_sizes[pattern.target_stage]
                if total != expected:
                    raise DecompositionError(
                        f"map {j} is not unital at stage "
                        f"{pattern.target_stage}: {total} != {expected}")
        self.terms = list(terms)
        self.maps = [list(m) for m in maps]
        self.label = label

    def __len__(self) -> int:
        return len(self.terms)
