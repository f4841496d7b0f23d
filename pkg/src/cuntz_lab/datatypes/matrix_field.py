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
"""Matrix-valued functions on sampled spaces"""

import logging

from typing import (
    Any,
    Dict,
    FrozenSet,
    List,
    Mapping,
    NamedTuple,
    Tuple,
)

import numpy as np

from cuntz_lab import constants
from cuntz_lab.datatypes.sampled_space import SampledSpace
from cuntz_lab.exceptions import FieldError

logger = logging.getLogger(name=__name__)


def _frozen(matrix: np.ndarray) -> np.ndarray:
    frozen = np.array(matrix, dtype=complex, copy=True)
    frozen.flags.writeable = False
    return frozen


class OperatorField:
    """An n x n complex matrix at every point of a sampled space."""

    def __init__(self, space: SampledSpace, n: int,
                 values: Mapping[str, Any]) -> None:
        if n < 1:
            raise FieldError(f"matrix size must be positive, got {n}")
        missing = [p for p in space.point_ids if p not in values]
        if missing:
            raise FieldError(f"field on {space.label} misses points {missing}")
        extra = [p for p in values if p not in space]
        if extra:
            raise FieldError(f"field values outside {space.label}: {extra}")

        self.space = space
        self.n = n
        self._values: Dict[str, np.ndarray] = dict()
        for point_id in space.point_ids:
            matrix = np.asarray(values[point_id], dtype=complex)
            if matrix.shape != (n, n):
                raise FieldError(f"value at {point_id} has shape "
                                 f"{matrix.shape}, expected {(n, n)}")
            if not np.all(np.isfinite(matrix)):
                raise FieldError(f"value at {point_id} is not finite")
            self._values[point_id] = _frozen(matrix)

    def value(self, point_id: str) -> np.ndarray:
        return self._values[point_id]

    def items(self) -> List[Tuple[str, np.ndarray]]:
        return [(p, self._values[p]) for p in self.space.point_ids]

    def norm_bound(self) -> float:
        """Max over sample points of the operator norm."""
        return max(float(np.linalg.norm(m, 2)) for _, m in self.items())

    def is_unitary(self, tol: float = constants.UNITARY_TOL) -> bool:
        identity = np.eye(self.n)
        for _, m in self.items():
            if np.max(np.abs(m @ m.conj().T - identity)) > tol:
                return False
        return True

    def adjoint(self) -> "OperatorField":
        return OperatorField(self.space, self.n,
                             {p: m.conj().T
                              for p, m in self.items()})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space_label": self.space.label,
            "n": self.n,
            "values": {
                p: [[[float(entry.real), float(entry.imag)] for entry in row]
                    for row in m]
                for p, m in self.items()
            },
        }


class MatrixField(OperatorField):
    """A positive matrix field: Hermitian and positive semidefinite pointwise.

    Values are symmetrised after validation, so later spectral work sees
    exactly Hermitian input.
    """

    def __init__(self,
                 space: SampledSpace,
                 n: int,
                 values: Mapping[str, Any],
                 hermitian_tol: float = constants.HERMITIAN_TOL,
                 psd_tol: float = constants.PSD_TOL) -> None:
        super().__init__(space, n, values)
        for point_id, m in list(self._values.items()):
            skew = float(np.max(np.abs(m - m.conj().T)))
            if skew > hermitian_tol:
                raise FieldError(f"value at {point_id} is not Hermitian "
                                 f"(max |M - M*| = {skew:.3e})")
            sym = (m + m.conj().T) / 2
            min_eig = float(np.linalg.eigvalsh(sym)[0])
            if min_eig < -psd_tol:
                raise FieldError(f"value at {point_id} is not positive "
                                 f"(min eigenvalue {min_eig:.3e})")
            self._values[point_id] = _frozen(sym)

    def eigh(self, point_id: str) -> Tuple[np.ndarray, np.ndarray]:
        """Eigenvalues (ascending) and eigenvectors at a point."""
        return np.linalg.eigh(self._values[point_id])

    def eigenvalues(self, point_id: str) -> np.ndarray:
        return np.linalg.eigvalsh(self._values[point_id])

    def __repr__(self) -> str:
        return f"MatrixField(space={self.space.label!r}, n={self.n})"


class RankFunction:
    """Pointwise ranks of a matrix field at threshold `tol`."""

    def __init__(self, space: SampledSpace, tol: float, n: int,
                 ranks: Mapping[str, int]) -> None:
        for point_id in space.point_ids:
            r = ranks[point_id]
            if r < 0 or r > n:
                raise FieldError(f"rank {r} at {point_id} outside [0, {n}]")
        self.space = space
        self.tol = tol
        self.n = n
        self.ranks: Dict[str, int] = {
            p: int(ranks[p])
            for p in space.point_ids
        }

    def __getitem__(self, point_id: str) -> int:
        return self.ranks[point_id]

    def plateaus(self) -> List[Tuple[int, List[str]]]:
        """The partition into rank plateaus F_i, by increasing rank."""
        grouped: Dict[int, List[str]] = dict()
        for point_id in self.space.point_ids:
            grouped.setdefault(self.ranks[point_id], []).append(point_id)
        return sorted(grouped.items())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tol": self.tol,
            "n": self.n,
            "ranks": dict(self.ranks),
            "plateaus": [{
                "rank": r,
                "points": pts
            } for r, pts in self.plateaus()],
        }


class Plateau(NamedTuple):
    rank: int
    points: FrozenSet[str]
    closure: FrozenSet[str]
    projections: Dict[str, np.ndarray]


class SupportData:
    """Nested support projection fields over the closures of rank plateaus."""

    def __init__(self, plateaus: List[Plateau]) -> None:
        self.plateaus = plateaus

    def violations(self,
                   tol: float = constants.PROJECTION_TOL) -> List[str]:
        """Human-readable list of broken invariants, empty when valid."""
        problems = []
        ranks = [pl.rank for pl in self.plateaus]
        if any(r1 >= r2 for r1, r2 in zip(ranks, ranks[1:])):
            problems.append(f"plateau ranks not increasing: {ranks}")

        for pl in self.plateaus:
            for point_id in sorted(pl.closure):
                p = pl.projections.get(point_id)
                if p is None:
                    problems.append(
                        f"rank {pl.rank}: no projection at {point_id}")
                    continue
                if np.linalg.norm(p @ p - p, 2) > tol:
                    problems.append(
                        f"rank {pl.rank}: not idempotent at {point_id}")
                if np.linalg.norm(p - p.conj().T, 2) > tol:
                    problems.append(
                        f"rank {pl.rank}: not self-adjoint at {point_id}")

        for i, lower in enumerate(self.plateaus):
            for upper in self.plateaus[i + 1:]:
                for point_id in sorted(lower.closure & upper.closure):
                    p = lower.projections[point_id]
                    q = upper.projections[point_id]
                    # p <= q for projections iff qp = p.
                    if np.linalg.norm(q @ p - p, 2) > tol:
                        problems.append(f"ranks {lower.rank} <= {upper.rank}: "
                                        f"not nested at {point_id}")
        return problems

    def is_valid(self, tol: float = constants.PROJECTION_TOL) -> bool:
        return len(self.violations(tol)) == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "plateaus": [{
                "rank": pl.rank,
                "points": sorted(pl.points),
                "closure": sorted(pl.closure),
            } for pl in self.plateaus]
        }
