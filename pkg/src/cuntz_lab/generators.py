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
"""Seeded random instances for the property sweeps"""

import logging
import math

from fractions import Fraction
from typing import (
    Dict,
    List,
    Optional,
    Tuple,
)

import numpy as np
import scipy.stats

from cuntz_lab import space as space_ops
from cuntz_lab.datatypes.marginal_measure import (
    Marginal,
    MarginalMeasure,
    make_marginal,
)
from cuntz_lab.datatypes.matrix_field import MatrixField, OperatorField
from cuntz_lab.datatypes.sampled_space import SampledSpace
from cuntz_lab.exceptions import PreconditionError

logger = logging.getLogger(name=__name__)

# Nonzero eigenvalues of generated fields are drawn from [MIN_EIGENVALUE, 1].
MIN_EIGENVALUE = 0.05


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """Independent generator for a (seed, stream...) key."""
    return np.random.default_rng([seed, *stream])


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.random())]])
    return scipy.stats.unitary_group.rvs(n, random_state=rng)


def random_psd(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Random positive matrix of the given rank and norm at most one."""
    if not 0 <= rank <= n:
        raise PreconditionError(f"rank {rank} outside 0..{n}")
    eigenvalues = np.zeros(n)
    eigenvalues[:rank] = rng.uniform(MIN_EIGENVALUE, 1.0, size=rank)
    u = random_unitary(n, rng)
    return (u * eigenvalues) @ u.conj().T


def random_projection(n: int, rank: int,
                      rng: np.random.Generator) -> np.ndarray:
    u = random_unitary(n, rng)
    columns = u[:, :rank]
    return columns @ columns.conj().T


def random_space(rng: np.random.Generator, max_points: int = 8,
                 max_dim: int = 2) -> SampledSpace:
    """A small grid: a sampled interval or square."""
    dim = int(rng.integers(1, max_dim + 1))
    side = max(1, int(math.floor(max_points**(1.0 / dim))) - 1)
    resolution = int(rng.integers(1, side + 1))
    return space_ops.make_grid([dim], resolution)


def random_field(space: SampledSpace,
                 n: int,
                 rng: np.random.Generator,
                 ranks: Optional[Dict[str, int]] = None) -> MatrixField:
    values = dict()
    for point_id in space.point_ids:
        rank = ranks[point_id] if ranks else int(rng.integers(0, n + 1))
        values[point_id] = random_psd(n, rank, rng)
    return MatrixField(space, n, values)


def random_projection_field(space: SampledSpace, n: int, rank: int,
                            rng: np.random.Generator) -> MatrixField:
    return MatrixField(
        space, n,
        {p: random_projection(n, rank, rng)
         for p in space.point_ids})


def random_unitary_field(space: SampledSpace, n: int,
                         rng: np.random.Generator) -> OperatorField:
    return OperatorField(space, n,
                         {p: random_unitary(n, rng)
                          for p in space.point_ids})


def certified_pair(
    space: SampledSpace, n: int, rng: np.random.Generator,
    dims: Dict[str, int]
) -> Tuple[MatrixField, MatrixField]:
    """a, b with rank a(x) + (d(x) - 1)/2 <= rank b(x) everywhere.

    With d(x) <= 1 the ranks may be equal; from d(x) = 2 on the gap is
    positive.
    """
    if any(dims[p] < 0 for p in space.point_ids):
        raise PreconditionError("certified pairs need d(x) >= 0")
    ranks_a, ranks_b = dict(), dict()
    for point_id in space.point_ids:
        gap = math.ceil(Fraction(dims[point_id] - 1, 2))
        if gap > n:
            raise PreconditionError(
                f"matrix size {n} leaves no room for gap {gap}")
        ranks_b[point_id] = int(rng.integers(gap, n + 1))
        ranks_a[point_id] = int(rng.integers(0, ranks_b[point_id] - gap + 1))
    return (random_field(space, n, rng, ranks_a),
            random_field(space, n, rng, ranks_b))


def random_marginal(rng: np.random.Generator,
                    support: int,
                    denominator: int = 8) -> Marginal:
    """Support points k/denominator with random rational probabilities."""
    values = rng.choice(denominator + 1,
                        size=min(support, denominator + 1),
                        replace=False)
    raw = [int(w) for w in rng.integers(1, 10, size=len(values))]
    total = sum(raw)
    return make_marginal({
        Fraction(int(v), denominator): Fraction(w, total)
        for v, w in zip(values, raw)
    })


def random_product_measure(rng: np.random.Generator,
                           dim: int,
                           support: int = 2) -> MarginalMeasure:
    marginals: List[Marginal] = [
        random_marginal(rng, support) for _ in range(dim)
    ]
    return MarginalMeasure.product(marginals)
