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
import multiprocessing
import os
import sys
import pytest

from fractions import Fraction

import numpy as np

sys.path.append(os.path.dirname(os.path.realpath(__file__)) + "/../")

from cuntz_lab import cuntz, generators, matfield, space  # noqa: E402
from cuntz_lab.datatypes.matrix_field import MatrixField  # noqa: E402
from cuntz_lab.datatypes.sampled_space import SampledSpace  # noqa: E402
from cuntz_lab.datatypes.trace_measure import (  # noqa: E402
    TraceMeasure,
    TraceSet,
    all_extreme_traces,
    uniform_trace,
)
from cuntz_lab.exceptions import (  # noqa: E402
    ComparisonError,
    PreconditionError,
)


@pytest.fixture
def square():
    """[0,1]^2 sampled at its four corners"""
    return space.make_grid([2], 1)


def _diag_field(grid, diagonals):
    return MatrixField(grid, len(diagonals[0]),
                       {p: np.diag(d)
                        for p, d in zip(grid.point_ids, diagonals)})


@pytest.mark.parametrize(
    ("ranks_a", "ranks_b", "dim", "holds"),
    [
        ([0, 0, 0, 0], [1, 1, 1, 1], 2, True),
        ([1, 1, 1, 1], [1, 1, 1, 1], 2, False),
        ([1, 1, 1, 1], [1, 1, 1, 1], 1, True),
        ([1, 0, 0, 0], [2, 1, 1, 1], 3, True),
        ([1, 0, 0, 0], [1, 1, 1, 1], 3, False),
    ]
)
def test_rank_gap_certificate(square, ranks_a, ranks_b, dim, holds):
    a = _diag_field(square, [[0.5] * r + [0.0] * (3 - r) for r in ranks_a])
    b = _diag_field(square, [[0.7] * r + [0.0] * (3 - r) for r in ranks_b])
    dims = {p: dim for p in square.point_ids}
    cert = cuntz.rank_gap_certificate(a, b, dims)
    assert cert.holds == holds
    if not holds:
        assert cert.witness == "0,0"


def test_rank_gap_certificate_needs_dims(square):
    a = matfield.zero_field(square, 2)
    with pytest.raises(PreconditionError):
        cuntz.rank_gap_certificate(a, a, {"0,0": 1})


def test_rank_obstruction_bound(square):
    a = _diag_field(square, [[0.9, 0.4]] * 4)
    b = _diag_field(square, [[0.8, 0.0]] * 4)
    assert cuntz.rank_obstruction_bound(a, b) == pytest.approx(0.4)
    assert cuntz.rank_obstruction_bound(b, a) == 0.0


def test_witness_search_finds_exact_witness(square):
    rng = generators.rng_for(1, 4)
    dims = {p: 2 for p in square.point_ids}
    a, b = generators.certified_pair(square, 2, rng, dims)
    result = cuntz.witness_search(a, b, restarts=4, iters=200, seed=3)
    assert result.residual < 0.05
    assert result.obstruction_bound < 1e-9
    assert set(result.restart_per_point) == set(square.point_ids)


def test_witness_search_is_deterministic(square):
    rng = generators.rng_for(5, 4)
    a = generators.random_field(square, 2, rng)
    b = generators.random_field(square, 2, rng)
    first = cuntz.witness_search(a, b, restarts=3, iters=20, seed=9)
    second = cuntz.witness_search(a, b, restarts=3, iters=20, seed=9)
    assert first.residual == second.residual
    assert first.restart_per_point == second.restart_per_point
    assert first.residual >= first.obstruction_bound - 1e-9


def test_witness_search_on_workers_matches_serial(square):
    rng = generators.rng_for(2, 4)
    dims = {p: 1 for p in square.point_ids}
    a, b = generators.certified_pair(square, 2, rng, dims)
    serial = cuntz.witness_search(a, b, restarts=3, iters=30, seed=4)
    workers = cuntz.witness_search(a, b, restarts=3, iters=30, seed=4,
                                   threads=2)
    assert workers.residual == serial.residual
    assert workers.restart_per_point == serial.restart_per_point
    # The manager process is shut down with the search.
    assert multiprocessing.active_children() == []


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_witness_search_on_cut_down(square, seed):
    rng = generators.rng_for(seed, 14)
    b = generators.random_field(square, 3, rng)
    a = matfield.cut_down(b, 0.3)
    result = cuntz.witness_search(a, b, restarts=8, iters=500, seed=seed)
    assert result.residual < 1e-3


def test_witness_search_blocked_by_rank(square):
    a = _diag_field(square, [[0.5, 0.4], [0.5, 0.0], [0.5, 0.0],
                             [0.5, 0.0]])
    b = matfield.constant_field(square, np.diag([1.0, 0.0]))
    result = cuntz.witness_search(a, b, restarts=8, iters=500, seed=1)
    assert result.obstruction_bound == pytest.approx(0.4)
    assert result.residual >= 0.1
    assert result.residual >= result.obstruction_bound - 1e-9


def test_witness_search_rejects_vanishing_b(square):
    a = matfield.identity_field(square, 2)
    with pytest.raises(PreconditionError):
        cuntz.witness_search(a, matfield.zero_field(square, 2))


def test_dim_fn_value(square):
    a = _diag_field(square, [[0.5, 0.0], [0.5, 0.5], [0.0, 0.0], [1, 1]])
    tau = uniform_trace(square, 2)
    assert cuntz.dim_fn_value(a, tau) == Fraction(1, 4) * Fraction(5, 2)
    assert cuntz.dim_fn_value(matfield.block_sum(a, a),
                              uniform_trace(square, 4)) == Fraction(5, 8)


def test_dim_fn_value_rejects_mismatched_size(square):
    a = matfield.zero_field(square, 3)
    with pytest.raises(ComparisonError):
        cuntz.dim_fn_value(a, uniform_trace(square, 2))


def test_classify_field(square):
    traces = all_extreme_traces(square, 2)
    projection = matfield.constant_field(square, np.diag([1.0, 0.0]))
    assert cuntz.classify_field(projection, traces).is_projection

    soft = _diag_field(square, [[0.5, 0.0], [0.5, 0.5], [0.5, 0.0], [0.5, 0]])
    soft_class = cuntz.classify_field(soft, traces, label="soft")
    assert not soft_class.is_projection
    assert soft_class.iota["ev:0,1"] == 1


def test_strict_comparison_gap(square):
    a = _diag_field(square, [[0.5, 0.0]] * 4)
    b = matfield.identity_field(square, 2)
    traces = TraceSet([uniform_trace(square, 2)])
    assert cuntz.strict_comparison_gap(a, b, traces) == Fraction(1, 2)
    with pytest.raises(ComparisonError):
        cuntz.strict_comparison_gap(a, b, TraceSet([]))


def test_ell_invariant(square):
    a = _diag_field(square, [[0.05, 0.55]] * 4)
    invariant = cuntz.ell_invariant(a, [uniform_trace(square, 2)], 10)
    assert invariant.spectrum == (0, 5)
    assert invariant.distributions["uniform"] == {
        0: Fraction(1, 2),
        5: Fraction(1, 2),
    }
    assert invariant.spectrum_edges() == (Fraction(0), Fraction(1, 2))


def test_ell_bins_are_half_open(square):
    a = _diag_field(square, [[0.3, 1.0]] * 4)
    invariant = cuntz.ell_invariant(a, [], 10)
    assert invariant.spectrum == (3, 10)


def test_au_candidates(square):
    rng = generators.rng_for(0, 8)
    a = _diag_field(square, [[0.2, 0.7]] * 4)
    u = generators.random_unitary_field(square, 2, rng)
    moved = matfield.conjugate(a, u)
    mus = [uniform_trace(square, 2)]
    assert cuntz.au_candidates(a, moved, mus, 10)
    assert not cuntz.au_candidates(a, matfield.identity_field(square, 2),
                                   mus, 10)


def test_ell_rejects_zero_bins(square):
    with pytest.raises(PreconditionError):
        cuntz.ell_invariant(matfield.zero_field(square, 1), [], 0)


def _relabeled(ids, diagonals, weights):
    points = SampledSpace("relabel", [(p, ()) for p in ids], [], 0)
    a = MatrixField(points, 2, {p: np.diag(d) for p, d in zip(ids, diagonals)})
    mu = TraceMeasure("mu", points, dict(zip(ids, weights)),
                      {p: 2 for p in ids})
    return a, mu


def test_ell_invariant_ignores_relabeling():
    diagonals = [[0.05, 0.55], [0.3, 0.9], [0.0, 1.0], [0.42, 0.42]]
    weights = [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 8)]
    a, mu = _relabeled(["p0", "p1", "p2", "p3"], diagonals, weights)
    order = [2, 0, 3, 1]
    b, nu = _relabeled(["z", "y", "x", "w"],
                       [diagonals[k] for k in order],
                       [weights[k] for k in order])
    assert cuntz.ell_invariant(a, [mu], 10) == cuntz.ell_invariant(b, [nu],
                                                                   10)

    shuffled, shuffled_mu = _relabeled(["z", "y", "x", "w"],
                                       [diagonals[k] for k in order], weights)
    assert cuntz.ell_invariant(a, [mu], 10) != cuntz.ell_invariant(
        shuffled, [shuffled_mu], 10)
