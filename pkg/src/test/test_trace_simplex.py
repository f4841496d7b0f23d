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
import os
import sys
import pytest

from fractions import Fraction

sys.path.append(os.path.dirname(os.path.realpath(__file__)) + "/../")

from cuntz_lab import generators, trace_simplex  # noqa: E402
from cuntz_lab.datatypes.marginal_measure import (  # noqa: E402
    MarginalMeasure,
    point_marginal,
    total_variation,
)
from cuntz_lab.exceptions import MeasureError, PreconditionError  # noqa: E402


def _distinct_points(dim, denominator=20):
    """Point mass whose coordinate j sits at j/denominator"""
    return MarginalMeasure.product(
        [point_marginal(Fraction(j, denominator)) for j in range(dim)])


@pytest.mark.parametrize(
    ("N1", "M1", "N2", "L", "bound"),
    [
        (2, 5, 20, 8, Fraction(2, 5)),
        (1, 3, 7, 6, Fraction(2, 7)),
        (3, 3, 9, 3, Fraction(0)),
        (2, 3, 4, 1, Fraction(1)),
    ]
)
def test_intertwine_defect(N1, M1, N2, L, bound):
    result = trace_simplex.intertwine_defect(N1, M1, N2)
    assert result["L"] == L
    assert result["bound"] == bound


@pytest.mark.parametrize(("N1", "M1", "N2"), [(0, 1, 2), (3, 2, 5),
                                               (2, 5, 4)])
def test_intertwine_defect_ordering(N1, M1, N2):
    with pytest.raises(PreconditionError):
        trace_simplex.intertwine_defect(N1, M1, N2)


def test_composed_defect_attains_bound():
    result = trace_simplex.composed_defect(_distinct_points(20), 2, 5, 20)
    assert result["defect"] == Fraction(2, 5)
    assert result["within_bound"]


@pytest.mark.parametrize(("N1", "M1", "N2"), [(2, 5, 20), (1, 3, 7),
                                               (3, 3, 9), (2, 3, 6)])
@pytest.mark.parametrize("idx", range(5))
def test_composed_defect_within_bound(N1, M1, N2, idx):
    mu = generators.random_product_measure(generators.rng_for(0, 7, idx), N2)
    assert trace_simplex.composed_defect(mu, N1, M1, N2)["within_bound"]


def test_delta_rotates_to_contained_block():
    mu = _distinct_points(20)
    image = trace_simplex.delta_1(mu, 2, 5, 20)
    assert image.dim == 5
    # B_2 covers coordinates 5..9 (0-based); D_4 starts at 6.
    expected_b2 = tuple(Fraction(j, 20) for j in (6, 7, 8, 9, 5))
    assert expected_b2 in image.joint()
    assert image.joint()[expected_b2] == Fraction(1, 4)


def test_gamma_averages_blocks():
    image = trace_simplex.gamma_1(_distinct_points(5), 2, 5)
    assert image.joint() == {
        (Fraction(0), Fraction(1, 20)): Fraction(1, 2),
        (Fraction(2, 20), Fraction(3, 20)): Fraction(1, 2),
    }


def test_intertwine_apply():
    mu = _distinct_points(20)
    assert trace_simplex.intertwine_apply(mu, trace_simplex.DELTA, 2, 5,
                                          20).dim == 5
    assert trace_simplex.intertwine_apply(_distinct_points(5),
                                          trace_simplex.GAMMA, 2, 5,
                                          20).dim == 2
    with pytest.raises(PreconditionError):
        trace_simplex.intertwine_apply(mu, "sideways", 2, 5, 20)
    with pytest.raises(MeasureError):
        trace_simplex.gamma_1(mu, 2, 5)


def test_phi_sharp():
    image = trace_simplex.phi_sharp(_distinct_points(4), 2, 4)
    assert image.joint() == {
        (Fraction(0), Fraction(1, 20)): Fraction(1, 2),
        (Fraction(2, 20), Fraction(3, 20)): Fraction(1, 2),
    }
    with pytest.raises(PreconditionError):
        trace_simplex.phi_sharp(_distinct_points(4), 3, 4)


def test_pushforward_exact_and_simplified():
    mu = MarginalMeasure.product([
        point_marginal("1/2"),
        point_marginal("1/2"),
        point_marginal(1),
        point_marginal(1),
    ])
    exact = trace_simplex.pushforward(mu, 2, 1, [(0, 0)])
    simplified = trace_simplex.pushforward(mu, 2, 1, [(0, 0)], exact=False)
    half = (Fraction(1, 2), Fraction(1, 2))
    one = (Fraction(1), Fraction(1))
    origin = (Fraction(0), Fraction(0))
    assert exact.joint() == {
        origin: Fraction(1, 3),
        half: Fraction(1, 3),
        one: Fraction(1, 3),
    }
    assert simplified.joint() == {half: Fraction(1, 2), one: Fraction(1, 2)}
    assert trace_simplex.pushforward_gap(mu, 2, 1, [(0, 0)]) == Fraction(2, 3)


def test_pushforward_without_atoms_part():
    mu = _distinct_points(4)
    assert trace_simplex.pushforward(mu, 2, 0) == trace_simplex.pushforward(
        mu, 2, 0, exact=False)
    assert trace_simplex.pushforward_gap(mu, 2, 0, []) == 0


def _random_measure(rng, dim):
    first = generators.random_product_measure(rng, dim)
    second = generators.random_product_measure(rng, dim)
    return MarginalMeasure.mixture([(Fraction(1, 3), first),
                                    (Fraction(2, 3), second)])


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize(("n", "d"), [(1, 2), (2, 1), (2, 2), (3, 1)])
def test_pushforward_contracts_without_atoms(seed, n, d):
    rng = generators.rng_for(seed, 15)
    mu = _random_measure(rng, n * d)
    nu = _random_measure(rng, n * d)
    pushed_mu = trace_simplex.pushforward(mu, n, 0)
    pushed_nu = trace_simplex.pushforward(nu, n, 0)
    assert pushed_mu.total_mass == mu.total_mass == 1
    assert (total_variation(pushed_mu, pushed_nu) <=
            total_variation(mu, nu))


@pytest.mark.parametrize("l", [1, 2, 5])
def test_pushforward_preserves_mass(l):
    rng = generators.rng_for(l, 16)
    mu = _random_measure(rng, 4)
    atoms = [(Fraction(k, 7), Fraction(1, 2)) for k in range(l)]
    assert trace_simplex.pushforward(mu, 2, l, atoms).total_mass == 1


def test_pushforward_rejects():
    mu = _distinct_points(4)
    with pytest.raises(PreconditionError):
        trace_simplex.pushforward(mu, 2, 1)
    with pytest.raises(MeasureError):
        trace_simplex.pushforward(mu, 3, 0)
    with pytest.raises(MeasureError):
        trace_simplex.pushforward(mu, 2, 1, [(0, 0, 0)])
    with pytest.raises(PreconditionError):
        trace_simplex.pushforward(mu, 0, 1)
