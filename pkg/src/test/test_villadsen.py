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

from cuntz_lab import villadsen  # noqa: E402
from cuntz_lab.datatypes.villadsen_params import VilladsenParams  # noqa: E402
from cuntz_lab.exceptions import ParamsError, PreconditionError  # noqa: E402


def _half_family(stages):
    """n_j = j(2^j + 1), l_j = j: ratio_i = (1 + 2^-i)/2."""
    return VilladsenParams(2, 4, tuple(j * (2**j + 1)
                                       for j in range(1, stages + 1)),
                           tuple(range(1, stages + 1)), Fraction(1, 2))


def _one_family(stages):
    """n_j = j(j + 2), l_j = 1: ratio_i = (i + 2)/(i + 1)."""
    return VilladsenParams(1, 4, tuple(j * (j + 2)
                                       for j in range(1, stages + 1)),
                           (1, ) * stages, Fraction(1))


@pytest.fixture
def half():
    return _half_family(40)


def test_stage_sequences(half):
    assert [half.m(i) for i in range(3)] == [2, 8, 96]
    assert [half.N(i) for i in range(3)] == [4, 12, 120]


def test_ratio_closed_form(half):
    for i in range(41):
        row = villadsen.stage_invariants(half, i)
        assert row.ratio_i == Fraction(1, 2) * (1 + Fraction(1, 2**i))
        assert row.rc_i == Fraction(row.N_i - 1, 2 * row.m_i)


def test_half_family_converges(half):
    row = villadsen.stage_invariants(half, 20)
    assert abs(row.rc_i - Fraction(1, 2)) < Fraction(1, 10**6)


def test_one_family_ratio():
    p = _one_family(30)
    for i in range(31):
        assert villadsen.stage_invariants(p, i).ratio_i == Fraction(
            i + 2, i + 1)


def test_trivial_l_keeps_ratio():
    p = VilladsenParams(1, 3, (2, 3, 4), (0, 0, 0), Fraction(3, 2))
    for row in villadsen.stage_table(p, 3):
        assert row.ratio_i == Fraction(3, 2)
        assert row.rc_i == Fraction(row.N_i - 1, 2 * row.m_i)


def test_stage_table_rows(half):
    table = villadsen.stage_table(half, 2)
    assert [row.i for row in table] == [0, 1, 2]
    assert table[1].csv_row() == ["1", "8", "12", "11/16", "3/4"]


def test_stage_outside_prefix(half):
    with pytest.raises(ParamsError):
        villadsen.stage_table(half, 41)


def test_validate_half_family(half):
    result = villadsen.validate_params(half, 20)
    assert result["verdict"] == villadsen.PREFIX_VERIFIED
    assert result["failures"] == []
    assert result["checks"]["convergence"]["distance_nonincreasing"]


def test_validate_reports_failures():
    p = VilladsenParams(1, 3, (2, 3, 4), (0, 0, 0), Fraction(1, 2))
    result = villadsen.validate_params(p, 3, q_max=5)
    assert result["verdict"] == villadsen.PREFIX_FAILED
    assert set(result["failures"]) == {"convergence", "nonzero_l",
                                       "divisibility"}


def test_growth_needs_two_stages():
    p = VilladsenParams(1, 1, (2, ), (1, ), Fraction(1))
    result = villadsen.validate_params(p, 1, q_max=1)
    assert "growth" in result["failures"]


@pytest.mark.parametrize(
    ("q_max", "witnesses"),
    [
        (1, {1: 0}),
        (3, {1: 0, 2: 0, 3: 2}),
    ]
)
def test_k0_divisibility(half, q_max, witnesses):
    result = villadsen.k0_divisibility(half, q_max)
    assert result["holds"]
    assert result["witnesses"] == witnesses


def test_k0_divisibility_missing():
    p = VilladsenParams(1, 1, (2, 2), (1, 1), Fraction(1))
    result = villadsen.k0_divisibility(p, 3)
    assert not result["holds"]
    assert result["missing"] == [2]


def test_connecting_multiplicities(half):
    assert villadsen.connecting_multiplicities(half, 0, 1) == (3, 1)
    assert villadsen.connecting_multiplicities(half, 0, 2) == (30, 18)
    with pytest.raises(PreconditionError):
        villadsen.connecting_multiplicities(half, 2, 1)


def test_chern_obstruction(half):
    result = villadsen.chern_obstruction_holds(half, 0, 1, 1,
                                               Fraction(1, 2))
    assert result["lhs"] == 12
    assert result["rhs"] == 12
    assert not result["holds"]
    assert result["refined"] == Fraction(7, 6)
    assert result["refined_applicable"]
    assert result["violations"] == []
    assert villadsen.chern_obstruction_holds(half, 0, 1, 2,
                                             Fraction(1, 2))["holds"]


def test_chern_obstruction_reports_violations(half):
    result = villadsen.chern_obstruction_holds(half, 0, 1, 5, Fraction(3, 2))
    assert len(result["violations"]) == 2
    with pytest.raises(PreconditionError):
        villadsen.chern_obstruction_holds(half, 1, 1, 1, Fraction(1, 2))


@pytest.mark.parametrize("family", [_half_family, _one_family])
@pytest.mark.parametrize("i,j", [(0, 1), (0, 3), (1, 2), (2, 5)])
def test_chern_obstruction_monotone_in_rank(family, i, j):
    p = family(8)
    eta = Fraction(1, 2)
    seen_true = False
    for rank_a in range(1, min(p.N(i), 200) + 1):
        holds = villadsen.chern_obstruction_holds(p, i, j, rank_a,
                                                  eta)["holds"]
        assert holds or not seen_true
        seen_true = seen_true or holds


def test_rank_bound_and_obstruction_stage(half):
    assert villadsen.rank_bound_check(half, 0, 1, Fraction(1, 2))
    assert not villadsen.rank_bound_check(half, 1, 1, Fraction(1, 2))
    assert villadsen.obstruction_stage(half, Fraction(1, 2)) == 0


def test_obstruction_stage_absent():
    p = VilladsenParams(4, 1, (1, 1), (0, 0), Fraction(1))
    assert villadsen.obstruction_stage(p, Fraction(1, 2)) is None


@pytest.mark.parametrize(
    ("r", "s", "witness"),
    [
        (Fraction(1, 2), Fraction(3, 4), (2, 3)),
        (Fraction(1), Fraction(1), (1, 1)),
        (Fraction(2, 3), Fraction(1, 6), (4, 1)),
    ]
)
def test_morita_rationality(r, s, witness):
    result = villadsen.morita_rationality_check(r, s)
    assert result["compatible"]
    assert result["witness"] == witness
    n, m = witness
    assert r / n == s / m


def test_morita_bound():
    result = villadsen.morita_rationality_check(Fraction(1, 2),
                                                Fraction(3, 4), bound=2)
    assert not result["compatible"]
    with pytest.raises(ParamsError):
        villadsen.morita_rationality_check(Fraction(0), Fraction(1))


@pytest.mark.parametrize(
    ("m0", "n0", "n_seq", "l_seq", "target"),
    [
        (0, 1, (), (), 1),
        (1, 1, (2, ), (), 1),
        (1, 1, (0, ), (0, ), 1),
        (1, 1, (1, ), (-1, ), 1),
        (1, 1, (), (), 0),
    ]
)
def test_params_reject(m0, n0, n_seq, l_seq, target):
    with pytest.raises(ParamsError):
        VilladsenParams(m0, n0, n_seq, l_seq, Fraction(target))
