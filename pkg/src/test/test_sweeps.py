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

sys.path.append(os.path.dirname(os.path.realpath(__file__)) + "/../")

from cuntz_lab import sweeps  # noqa: E402
from cuntz_lab.exceptions import CuntzLabError  # noqa: E402


def test_scalar_kit_sweep():
    result = sweeps.scalar_kit_sweep(nt=200, nd=5, ns=5)
    assert result.passed
    assert result.instances == 200 * 5 * 5


def test_schedule_sweep():
    result = sweeps.schedule_sweep(l_max=4)
    assert result.passed
    assert result.instances == 5 * 4
    assert result.detail["worst_relative_gap"] < 1e-9


@pytest.mark.parametrize("name", [
    sweeps.SWEEP_DINI,
    sweeps.SWEEP_APPROXIMANT,
    sweeps.SWEEP_DIMENSION,
])
def test_randomised_sweeps(name):
    result, = sweeps.run_sweeps([name], instances=10, seed=3)
    assert result.name == name
    assert result.passed
    assert result.instances + result.skipped == 10


def test_witness_sweep_small():
    result = sweeps.witness_sweep(instances=5, restarts=4, iters=300)
    assert result.detail["obstructed"] == 0
    assert result.instances + result.skipped == 5


def test_sweeps_are_seeded():
    first, = sweeps.run_sweeps([sweeps.SWEEP_DINI], instances=5, seed=1)
    second, = sweeps.run_sweeps([sweeps.SWEEP_DINI], instances=5, seed=1)
    assert first.to_dict() == second.to_dict()


def test_unknown_sweep():
    with pytest.raises(CuntzLabError):
        sweeps.run_sweeps(["no-such-sweep"])
