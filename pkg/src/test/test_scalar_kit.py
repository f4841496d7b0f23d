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

import numpy as np
from hypothesis import given, strategies as st

sys.path.append(os.path.dirname(os.path.realpath(__file__)) + "/../")

from cuntz_lab import scalar_kit  # noqa: E402
from cuntz_lab.exceptions import PreconditionError  # noqa: E402
from cuntz_lab.scalar_kit import ScalarKit  # noqa: E402

unit = st.floats(min_value=0.0, max_value=1.0)
deltas = st.floats(min_value=0.01, max_value=1.0)


def test_identities_on_grid():
    ts = np.linspace(0.0, 1.0, 1000)
    worst = scalar_kit.identity_residuals(np.linspace(0.05, 1.0, 20),
                                          np.linspace(0.0, 1.0, 20), ts)
    for key, value in worst.items():
        assert value <= 1e-12, key


@pytest.mark.parametrize(
    ("t", "expected"),
    [
        (0.0, 0.0),
        (0.25, 0.0),
        (0.375, 0.5),
        (0.5, 1.0),
        (0.9, 1.0),
    ]
)
def test_f_profile(t, expected):
    assert ScalarKit(0.5).f(t) == pytest.approx(expected)


def test_array_in_array_out():
    kit = ScalarKit(0.5, 0.5)
    ts = np.array([0.0, 0.3, 1.0])
    for which in scalar_kit.KIT_FUNCTIONS:
        assert np.asarray(kit.function(which)(ts)).shape == (3, )
    assert isinstance(kit.f(0.3), float)


@given(delta=deltas, s=unit, t=unit)
def test_range_bounds(delta, s, t):
    kit = ScalarKit(delta, s)
    for which in scalar_kit.KIT_FUNCTIONS:
        low, high = kit.range_bound(which)
        value = scalar_kit.scalar_kit_eval(kit, which, t)
        assert low - 1e-12 <= value <= high + 1e-9


@given(delta=deltas, s=unit, t=unit)
def test_homotopy_factorisation(delta, s, t):
    kit = ScalarKit(delta, s)
    assert kit.h(t) * kit.g_s(t) == pytest.approx(kit.f(t), abs=1e-12)
    assert kit.f(t) <= kit.r(t) * kit.w(t) + 1e-12


def test_homotopy_endpoints():
    ts = np.linspace(0.0, 1.0, 50)
    assert np.allclose(ScalarKit(0.4, 0.0).h(ts), ts)
    assert np.allclose(ScalarKit(0.4, 1.0).h(ts), ScalarKit(0.4).h1(ts))


@pytest.mark.parametrize(
    ("delta", "s"),
    [
        (0.0, 0.0),
        (1.5, 0.0),
        (0.5, -0.1),
        (0.5, 1.1),
    ]
)
def test_kit_rejects_parameters(delta, s):
    with pytest.raises(PreconditionError):
        ScalarKit(delta, s)


def test_eval_rejects_outside_unit_interval():
    with pytest.raises(PreconditionError):
        scalar_kit.scalar_kit_eval(ScalarKit(0.5), "f", 1.5)
    with pytest.raises(PreconditionError):
        ScalarKit(0.5).function("nope")
