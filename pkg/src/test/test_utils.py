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

from decimal import Decimal
from fractions import Fraction

import numpy as np

sys.path.append(os.path.dirname(os.path.realpath(__file__)) + "/../")

from cuntz_lab import constants, utils  # noqa: E402
from cuntz_lab.exceptions import DataLoaderError  # noqa: E402


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (3, Fraction(3)),
        ("3/4", Fraction(3, 4)),
        (" -1/2 ", Fraction(-1, 2)),
        (0.1, Fraction(1, 10)),
        (Fraction(5, 7), Fraction(5, 7)),
    ]
)
def test_parse_rational(value, expected):
    assert utils.parse_rational(value) == expected


@pytest.mark.parametrize("value", [True, "1/0", "half", float("nan"), None])
def test_parse_rational_rejects(value):
    with pytest.raises(DataLoaderError):
        utils.parse_rational(value, "input.yaml")


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (Fraction(3, 1), "3"),
        (Fraction(-6, 8), "-3/4"),
        (0, "0"),
    ]
)
def test_format_rational(value, expected):
    assert utils.format_rational(value) == expected


def test_to_jsonable():
    converted = utils.to_jsonable({
        "r": Fraction(1, 3),
        "d": Decimal("1E-12"),
        "i": np.int64(4),
        "f": np.float64(0.1),
        "c": 1 + 2j,
        "a": np.eye(2),
        "s": {"y", "x"},
        1: None,
        "b": True,
    })
    assert converted == {
        "r": "1/3",
        "d": "1E-12",
        "i": 4,
        "f": 0.1,
        "c": [1.0, 2.0],
        "a": [[1.0, 0.0], [0.0, 1.0]],
        "s": ["x", "y"],
        "1": None,
        "b": True,
    }


def test_float_17_is_stable():
    value = 1 / 3
    assert utils.float_17(utils.float_17(value)) == utils.float_17(value)


def test_read_yaml_reports_line(tmpdir):
    broken = os.path.join(tmpdir, "broken.yaml")
    with open(broken, "w") as f:
        f.write("n: 1\nvalues: [1, 2\n")
    with pytest.raises(DataLoaderError) as e:
        utils.data_file_read_yaml(broken)
    assert e.value.location.startswith(f"{broken}:line ")


def test_read_yaml_missing_file(tmpdir):
    with pytest.raises(DataLoaderError):
        utils.data_file_read_yaml(os.path.join(tmpdir, "absent.yaml"))


def test_config_overrides(tmpdir, monkeypatch):
    config_file = os.path.join(tmpdir, "config.yaml")
    with open(config_file, "w") as f:
        f.write("rank_tol: 1.0e-6\nq_max: 4\nunknown_key: 3\n")
    monkeypatch.setenv(constants.ENV_CONFIG, config_file)
    assert utils.load_config_overrides() == {"rank_tol": 1e-6, "q_max": 4}


def test_config_overrides_absent(monkeypatch):
    monkeypatch.delenv(constants.ENV_CONFIG, raising=False)
    assert utils.load_config_overrides() == {}


def test_config_must_be_mapping(tmpdir, monkeypatch):
    config_file = os.path.join(tmpdir, "config.yaml")
    with open(config_file, "w") as f:
        f.write("- rank_tol\n")
    monkeypatch.setenv(constants.ENV_CONFIG, config_file)
    with pytest.raises(DataLoaderError):
        utils.load_config_overrides()


@pytest.mark.parametrize(
    ("raw", "expected"),
    [
        (None, constants.DEFAULT_THREADS),
        ("4", 4),
        ("0", 1),
        ("many", constants.DEFAULT_THREADS),
    ]
)
def test_thread_count(monkeypatch, raw, expected):
    if raw is None:
        monkeypatch.delenv(constants.ENV_THREADS, raising=False)
    else:
        monkeypatch.setenv(constants.ENV_THREADS, raw)
    assert utils.get_thread_count() == expected
