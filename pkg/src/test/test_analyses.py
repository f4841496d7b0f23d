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
import json
import pytest

from decimal import Decimal
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.realpath(__file__)) + "/../")

from cuntz_lab import analysis, sweeps  # noqa: E402
from cuntz_lab.exceptions import DataLoaderError, ParamsError  # noqa: E402


def _write(tmpdir, name, content):
    path = os.path.join(tmpdir, name)
    with open(path, "w") as f:
        json.dump(content, f)
    return path


def _run(name, inputs=None, **options):
    config = analysis.RunConfig(command=name,
                                inputs=inputs or {},
                                options=options)
    lab_analysis = analysis.get_analysis(name)
    lab_analysis.load_inputs(config)
    return lab_analysis.analysis_func(config)


def test_every_command_has_an_analysis():
    names = [a.get_name() for a in analysis.get_all_analyses()]
    assert names == [
        "compare", "rc-bound", "sdg-check", "villadsen", "intertwine",
        "semigroup", "ell", "kit-test", "grid"
    ]
    with pytest.raises(DataLoaderError):
        analysis.get_analysis("no-such-command")


@pytest.fixture
def ell_inputs(tmpdir):
    space = {"label": "pair", "covering_dim": 0,
             "points": [{"id": "x"}, {"id": "y"}]}
    field = {"space_label": "pair", "n": 2,
             "values": {"x": [[0.5, 0], [0, 0]], "y": [[1, 0], [0, 0.25]]}}
    return {
        "space": _write(tmpdir, "space.json", space),
        "field": _write(tmpdir, "field.json", field),
        "other": _write(tmpdir, "other.json", field),
    }


def test_ell_against_itself(ell_inputs):
    result = _run("ell", ell_inputs, bins=4)
    assert result.holds is True
    assert result.report["au_candidates"] is True
    assert result.table_header == ["trace", "bin", "mass"]
    assert all(row[0] == "uniform" for row in result.table_rows)


def test_ell_without_other(ell_inputs):
    inputs = dict(ell_inputs)
    del inputs["other"]
    result = _run("ell", inputs)
    assert result.holds is None
    assert "au_candidates" not in result.report


def test_sdg_check(tmpdir):
    def term(size):
        return {"stages": [{
            "space": {"label": "pt", "covering_dim": 1,
                      "points": [{"id": "x"}]},
            "matrix_size": size,
        }]}

    sequence = _write(tmpdir, "seq.json", {
        "label": "seq",
        "terms": [term(100), term(1000)],
        "maps": [[{"target_stage": 0, "sources": [[0, 10]]}]],
    })
    result = _run("sdg-check", {"sequence": sequence})
    assert result.holds
    assert result.summary == "1"
    assert result.report["rc_sequence"] == [0, 0]


@pytest.fixture
def params_file(tmpdir):
    return _write(tmpdir, "params.json", {
        "m0": 2, "n0": 4, "n_seq": [3, 10], "l_seq": [1, 2],
        "target_r": "1/2"
    })


def test_villadsen_obstruction_and_morita(params_file):
    result = _run("villadsen", {"params": params_file}, eta="1/2", j=1,
                  morita="3/4")
    obstruction = result.report["obstruction"]
    assert obstruction["obstruction_stage"] == 0
    assert obstruction["rank_bound"]
    assert obstruction["chern"]["lhs"] == 12
    assert obstruction["connecting_multiplicities"] == (3, 1)
    assert result.report["morita"]["witness"] == (2, 3)
    assert result.table_rows[-1] == ["2", "96", "120", "119/192", "5/8"]


def test_villadsen_stage_out_of_range(params_file):
    with pytest.raises(ParamsError):
        _run("villadsen", {"params": params_file}, stages=3)


def test_rc_bound_required_delta0(tmpdir):
    decomp = _write(tmpdir, "decomp.json", {"stages": [{
        "space": {"label": "pt", "covering_dim": 3, "points": [{"id": "x"}]},
        "matrix_size": 1,
    }]})
    result = _run("rc-bound", {"decomp": decomp}, eps=0.01)
    assert result.report["rc_upper_bound"] == Fraction(1)
    assert result.report["required_delta0"] < Decimal("0.01")
    assert result.table_rows == [["0", "3", "1"]]


def test_kit_test_schedule_only():
    result = _run("kit-test", sweeps=[sweeps.SWEEP_SCHEDULE])
    assert result.holds
    assert result.summary.startswith("delta-schedule: pass")
    assert "elapsed" not in json.dumps(
        [r.to_dict() for r in result.report["sweeps"]])


def test_grid_requires_resolution():
    with pytest.raises(DataLoaderError):
        _run("grid", cube_dims=[1])
