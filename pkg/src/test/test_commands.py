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

import numpy as np

sys.path.append(os.path.dirname(os.path.realpath(__file__)) + "/../")

import main  # noqa: E402
from cuntz_lab import commands, constants, cuntz  # noqa: E402

A_FIELD = {"n": 1, "values": {"x": [[0]], "y": [[0.5]]}}
B_FIELD = {"n": 1, "values": {"x": [[1]], "y": [[1]]}}
DECOMP = {
    "label": "cube5",
    "stages": [{
        "space": {"label": "pt", "covering_dim": 5,
                  "points": [{"id": "x"}]},
        "matrix_size": 2,
    }],
}
PARAMS = {"m0": 2, "n0": 4, "n_seq": [3, 10], "l_seq": [1, 2],
          "target_r": "1/2"}


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(constants.ENV_CONFIG, raising=False)
    monkeypatch.delenv(constants.ENV_THREADS, raising=False)


@pytest.fixture
def inputs(tmpdir):
    paths = dict()
    for name, content in (("a", A_FIELD), ("b", B_FIELD),
                          ("dims", 1), ("decomp", DECOMP),
                          ("params", PARAMS)):
        paths[name] = os.path.join(tmpdir, f"{name}.json")
        with open(paths[name], "w") as f:
            json.dump(content, f)
    return paths


def _run(argv):
    args = main.get_cmdline_parser().parse_args(argv)
    return commands.run(commands.config_from_args(args))


def _read_json(path):
    with open(path) as f:
        return json.load(f)


def test_compare_holds(inputs, tmpdir):
    out = os.path.join(tmpdir, "report.json")
    code = _run(["compare", "--a", inputs["a"], "--b", inputs["b"],
                 "--dims", inputs["dims"], "--out", out])
    assert code == constants.APP_EXIT_SUCCESS
    report = _read_json(out)["analyses"]["compare"]
    assert report["holds"] is True
    assert report["config"]["rank_tol"] == constants.RANK_TOL
    assert report["result"]["certificate"]["holds"] is True


def test_compare_false_certificate(inputs, tmpdir):
    out = os.path.join(tmpdir, "report.json")
    code = _run(["compare", "--a", inputs["b"], "--b", inputs["a"],
                 "--dims", inputs["dims"], "--out", out])
    assert code == constants.APP_EXIT_CERTIFICATE_FALSE
    assert _read_json(out)["analyses"]["compare"]["holds"] is False


def test_malformed_input(inputs, tmpdir):
    bad = os.path.join(tmpdir, "bad.json")
    with open(bad, "w") as f:
        json.dump({"n": 0, "values": {"x": [[1]]}}, f)
    out = os.path.join(tmpdir, "report.json")
    code = _run(["compare", "--a", bad, "--b", inputs["b"],
                 "--dims", inputs["dims"], "--out", out])
    assert code == constants.APP_EXIT_ERROR
    assert not os.path.isfile(out)


def test_missing_input_flag(inputs, tmpdir):
    code = _run(["compare", "--a", inputs["a"],
                 "--out", os.path.join(tmpdir, "report.json")])
    assert code == constants.APP_EXIT_ERROR


@pytest.mark.parametrize("error", [
    np.linalg.LinAlgError("SVD did not converge"),
    RuntimeError("boom"),
])
def test_unexpected_errors_exit_with_error(inputs, tmpdir, monkeypatch,
                                           caplog, error):
    def failing(*args, **kwargs):
        raise error

    monkeypatch.setattr(cuntz, "rank_gap_certificate", failing)
    out = os.path.join(tmpdir, "report.json")
    code = _run(["compare", "--a", inputs["a"], "--b", inputs["b"],
                 "--dims", inputs["dims"], "--out", out])
    assert code == constants.APP_EXIT_ERROR
    assert not os.path.isfile(out)
    assert str(error) in caplog.text


def test_malformed_json_exits_with_error(inputs, tmpdir):
    bad = os.path.join(tmpdir, "bad.json")
    with open(bad, "w") as f:
        f.write('{"n": 1, "values": ')
    code = _run(["compare", "--a", bad, "--b", inputs["b"],
                 "--dims", inputs["dims"],
                 "--out", os.path.join(tmpdir, "report.json")])
    assert code == constants.APP_EXIT_ERROR


def test_dry_run_writes_nothing(inputs, tmpdir):
    out = os.path.join(tmpdir, "report.json")
    code = _run(["compare", "--a", inputs["a"], "--b", inputs["b"],
                 "--dims", inputs["dims"], "--out", out, "--dry-run"])
    assert code == constants.APP_EXIT_SUCCESS
    assert not os.path.isfile(out)


def test_rc_bound_prints_value(inputs, tmpdir, capsys):
    code = _run(["rc-bound", "--decomp", inputs["decomp"],
                 "--out", os.path.join(tmpdir, "rc.json")])
    assert code == constants.APP_EXIT_SUCCESS
    assert capsys.readouterr().out.strip() == "1"


def test_rc_bound_amplified(inputs, tmpdir):
    out = os.path.join(tmpdir, "rc.json")
    _run(["rc-bound", "--decomp", inputs["decomp"], "--amplify", "4",
          "--out", out])
    result = _read_json(out)["analyses"]["rc-bound"]["result"]
    assert result["rc_upper_bound"] == "1/4"


def test_reports_are_reproducible(inputs, tmpdir):
    paths = [os.path.join(tmpdir, f"run{k}.json") for k in range(2)]
    for path in paths:
        _run(["compare", "--a", inputs["a"], "--b", inputs["b"],
              "--dims", inputs["dims"], "--out", path, "--witness"])
    with open(paths[0], "rb") as first, open(paths[1], "rb") as second:
        assert first.read() == second.read()


def test_villadsen_csv(inputs, tmpdir):
    out = os.path.join(tmpdir, "stages.csv")
    code = _run(["villadsen", "--params", inputs["params"], "--stages", "2",
                 "--tol", "1", "--q-max", "4", "--format", "csv",
                 "--out", out])
    assert code == constants.APP_EXIT_SUCCESS
    with open(out) as f:
        lines = f.read().splitlines()
    assert lines == [
        "i,m_i,N_i,rc_i,ratio_i",
        "0,2,4,3/4,1",
        "1,8,12,11/16,3/4",
        "2,96,120,119/192,5/8",
    ]


def test_villadsen_prefix_failure(inputs, tmpdir):
    code = _run(["villadsen", "--params", inputs["params"],
                 "--out", os.path.join(tmpdir, "v.json")])
    assert code == constants.APP_EXIT_CERTIFICATE_FALSE


def test_config_file_overrides(inputs, tmpdir, monkeypatch):
    config_file = os.path.join(tmpdir, "config.yaml")
    with open(config_file, "w") as f:
        f.write("q_max: 4\nrank_tol: 1.0e-6\n")
    monkeypatch.setenv(constants.ENV_CONFIG, config_file)
    args = main.get_cmdline_parser().parse_args(
        ["villadsen", "--params", inputs["params"], "--q-max", "3"])
    config = commands.config_from_args(args)
    assert config.q_max == 3
    assert config.rank_tol == 1e-6
    assert config.inputs == {"params": inputs["params"]}


def test_grid_is_standalone(tmpdir, capsys):
    out = os.path.join(tmpdir, "grid.json")
    code = _run(["grid", "--dims", "1", "--resolution", "2", "--out", out])
    assert code == constants.APP_EXIT_SUCCESS
    grid = _read_json(out)
    assert "analyses" not in grid
    assert grid["covering_dim"] == 1
    assert [p["id"] for p in grid["points"]] == ["0", "1", "2"]
    assert capsys.readouterr().out.strip() == grid["label"]


def test_intertwine_bound_only(tmpdir, capsys):
    out = os.path.join(tmpdir, "i.json")
    code = _run(["intertwine", "--N1", "3", "--M1", "4", "--N2", "10",
                 "--out", out])
    assert code == constants.APP_EXIT_SUCCESS
    result = _read_json(out)["analyses"]["intertwine"]["result"]
    assert "defects" not in result
    assert result["defect_bound"]["L"] == 1


def test_intertwine_samples(tmpdir):
    out = os.path.join(tmpdir, "i.json")
    code = _run(["intertwine", "--N1", "2", "--M1", "5", "--N2", "20",
                 "--samples", "4", "--out", out])
    assert code == constants.APP_EXIT_SUCCESS
    result = _read_json(out)["analyses"]["intertwine"]["result"]
    assert result["measures"] == 4
    assert result["violations"] == []


def test_no_command_exits_with_error(monkeypatch):
    monkeypatch.setattr(sys, "argv", ["main.py"])
    with pytest.raises(SystemExit) as e:
        main.main()
    assert e.value.code == constants.APP_EXIT_ERROR
