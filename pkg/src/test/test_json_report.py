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

from fractions import Fraction

sys.path.append(os.path.dirname(os.path.realpath(__file__)) + "/../")

from cuntz_lab import json_report  # noqa: E402


def test_write_analysis_report(tmpdir):
    report_file = os.path.join(tmpdir, "report.json")
    json_report.write_analysis_report(report_file, "rc-bound",
                                      {"rc_upper_bound": Fraction(1, 4)})
    json_report.write_analysis_report(report_file,
                                      "villadsen", {"verdict": "failed"},
                                      append=True)
    assert json_report.read_analysis_report(report_file, "rc-bound") == {
        "rc_upper_bound": "1/4"
    }
    assert json_report.read_analysis_report(report_file,
                                            "villadsen")["verdict"] == "failed"


def test_write_without_append_replaces(tmpdir):
    report_file = os.path.join(tmpdir, "report.json")
    json_report.write_analysis_report(report_file, "a", {"x": 1})
    json_report.write_analysis_report(report_file, "b", {"y": 2})
    assert json_report.read_analysis_report(report_file, "a") == {}


def test_read_missing_report(tmpdir):
    assert json_report.read_analysis_report(
        os.path.join(tmpdir, "absent.json"), "a") == {}


def test_dumps_is_sorted():
    text = json_report.dumps({"b": 0.1, "a": [Fraction(2, 4)]})
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": ["1/2"], "b": 0.1}


def test_flatten():
    rows = json_report.flatten({"b": {"y": 1, "x": "1/2"}, "a": True})
    assert rows == [["a", "true"], ["b.x", '"1/2"'], ["b.y", "1"]]


def test_write_csv(tmpdir):
    csv_file = os.path.join(tmpdir, "table.csv")
    json_report.write_csv(csv_file, ["i", "rc_i"], [["0", "3/4"],
                                                     ["1", "11/16"]])
    with open(csv_file) as f:
        assert f.read() == "i,rc_i\n0,3/4\n1,11/16\n"
