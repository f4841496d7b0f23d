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
"""Module for creating JSON and CSV reports"""
import csv
import json
import logging
import os

from typing import (
    Any,
    Dict,
    List,
    Sequence,
)

from cuntz_lab import utils

logger = logging.getLogger(name=__name__)


def dumps(content: Any) -> str:
    """Deterministic JSON text: sorted keys, exact rationals as "p/q"."""
    return json.dumps(utils.to_jsonable(content), sort_keys=True,
                      indent=2) + "\n"


def write_json(report_file: str, content: Any) -> None:
    with open(report_file, "w") as report_fd:
        report_fd.write(dumps(content))


def _get_summary_dict(report_file: str) -> Dict[str, Any]:
    """Returns the report on disk as a dictionary."""
    if not os.path.isfile(report_file):
        return dict()
    with open(report_file, "r") as report_fd:
        return json.load(report_fd)


def _overwrite_report_with_dict(report_file: str,
                                new_dict: Dict[str, Any]) -> None:
    """Writes `new_dict` as contents to the report on disk. Will overwrite any
    contents of the existing report.
    """
    write_json(report_file, new_dict)


def write_analysis_report(report_file: str,
                          analysis_name: str,
                          dict_to_add: Dict[str, Any],
                          append: bool = False) -> None:
    """Stores the result of one analysis under report["analyses"][name].

    With `append` the other analyses already in the file are kept.
    """
    contents = _get_summary_dict(report_file) if append else dict()
    if "analyses" not in contents:
        contents["analyses"] = dict()
    contents["analyses"][analysis_name] = utils.to_jsonable(dict_to_add)
    _overwrite_report_with_dict(report_file, contents)
    logger.info(f"Wrote {analysis_name} report to {report_file}")


def read_analysis_report(report_file: str,
                         analysis_name: str) -> Dict[str, Any]:
    return _get_summary_dict(report_file).get("analyses",
                                              {}).get(analysis_name, {})


def write_csv(report_file: str, header: Sequence[str],
              rows: Sequence[Sequence[Any]]) -> None:
    with open(report_file, "w", newline="") as report_fd:
        writer = csv.writer(report_fd, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    logger.info(f"Wrote {len(rows)} rows to {report_file}")


def flatten(content: Dict[str, Any],
            prefix: str = "") -> List[List[str]]:
    """key/value rows of a nested report, keys joined with '.'."""
    rows = []
    for key in sorted(content):
        value = content[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(flatten(value, name + "."))
        else:
            rows.append([name, json.dumps(utils.to_jsonable(value))])
    return rows
