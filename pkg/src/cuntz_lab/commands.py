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
"""High-level routines and CLI entrypoints"""

import argparse
import logging

from typing import (
    Any,
    Dict,
)

import numpy as np

from cuntz_lab import analysis, constants, json_report, utils
from cuntz_lab.analysis import RunConfig
from cuntz_lab.exceptions import CuntzLabError

logger = logging.getLogger(name=__name__)

__all__ = ["RunConfig", "config_from_args", "run"]

INPUT_FLAGS = ("a", "b", "dims", "space", "traces", "decomp", "sequence",
               "params", "measure", "field", "other")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Defaults, then CUNTZLAB_CONFIG overrides, then command-line flags."""
    values: Dict[str, Any] = dict(vars(args))
    config = RunConfig(command=values.pop("command"))
    config.apply_overrides(utils.load_config_overrides())
    config.threads = utils.get_thread_count()

    config.out = values.pop("out", None)
    config.fmt = values.pop("fmt", None) or analysis.FORMAT_JSON
    seed = values.pop("seed", None)
    config.seed = 0 if seed is None else int(seed)
    config.dry_run = bool(values.pop("dry_run", False))

    flags = {
        key: values.pop(key)
        for key in constants.CONFIG_OVERRIDE_KEYS
        if values.get(key) is not None
    }
    config.apply_overrides(flags)
    for key in constants.CONFIG_OVERRIDE_KEYS:
        values.pop(key, None)

    for name in INPUT_FLAGS:
        path = values.pop(name, None)
        if path is not None:
            config.inputs[name] = path
    config.options = {k: v for k, v in values.items() if v is not None}
    return config


def _default_out(config: RunConfig) -> str:
    if config.fmt == analysis.FORMAT_CSV:
        return constants.REPORT_CSV_FILE
    return constants.REPORT_FILE


def _emit(config: RunConfig, result: analysis.AnalysisResult) -> None:
    out = config.out or _default_out(config)
    if config.fmt == analysis.FORMAT_CSV:
        if result.table_header:
            json_report.write_csv(out, result.table_header, result.table_rows)
        else:
            json_report.write_csv(out, ["key", "value"],
                                  json_report.flatten(
                                      utils.to_jsonable(result.report)))
    elif result.standalone:
        json_report.write_json(out, result.report)
    else:
        json_report.write_analysis_report(
            out, config.command, {
                "config": config.to_dict(),
                "holds": result.holds,
                "result": result.report,
            })
    if result.summary:
        print(result.summary)


def run(config: RunConfig) -> int:
    """Runs one command; returns the process exit code."""
    try:
        lab_analysis = analysis.get_analysis(config.command)
        lab_analysis.load_inputs(config)
        if config.dry_run:
            logger.info(f"Inputs of {config.command} are valid")
            return constants.APP_EXIT_SUCCESS
        result = lab_analysis.analysis_func(config)
        _emit(config, result)
    except CuntzLabError as e:
        logger.error(f"{config.command} failed: {e}")
        return constants.APP_EXIT_ERROR
    except OSError as e:
        logger.error(f"{config.command} could not write its report: {e}")
        return constants.APP_EXIT_ERROR
    except np.linalg.LinAlgError as e:
        logger.error(f"{config.command} failed in linear algebra: {e}")
        return constants.APP_EXIT_ERROR
    except Exception as e:
        logger.exception(f"{config.command} failed unexpectedly: {e}")
        return constants.APP_EXIT_ERROR

    if result.holds is False:
        logger.info(f"{config.command}: certificate does not hold")
        return constants.APP_EXIT_CERTIFICATE_FALSE
    return constants.APP_EXIT_SUCCESS
