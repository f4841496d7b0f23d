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
""" Utility functions """

import json
import logging
import os
import re
import yaml

from decimal import Decimal
from fractions import Fraction
from typing import (
    Any,
    Dict,
    Union,
)

import numpy as np

from cuntz_lab import constants
from cuntz_lab.exceptions import DataLoaderError

logger = logging.getLogger(name=__name__)

Rational = Union[int, str, Fraction]


def parse_rational(value: Any, location: str = "") -> Fraction:
    """Parses an int, a "p/q" string or a float into an exact Fraction.

    Floats go through their shortest repr so that 0.1 becomes 1/10.
    """
    if isinstance(value, bool):
        raise DataLoaderError(f"not a rational: {value!r}", location)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not np.isfinite(value):
            raise DataLoaderError(f"not a finite number: {value!r}", location)
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DataLoaderError(f"not a rational: {value!r}", location)
    raise DataLoaderError(f"not a rational: {value!r}", location)


def format_rational(value: Union[int, Fraction]) -> str:
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def float_17(value: float) -> float:
    """Rounds through 17 significant digits."""
    return float(format(float(value), ".17g"))


def to_jsonable(obj: Any) -> Any:
    """Converts report values into plain JSON types.

    Fractions become "p/q" strings, floats are rounded through 17
    significant digits and numpy scalars/arrays become python values.
    """
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, Decimal):
        return str(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float_17(float(obj))
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, complex):
        return [float_17(obj.real), float_17(obj.imag)]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(obj, key=str)]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    return str(obj)


try:
    _BaseLoader: Any = yaml.CSafeLoader
except AttributeError:
    _BaseLoader = yaml.SafeLoader


class _InputLoader(_BaseLoader):  # type: ignore
    """Safe loader that also reads exponent floats without a dot (1e-09)."""
    pass


_InputLoader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(r"^[-+]?[0-9][0-9_]*(?:\.[0-9_]*)?[eE][-+]?[0-9]+$"),
    list("-+0123456789"))


def _read_json(filename: str) -> Any:
    try:
        with open(filename, 'r') as stream:
            return json.load(stream)
    except json.JSONDecodeError as e:
        raise DataLoaderError(f"cannot parse: {e.msg}",
                              f"{filename}:line {e.lineno}")
    except (UnicodeDecodeError, RecursionError) as e:
        raise DataLoaderError(f"cannot parse: {e}", filename)


def data_file_read_yaml(filename: str) -> Any:
    """Reads a YAML (or JSON) input file.

    Files ending in .json go through the json module; everything else is
    YAML. Raises DataLoaderError with the line of the first parse problem.
    """
    if not os.path.isfile(filename):
        raise DataLoaderError("no such file", filename)

    if filename.endswith(".json"):
        data = _read_json(filename)
        logger.debug(f"Loaded {filename}")
        return data

    try:
        with open(filename, 'r') as stream:
            data = yaml.load(stream, Loader=_InputLoader)
    except yaml.MarkedYAMLError as e:
        mark = e.problem_mark
        line = f"line {mark.line + 1}" if mark is not None else "unknown line"
        raise DataLoaderError(f"cannot parse: {e.problem}",
                              f"{filename}:{line}")
    except (yaml.YAMLError, UnicodeDecodeError) as e:
        raise DataLoaderError(f"cannot parse: {e}", filename)
    logger.debug(f"Loaded {filename}")
    return data


def load_config_overrides() -> Dict[str, Any]:
    """Returns the tolerance overrides of the file named by CUNTZLAB_CONFIG."""
    config_file = os.environ.get(constants.ENV_CONFIG)
    if not config_file:
        return {}
    content = data_file_read_yaml(config_file)
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise DataLoaderError("configuration must be a mapping", config_file)

    overrides = {}
    for key, value in content.items():
        if key not in constants.CONFIG_OVERRIDE_KEYS:
            logger.warning(f"Ignoring unknown configuration key {key}")
            continue
        overrides[key] = value
    logger.info(f"Loaded {len(overrides)} configuration overrides")
    return overrides


def get_thread_count() -> int:
    """Worker cap from CUNTZLAB_THREADS, at least 1."""
    raw = os.environ.get(constants.ENV_THREADS)
    if not raw:
        return constants.DEFAULT_THREADS
    try:
        threads = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {constants.ENV_THREADS}={raw}")
        return constants.DEFAULT_THREADS
    return max(1, threads)
