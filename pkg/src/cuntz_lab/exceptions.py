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
"""Exceptions used throughout the package."""

from typing import Any, Optional


class CuntzLabError(Exception):
    """Base error"""


class SpaceError(CuntzLabError):
    """Error for invalid sampled spaces and regions"""


class FieldError(CuntzLabError):
    """Error for invalid matrix fields or functional calculus failures"""


class ApproximantError(FieldError):
    """No admissible eta exists for the sampled spectra"""


class PreconditionError(CuntzLabError):
    """An operation precondition does not hold.

    `witness` holds the offending point or index when one exists.
    """

    def __init__(self, message: str, witness: Optional[Any] = None) -> None:
        super().__init__(message)
        self.witness = witness


class ComparisonError(CuntzLabError):
    """Error for trace-set and shape mismatches in comparison logic"""


class DecompositionError(CuntzLabError):
    """Error for invalid RSH decompositions and inductive sequences"""


class ParamsError(CuntzLabError):
    """Error for invalid Villadsen parameters or stage indices"""


class MeasureError(CuntzLabError):
    """Error for invalid marginal measures"""


class DataLoaderError(CuntzLabError):
    """Error for handling data loader issues.

    `location` carries a file/line/field diagnostic string.
    """

    def __init__(self, message: str, location: str = "") -> None:
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
