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
"""Interface shared by the analyses behind each command"""

import abc
import json
import logging

from dataclasses import dataclass, field
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Sequence,
    Type,
)

from cuntz_lab import constants, utils
from cuntz_lab.exceptions import DataLoaderError

logger = logging.getLogger(name=__name__)

FORMAT_JSON = "json"
FORMAT_CSV = "csv"


@dataclass
class RunConfig:
    """Resolved configuration of one invocation.

    Tolerances start at the defaults in `constants`, then take the
    CUNTZLAB_CONFIG overrides, then the command-line flags.
    """
    command: str
    inputs: Dict[str, str] = field(default_factory=dict)
    out: Optional[str] = None
    fmt: str = FORMAT_JSON
    seed: int = 0
    dry_run: bool = False
    rank_tol: float = constants.RANK_TOL
    hermitian_tol: float = constants.HERMITIAN_TOL
    psd_tol: float = constants.PSD_TOL
    projection_tol: float = constants.PROJECTION_TOL
    witness_restarts: int = constants.WITNESS_RESTARTS
    witness_iters: int = constants.WITNESS_ITERS
    constant_N: int = constants.CONSTANT_N
    q_max: int = constants.DEFAULT_Q_MAX
    threads: int = constants.DEFAULT_THREADS
    options: Dict[str, Any] = field(default_factory=dict)

    def input(self, name: str) -> str:
        if not self.inputs.get(name):
            raise DataLoaderError(f"command {self.command} needs --{name}")
        return self.inputs[name]

    def has_input(self, name: str) -> bool:
        return bool(self.inputs.get(name))

    def option(self, name: str, default: Any = None) -> Any:
        value = self.options.get(name)
        return default if value is None else value

    def apply_overrides(self, overrides: Dict[str, Any]) -> None:
        for key, value in overrides.items():
            setattr(self, key, type(getattr(self, key))(value))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "seed": self.seed,
            "rank_tol": self.rank_tol,
            "hermitian_tol": self.hermitian_tol,
            "psd_tol": self.psd_tol,
            "projection_tol": self.projection_tol,
            "witness_restarts": self.witness_restarts,
            "witness_iters": self.witness_iters,
            "constant_N": self.constant_N,
            "q_max": self.q_max,
            "options": {
                k: v
                for k, v in self.options.items() if v is not None
            },
        }


@dataclass
class AnalysisResult:
    """`holds` is None for commands that compute rather than certify.

    A `standalone` report is written as the whole output document instead
    of under the analysis name.
    """
    report: Dict[str, Any]
    holds: Optional[bool] = None
    summary: str = ""
    standalone: bool = False
    table_header: Sequence[str] = field(default_factory=list)
    table_rows: List[List[str]] = field(default_factory=list)


class LabAnalysis(abc.ABC):
    name: str = ""

    @classmethod
    def get_name(cls) -> str:
        """Return name of analysis, which is also its command name"""
        return cls.name

    @abc.abstractmethod
    def load_inputs(self, config: RunConfig) -> None:
        """Parses and validates every input file of the command. This is all
        a --dry-run performs."""
        pass

    @abc.abstractmethod
    def analysis_func(self, config: RunConfig) -> AnalysisResult:
        """Entrypoint of the analysis, called after `load_inputs`."""
        pass


def instantiate_analysis_interface(cls: Type[LabAnalysis]) -> LabAnalysis:
    """Wrapper function to satisfy Mypy semantics"""
    return cls()


def get_all_analyses() -> List[Type[LabAnalysis]]:
    from cuntz_lab import analyses
    return analyses.all_analyses


def get_analysis(name: str) -> LabAnalysis:
    for analysis_interface in get_all_analyses():
        if analysis_interface.get_name() == name:
            return instantiate_analysis_interface(analysis_interface)
    raise DataLoaderError(f"unknown command {name!r}")


def summary_line(value: Any) -> str:
    """Rationals print as "p/q", everything else through its JSON form."""
    converted = utils.to_jsonable(value)
    return converted if isinstance(converted, str) else json.dumps(converted)
