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
"""Analysis measuring the intertwining defect between cube simplices"""

import logging

from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Optional,
)

from cuntz_lab import analysis, data_loader, generators, trace_simplex
from cuntz_lab.datatypes.marginal_measure import MarginalMeasure
from cuntz_lab.exceptions import DataLoaderError

logger = logging.getLogger(name=__name__)

DEFAULT_SAMPLES = 100
DEFAULT_SUPPORT = 2


def _required_int(config: analysis.RunConfig, name: str) -> int:
    value = config.option(name)
    if value is None:
        raise DataLoaderError(f"command {config.command} needs --{name}")
    return int(value)


class IntertwineAnalysis(analysis.LabAnalysis):
    name: str = "intertwine"

    def __init__(self) -> None:
        self.measure: Optional[MarginalMeasure] = None

    def load_inputs(self, config: analysis.RunConfig) -> None:
        for name in ("N1", "M1", "N2"):
            _required_int(config, name)
        if config.has_input("measure"):
            self.measure = data_loader.load_measure(config.input("measure"))

    def analysis_func(self,
                      config: analysis.RunConfig) -> analysis.AnalysisResult:
        logger.info(f" - Running analysis {self.get_name()}")
        N1 = _required_int(config, "N1")
        M1 = _required_int(config, "M1")
        N2 = _required_int(config, "N2")
        report: Dict[str, Any] = {
            "N1": N1,
            "M1": M1,
            "N2": N2,
            "defect_bound": trace_simplex.intertwine_defect(N1, M1, N2),
        }
        if N2 % N1 != 0:
            logger.warning(f"N1 = {N1} does not divide N2 = {N2}; "
                           f"only the bound is computed")
            logger.info(f" - Completed analysis {self.get_name()}")
            return analysis.AnalysisResult(
                report, summary=analysis.summary_line(
                    report["defect_bound"]["bound"]))

        if self.measure is not None:
            measures = [self.measure]
        else:
            samples = int(config.option("samples", DEFAULT_SAMPLES))
            support = int(config.option("support", DEFAULT_SUPPORT))
            measures = [
                generators.random_product_measure(
                    generators.rng_for(config.seed, 7, idx), N2, support)
                for idx in range(samples)
            ]

        defects: List[Fraction] = []
        violations: List[int] = []
        for idx, mu in enumerate(measures):
            result = trace_simplex.composed_defect(mu, N1, M1, N2)
            defects.append(result["defect"])
            if not result["within_bound"]:
                violations.append(idx)
            logger.debug(f"measure {idx}: defect {result['defect']}")
        report["measures"] = len(measures)
        report["defects"] = defects
        report["max_defect"] = max(defects, default=Fraction(0))
        report["violations"] = violations

        logger.info(f" - Completed analysis {self.get_name()}")
        return analysis.AnalysisResult(
            report,
            holds=len(violations) == 0,
            summary=analysis.summary_line(report["max_defect"]),
            table_header=["measure", "defect"],
            table_rows=[[str(idx), analysis.summary_line(d)]
                        for idx, d in enumerate(defects)])
