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
"""Analysis checking slow dimension growth of an inductive sequence"""

import logging

from typing import Optional

from cuntz_lab import analysis, data_loader, rsh, utils
from cuntz_lab.datatypes.rsh_decomposition import InductiveSequence

logger = logging.getLogger(name=__name__)


class SlowDimensionGrowthAnalysis(analysis.LabAnalysis):
    name: str = "sdg-check"

    def __init__(self) -> None:
        self.sequence: Optional[InductiveSequence] = None

    def load_inputs(self, config: analysis.RunConfig) -> None:
        self.sequence = data_loader.load_sequence(config.input("sequence"))

    def analysis_func(self,
                      config: analysis.RunConfig) -> analysis.AnalysisResult:
        logger.info(f" - Running analysis {self.get_name()}")
        assert self.sequence is not None
        big_n = int(config.option("N", config.constant_N))
        start = int(config.option("i", 0))

        result = rsh.slow_dimension_growth_check(self.sequence, big_n, start)
        if not result.holds:
            logger.warning(f"no j0 > {start} found on the "
                           f"{len(self.sequence)} supplied terms")
        rcs = rsh.rc_sequence(self.sequence)
        report = {
            "label": self.sequence.label,
            "growth": result,
            "rc_sequence": rcs,
        }

        logger.info(f" - Completed analysis {self.get_name()}")
        return analysis.AnalysisResult(
            report,
            holds=result.holds,
            summary=analysis.summary_line(result.j0),
            table_header=["term", "passes", "rc_upper_bound"],
            table_rows=[[
                str(j), analysis.summary_line(term["passes"]),
                utils.format_rational(rc)
            ] for j, (term, rc) in enumerate(zip(result.detail, rcs))])
