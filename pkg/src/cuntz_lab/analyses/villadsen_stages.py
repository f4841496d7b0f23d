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
"""Analysis emitting the stage invariants of a Villadsen-type limit and
validating its parameters"""

import logging

from typing import (
    Any,
    Dict,
    Optional,
)

from cuntz_lab import analysis, constants, data_loader, utils, villadsen
from cuntz_lab.datatypes.villadsen_params import VilladsenParams

logger = logging.getLogger(name=__name__)

STAGE_HEADER = ["i", "m_i", "N_i", "rc_i", "ratio_i"]


class VilladsenAnalysis(analysis.LabAnalysis):
    name: str = "villadsen"

    def __init__(self) -> None:
        self.params: Optional[VilladsenParams] = None

    def load_inputs(self, config: analysis.RunConfig) -> None:
        self.params = data_loader.load_params(config.input("params"))
        stages = config.option("stages")
        if stages is not None:
            self.params.check_stage(int(stages))

    def _obstruction(self, p: VilladsenParams,
                     config: analysis.RunConfig) -> Dict[str, Any]:
        eta = utils.parse_rational(config.option("eta"), "--eta")
        i = int(config.option("i", 0))
        j = int(config.option("j", p.last_stage))
        rank_a = int(config.option("rank_a", 1))
        result: Dict[str, Any] = {
            "eta": eta,
            "obstruction_stage": villadsen.obstruction_stage(p, eta),
            "rank_bound": villadsen.rank_bound_check(p, i, rank_a, eta),
        }
        if i < j:
            result["chern"] = villadsen.chern_obstruction_holds(
                p, i, j, rank_a, eta)
            result["connecting_multiplicities"] = (
                villadsen.connecting_multiplicities(p, i, j))
        return result

    def analysis_func(self,
                      config: analysis.RunConfig) -> analysis.AnalysisResult:
        logger.info(f" - Running analysis {self.get_name()}")
        assert self.params is not None
        p = self.params
        stages = int(config.option("stages", p.last_stage))
        tol = utils.parse_rational(
            config.option("tol", constants.CONVERGENCE_TOL), "--tol")

        table = villadsen.stage_table(p, stages)
        validation = villadsen.validate_params(p, stages, config.q_max, tol)
        report: Dict[str, Any] = {
            "params": p,
            "stages": table,
            "validation": validation,
        }
        if config.option("eta") is not None:
            report["obstruction"] = self._obstruction(p, config)
        if config.option("morita") is not None:
            s = utils.parse_rational(config.option("morita"), "--morita")
            report["morita"] = villadsen.morita_rationality_check(
                p.target_r, s)

        verdict = validation["verdict"]
        logger.info(f" - Completed analysis {self.get_name()}")
        return analysis.AnalysisResult(
            report,
            holds=verdict == villadsen.PREFIX_VERIFIED,
            summary=verdict,
            table_header=STAGE_HEADER,
            table_rows=[row.csv_row() for row in table])
