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
"""Analysis computing the radius of comparison bound of a decomposition"""

import logging

from typing import (
    Any,
    Dict,
    Optional,
)

from cuntz_lab import analysis, data_loader, rsh, utils
from cuntz_lab.datatypes.rsh_decomposition import RshDecomposition

logger = logging.getLogger(name=__name__)


class RcBoundAnalysis(analysis.LabAnalysis):
    name: str = "rc-bound"

    def __init__(self) -> None:
        self.decomposition: Optional[RshDecomposition] = None

    def load_inputs(self, config: analysis.RunConfig) -> None:
        self.decomposition = data_loader.load_decomposition(
            config.input("decomp"))

    def analysis_func(self,
                      config: analysis.RunConfig) -> analysis.AnalysisResult:
        logger.info(f" - Running analysis {self.get_name()}")
        assert self.decomposition is not None
        d = rsh.matrix_amplify(self.decomposition,
                               int(config.option("amplify", 1)))
        rc = rsh.rc_upper_bound(d)

        stages = []
        for k, stage in enumerate(d.stages):
            stages.append({
                "stage": k,
                "dim": stage.dim,
                "matrix_size": stage.matrix_size,
                "points": len(stage.base_space),
                "boundary_points": len(stage.boundary),
            })
            logger.debug(f"stage {k}: dim {stage.dim}, "
                         f"n {stage.matrix_size}")
        report: Dict[str, Any] = {
            "label": d.label,
            "length": d.length,
            "rc_upper_bound": rc,
            "stages": stages,
        }
        eps = config.option("eps")
        if eps is not None:
            delta0 = rsh.required_delta0(float(eps), d.length,
                                         config.constant_N)
            report["required_delta0"] = delta0
            report["delta_schedule"] = rsh.delta_schedule(
                delta0, d.length, config.constant_N)
        table_rows = [[
            str(s["stage"]),
            str(s["dim"]),
            str(s["matrix_size"]),
        ] for s in stages]

        logger.info(f" - Completed analysis {self.get_name()}")
        return analysis.AnalysisResult(
            report,
            summary=utils.format_rational(rc),
            table_header=["stage", "dim", "matrix_size"],
            table_rows=table_rows)
