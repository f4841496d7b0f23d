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
"""Analysis building a sampled cube-product space"""

import logging

from cuntz_lab import analysis, space
from cuntz_lab.exceptions import DataLoaderError

logger = logging.getLogger(name=__name__)


class GridAnalysis(analysis.LabAnalysis):
    name: str = "grid"

    def load_inputs(self, config: analysis.RunConfig) -> None:
        if not config.option("cube_dims"):
            raise DataLoaderError("command grid needs --dims")
        if config.option("resolution") is None:
            raise DataLoaderError("command grid needs --resolution")

    def analysis_func(self,
                      config: analysis.RunConfig) -> analysis.AnalysisResult:
        logger.info(f" - Running analysis {self.get_name()}")
        dims = [int(d) for d in config.option("cube_dims")]
        grid = space.make_grid(dims, int(config.option("resolution")),
                               config.option("label"))
        logger.info(f"Grid {grid.label} has {len(grid)} points")

        logger.info(f" - Completed analysis {self.get_name()}")
        return analysis.AnalysisResult(grid.to_dict(),
                                       summary=grid.label,
                                       standalone=True)
