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
"""Analysis comparing two positive fields: certificate and witness"""

import logging

from typing import (
    Any,
    Dict,
    Optional,
)

from cuntz_lab import analysis, cuntz, data_loader, json_report, matfield
from cuntz_lab.datatypes.matrix_field import MatrixField
from cuntz_lab.datatypes.trace_measure import TraceSet

logger = logging.getLogger(name=__name__)


class CompareAnalysis(analysis.LabAnalysis):
    name: str = "compare"

    def __init__(self) -> None:
        self.a: Optional[MatrixField] = None
        self.b: Optional[MatrixField] = None
        self.dims: Dict[str, int] = dict()
        self.traces: Optional[TraceSet] = None

    def load_inputs(self, config: analysis.RunConfig) -> None:
        if config.has_input("space"):
            space = data_loader.load_space(config.input("space"))
        else:
            space = data_loader.synthesize_space(
                [config.input("a"), config.input("b")])
        self.a = data_loader.load_field(config.input("a"), space,
                                        config.hermitian_tol, config.psd_tol)
        self.b = data_loader.load_field(config.input("b"), space,
                                        config.hermitian_tol, config.psd_tol)
        self.dims = data_loader.load_dims(config.input("dims"), space)
        if config.has_input("traces"):
            self.traces = data_loader.load_traces(config.input("traces"),
                                                  space, self.a.n)

    def analysis_func(self,
                      config: analysis.RunConfig) -> analysis.AnalysisResult:
        logger.info(f" - Running analysis {self.get_name()}")
        assert self.a is not None and self.b is not None
        a, b = self.a, self.b

        certificate = cuntz.rank_gap_certificate(a, b, self.dims,
                                                 config.rank_tol)
        report: Dict[str, Any] = {
            "certificate": certificate,
            "rank_a": matfield.rank_function(a, config.rank_tol),
            "rank_b": matfield.rank_function(b, config.rank_tol),
            "obstruction_bound": cuntz.rank_obstruction_bound(
                a, b, config.rank_tol),
        }
        if self.traces is not None:
            report["strict_comparison_gap"] = cuntz.strict_comparison_gap(
                a, b, self.traces, config.rank_tol)

        if config.option("witness", False):
            search = cuntz.witness_search(a, b, config.witness_restarts,
                                          config.witness_iters, config.seed,
                                          config.rank_tol, config.threads)
            report["witness"] = search
            if config.option("dump_witness"):
                json_report.write_json(config.option("dump_witness"),
                                       search.v)
                logger.info(f"Dumped witness to "
                            f"{config.option('dump_witness')}")

        logger.info(f" - Completed analysis {self.get_name()}")
        return analysis.AnalysisResult(
            report,
            holds=certificate.holds,
            summary=analysis.summary_line(certificate.holds))
