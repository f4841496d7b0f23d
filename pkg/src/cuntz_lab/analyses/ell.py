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
"""Analysis computing the binned spectral invariant of a field"""

import logging

from typing import (
    Any,
    Dict,
    Optional,
)

from cuntz_lab import analysis, cuntz, data_loader
from cuntz_lab.datatypes.matrix_field import MatrixField
from cuntz_lab.datatypes.trace_measure import TraceSet, uniform_trace

logger = logging.getLogger(name=__name__)

DEFAULT_BINS = 10


class EllAnalysis(analysis.LabAnalysis):
    name: str = "ell"

    def __init__(self) -> None:
        self.field: Optional[MatrixField] = None
        self.other: Optional[MatrixField] = None
        self.traces: Optional[TraceSet] = None

    def load_inputs(self, config: analysis.RunConfig) -> None:
        space = data_loader.load_space(config.input("space"))
        self.field = data_loader.load_field(config.input("field"), space,
                                            config.hermitian_tol,
                                            config.psd_tol)
        if config.has_input("other"):
            self.other = data_loader.load_field(config.input("other"), space,
                                                config.hermitian_tol,
                                                config.psd_tol)
        if config.has_input("traces"):
            self.traces = data_loader.load_traces(config.input("traces"),
                                                  space, self.field.n)
        else:
            self.traces = TraceSet([uniform_trace(space, self.field.n)])

    def analysis_func(self,
                      config: analysis.RunConfig) -> analysis.AnalysisResult:
        logger.info(f" - Running analysis {self.get_name()}")
        assert self.field is not None and self.traces is not None
        bins = int(config.option("bins", DEFAULT_BINS))
        mus = list(self.traces)

        invariant = cuntz.ell_invariant(self.field, mus, bins)
        report: Dict[str, Any] = {"invariant": invariant}
        holds = None
        if self.other is not None:
            holds = cuntz.au_candidates(self.field, self.other, mus, bins)
            report["other_invariant"] = cuntz.ell_invariant(
                self.other, mus, bins)
            report["au_candidates"] = holds

        rows = []
        for label, dist in invariant.to_dict()["distributions"].items():
            for edge, mass in dist.items():
                rows.append([label, edge, analysis.summary_line(mass)])

        logger.info(f" - Completed analysis {self.get_name()}")
        return analysis.AnalysisResult(
            report,
            holds=holds,
            summary=analysis.summary_line(
                holds if holds is not None else len(invariant.spectrum)),
            table_header=["trace", "bin", "mass"],
            table_rows=rows)
