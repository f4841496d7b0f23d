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
"""Analysis exercising the semigroup model W(A) on generated fields"""

import logging

from typing import (
    Any,
    Dict,
)

from cuntz_lab import analysis, constants, cuntz, generators
from cuntz_lab.datatypes.cuntz_class import CuntzClassRepr
from cuntz_lab.datatypes.sampled_space import SampledSpace
from cuntz_lab.datatypes.trace_measure import (
    TraceSet,
    all_extreme_traces,
    uniform_trace,
)

logger = logging.getLogger(name=__name__)

DEFAULT_INSTANCES = 200
DEFAULT_MATRIX_SIZE = 3


def trace_set_for(space: SampledSpace, n: int) -> TraceSet:
    """The uniform trace followed by every point evaluation."""
    return TraceSet([uniform_trace(space, n)] +
                    list(all_extreme_traces(space, n)))


def projection_asymmetry(config: analysis.RunConfig,
                         n: int) -> Dict[str, Any]:
    """A projection p against f = iota(p): p <=_W f needs strict
    inequality and fails, f <=_W p holds."""
    rng = generators.rng_for(config.seed, 6)
    space = generators.random_space(rng)
    rank = int(rng.integers(1, n + 1))
    p = generators.random_projection_field(space, n, rank, rng)
    traces = trace_set_for(space, n)
    p_class = cuntz.classify_field(p, traces, config.rank_tol, "p")
    f = p_class.iota
    doubled = cuntz.w_add(p_class, p_class)
    return {
        "rank": rank,
        "kind": p_class.kind,
        "p_leq_iota": cuntz.w_leq(p_class, f),
        "iota_leq_p": cuntz.w_leq(f, p_class),
        "doubled_is_projection": (isinstance(doubled, CuntzClassRepr)
                                  and doubled.is_projection),
    }


class SemigroupAnalysis(analysis.LabAnalysis):
    name: str = "semigroup"

    def load_inputs(self, config: analysis.RunConfig) -> None:
        # Everything is generated from the seed.
        pass

    def analysis_func(self,
                      config: analysis.RunConfig) -> analysis.AnalysisResult:
        logger.info(f" - Running analysis {self.get_name()}")
        instances = int(config.option("instances", DEFAULT_INSTANCES))
        n = int(config.option("n", DEFAULT_MATRIX_SIZE))

        checked = 0
        certified = 0
        violations = []
        not_applicable = []
        for idx in range(instances):
            rng = generators.rng_for(config.seed, 5, idx)
            space = generators.random_space(rng)
            declared = int(rng.integers(0, constants.MAX_DECLARED_DIM + 1))
            dims = {p: declared for p in space.point_ids}
            pair = generators.certified_pair(space, n, rng, dims)
            result = cuntz.order_embedding_check([pair],
                                                 trace_set_for(space, n),
                                                 dims, config.rank_tol)
            checked += result.checked
            certified += result.certified
            if result.violations:
                violations.append(idx)
            if result.not_applicable:
                not_applicable.append(idx)

        asymmetry = projection_asymmetry(config, n)
        asymmetry_holds = (not asymmetry["p_leq_iota"]
                           and asymmetry["iota_leq_p"])
        if not asymmetry_holds:
            logger.warning("projection asymmetry not reproduced")
        report = {
            "order_embedding": {
                "checked": checked,
                "certified": certified,
                "violations": violations,
                "not_applicable": not_applicable,
            },
            "projection_asymmetry": asymmetry,
        }
        holds = len(violations) == 0 and asymmetry_holds

        logger.info(f" - Completed analysis {self.get_name()}")
        return analysis.AnalysisResult(report,
                                       holds=holds,
                                       summary=analysis.summary_line(holds))
