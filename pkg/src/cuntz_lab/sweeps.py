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
"""Seeded property sweeps run by the kit-test command.

Every sweep draws its instances from generators.rng_for(seed, sweep, idx),
so one instance never depends on how many others ran before it.
"""

import logging
import time

from dataclasses import dataclass, field
from decimal import Decimal
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Sequence,
)

import numpy as np

from cuntz_lab import constants, cuntz, generators, matfield, rsh
from cuntz_lab.datatypes.trace_measure import uniform_trace
from cuntz_lab.exceptions import ApproximantError, CuntzLabError
from cuntz_lab.scalar_kit import identity_residuals

logger = logging.getLogger(name=__name__)

KIT_IDENTITY_TOL = 1e-12
DINI_TOL = 1e-10
WITNESS_TARGET = 0.05
WITNESS_SUCCESS_RATE = 0.95

SWEEP_KIT = "scalar-kit"
SWEEP_DINI = "dini"
SWEEP_APPROXIMANT = "approximant"
SWEEP_WITNESS = "witness"
SWEEP_DIMENSION = "dimension-function"
SWEEP_SCHEDULE = "delta-schedule"

ALL_SWEEPS = (SWEEP_KIT, SWEEP_DINI, SWEEP_APPROXIMANT, SWEEP_WITNESS,
              SWEEP_DIMENSION, SWEEP_SCHEDULE)


@dataclass
class SweepResult:
    name: str
    instances: int = 0
    failures: int = 0
    skipped: int = 0
    elapsed: float = 0.0
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "instances": self.instances,
            "failures": self.failures,
            "skipped": self.skipped,
            "passed": self.passed,
            "detail": self.detail,
        }


def scalar_kit_sweep(nt: int = 1000, nd: int = 20,
                     ns: int = 20) -> SweepResult:
    start = time.perf_counter()
    ts = np.linspace(0.0, 1.0, nt)
    deltas = np.linspace(1.0 / nd, 1.0, nd)
    ss = np.linspace(0.0, 1.0, ns)
    worst = identity_residuals(deltas, ss, ts)
    failures = sum(1 for v in worst.values() if v > KIT_IDENTITY_TOL)
    return SweepResult(SWEEP_KIT, nt * nd * ns, failures, 0,
                       time.perf_counter() - start, worst)


def dini_sweep(instances: int = 200, seed: int = 0) -> SweepResult:
    result = SweepResult(SWEEP_DINI)
    start = time.perf_counter()
    deltas = [0.5 * 2.0**(-j) for j in range(10)]
    worst_increase = 0.0
    for idx in range(instances):
        rng = generators.rng_for(seed, 2, idx)
        space = generators.random_space(rng, max_points=6)
        n = int(rng.integers(1, 4))
        a = generators.random_field(space, n, rng)
        b = generators.random_field(space, n, rng)
        v = generators.random_unitary_field(space, n, rng)
        curve = matfield.dini_curve(a, b, v, deltas)
        increase = max([0.0] + [c2 - c1 for c1, c2 in zip(curve, curve[1:])])
        worst_increase = max(worst_increase, increase)
        result.instances += 1
        if increase > DINI_TOL:
            logger.warning(f"dini curve increases by {increase:.3e} on "
                           f"instance {idx}")
            result.failures += 1
    result.elapsed = time.perf_counter() - start
    result.detail = {"worst_increase": worst_increase}
    return result


def approximant_sweep(instances: int = 200, seed: int = 0) -> SweepResult:
    result = SweepResult(SWEEP_APPROXIMANT)
    start = time.perf_counter()
    worst: Dict[str, float] = {
        "hah_minus_a": 0.0,
        "ha_minus_a": 0.0,
        "ah_minus_a": 0.0
    }
    for idx in range(instances):
        rng = generators.rng_for(seed, 3, idx)
        space = generators.random_space(rng)
        n = int(rng.integers(1, 4))
        a = generators.random_field(space, n, rng)
        eps = float(rng.uniform(0.05, 0.5))
        try:
            approx = matfield.well_supported_approximant(a, eps)
        except ApproximantError:
            result.skipped += 1
            continue
        result.instances += 1
        errors = matfield.approximant_errors(a, approx)
        for key, value in errors.items():
            worst[key] = max(worst[key], value / eps)
        ok = (errors["hah_minus_a"] < eps and errors["ha_minus_a"] < eps / 2
              and errors["ah_minus_a"] < eps / 2
              and approx.support.is_valid())
        if not ok:
            logger.warning(f"approximant contract broken on instance {idx}")
            result.failures += 1
    result.elapsed = time.perf_counter() - start
    total = result.instances + result.skipped
    result.detail = {
        "worst_relative_errors": worst,
        "eta_failure_rate": result.skipped / total if total else 0.0,
    }
    return result


def witness_sweep(instances: int = 300,
                  seed: int = 0,
                  restarts: int = constants.WITNESS_RESTARTS,
                  iters: int = constants.WITNESS_ITERS,
                  threads: int = 1) -> SweepResult:
    result = SweepResult(SWEEP_WITNESS)
    start = time.perf_counter()
    reached = 0
    obstructed = 0
    residuals: List[float] = []
    for idx in range(instances):
        rng = generators.rng_for(seed, 4, idx)
        space = generators.random_space(rng)
        n = int(rng.integers(1, 4))
        declared = int(rng.integers(0, constants.MAX_DECLARED_DIM + 1))
        dims = {p: declared for p in space.point_ids}
        a, b = generators.certified_pair(space, n, rng, dims)
        if not cuntz.rank_gap_certificate(a, b, dims).holds:
            result.skipped += 1
            continue
        result.instances += 1
        if cuntz.rank_obstruction_bound(a, b) > constants.RANK_TOL:
            obstructed += 1
        search = cuntz.witness_search(a, b, restarts, iters,
                                      seed=int(rng.integers(0, 2**31)),
                                      threads=threads)
        residuals.append(search.residual)
        if search.residual < WITNESS_TARGET:
            reached += 1
    rate = reached / result.instances if result.instances else 1.0
    result.failures = obstructed + (1 if rate < WITNESS_SUCCESS_RATE else 0)
    result.elapsed = time.perf_counter() - start
    result.detail = {
        "success_rate": rate,
        "obstructed": obstructed,
        "worst_residual": max(residuals, default=0.0),
    }
    return result


def dimension_function_sweep(instances: int = 200,
                             seed: int = 0) -> SweepResult:
    """Additivity on block sums and monotonicity of d((a - eps)_+) as eps
    decreases to 0."""
    result = SweepResult(SWEEP_DIMENSION)
    start = time.perf_counter()
    eps_grid = [2.0**(-j) for j in range(12)] + [0.0]
    additivity_failures = 0
    monotone_failures = 0
    for idx in range(instances):
        rng = generators.rng_for(seed, 9, idx)
        space = generators.random_space(rng)
        n = int(rng.integers(1, 4))
        a = generators.random_field(space, n, rng)
        b = generators.random_field(space, n, rng)
        tau = uniform_trace(space, n)
        result.instances += 1

        summed = cuntz.dim_fn_value(matfield.block_sum(a, b), tau)
        if summed != cuntz.dim_fn_value(a, tau) + cuntz.dim_fn_value(b, tau):
            additivity_failures += 1
        values = [
            cuntz.dim_fn_value(matfield.cut_down(a, eps), tau)
            for eps in eps_grid
        ]
        if any(v2 < v1 for v1, v2 in zip(values, values[1:])):
            monotone_failures += 1
    result.failures = additivity_failures + monotone_failures
    result.elapsed = time.perf_counter() - start
    result.detail = {
        "additivity_failures": additivity_failures,
        "monotonicity_failures": monotone_failures,
    }
    return result


def schedule_sweep(l_max: int = 8,
                   N: int = constants.CONSTANT_N) -> SweepResult:
    result = SweepResult(SWEEP_SCHEDULE)
    start = time.perf_counter()
    worst = 0.0
    for level in range(l_max + 1):
        for delta0 in (Decimal("1e-40"), Decimal("1e-12"), 1e-40, 1e-12):
            result.instances += 1
            try:
                schedule = rsh.delta_schedule(delta0, level, N)
            except CuntzLabError as e:
                logger.warning(f"schedule check failed: {e}")
                result.failures += 1
                continue
            for rec, cf in zip(schedule.recursive, schedule.closed_form):
                worst = max(worst, float(abs(rec - cf) / abs(rec)))
    result.elapsed = time.perf_counter() - start
    result.detail = {"worst_relative_gap": worst}
    return result


def run_sweeps(names: Sequence[str],
               instances: Optional[int] = None,
               seed: int = 0,
               restarts: int = constants.WITNESS_RESTARTS,
               iters: int = constants.WITNESS_ITERS,
               threads: int = 1) -> List[SweepResult]:
    """Runs the named sweeps in order.

    `instances` replaces every per-sweep instance count; None keeps the
    acceptance defaults.
    """
    counts: Dict[str, Any] = {}
    if instances is not None:
        counts["instances"] = instances
    results = []
    for name in names:
        logger.info(f"Running sweep {name}")
        if name == SWEEP_KIT:
            results.append(scalar_kit_sweep())
        elif name == SWEEP_DINI:
            results.append(dini_sweep(seed=seed, **counts))
        elif name == SWEEP_APPROXIMANT:
            results.append(approximant_sweep(seed=seed, **counts))
        elif name == SWEEP_WITNESS:
            results.append(
                witness_sweep(seed=seed,
                              restarts=restarts,
                              iters=iters,
                              threads=threads,
                              **counts))
        elif name == SWEEP_DIMENSION:
            results.append(dimension_function_sweep(seed=seed, **counts))
        elif name == SWEEP_SCHEDULE:
            results.append(schedule_sweep())
        else:
            raise CuntzLabError(f"unknown sweep {name!r}, expected one of "
                                f"{list(ALL_SWEEPS)}")
        logger.info(f"Sweep {name}: {results[-1].failures} failures in "
                    f"{results[-1].elapsed:.2f}s")
    return results
