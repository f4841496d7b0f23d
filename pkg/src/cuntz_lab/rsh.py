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
"""Radius of comparison bounds and comparison certificates for recursive
subhomogeneous decompositions."""

import decimal
import logging
import math

from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np

from cuntz_lab import constants, cuntz
from cuntz_lab.datatypes.cuntz_class import Certificate
from cuntz_lab.datatypes.matrix_field import MatrixField
from cuntz_lab.datatypes.rsh_decomposition import (
    InductiveSequence,
    RshDecomposition,
    RshStage,
)
from cuntz_lab.datatypes.trace_measure import TraceMeasure, extreme_trace
from cuntz_lab.exceptions import (
    CuntzLabError,
    DecompositionError,
    PreconditionError,
)

logger = logging.getLogger(name=__name__)

Real = Union[float, Decimal]

# Working precision for the decimal delta schedule.
SCHEDULE_PRECISION = 60


def rc_upper_bound(d: RshDecomposition) -> Fraction:
    """max(0, max_k (dim X_k - 1) / (2 n(k)))."""
    bound = Fraction(0)
    for stage in d.stages:
        bound = max(bound, Fraction(stage.dim - 1, 2 * stage.matrix_size))
    return bound


def matrix_amplify(d: RshDecomposition, m: int) -> RshDecomposition:
    """M_m of the decomposition: every n(k) is multiplied by m.

    Clutching target lists are unchanged, since the sizes of the target
    stages scale by m as well.
    """
    if m < 1:
        raise PreconditionError(f"amplification must be >= 1, got {m}")
    if m == 1:
        return d
    stages = [
        RshStage(s.base_space, s.matrix_size * m, s.boundary, s.clutch)
        for s in d.stages
    ]
    return RshDecomposition(stages, f"M_{m}({d.label})")


def dimension_function(d: RshDecomposition) -> Dict[Tuple[int, str], int]:
    """d(x) on the total space, keyed by (stage, point)."""
    return {(k, p): s.dim
            for k, s in enumerate(d.stages)
            for p in s.interior_points()}


def matrix_size_function(d: RshDecomposition) -> Dict[Tuple[int, str], int]:
    """m(x) on the total space, keyed by (stage, point)."""
    return {(k, p): s.matrix_size
            for k, s in enumerate(d.stages)
            for p in s.interior_points()}


def extreme_traces(d: RshDecomposition) -> List[Tuple[int, TraceMeasure]]:
    """tau_x for every x in X_k minus its boundary, with its stage index."""
    traces = []
    for k, stage in enumerate(d.stages):
        for point_id in stage.interior_points():
            traces.append((k,
                           extreme_trace(stage.base_space, point_id,
                                         stage.matrix_size,
                                         f"{k}:{point_id}")))
    return traces


def _check_stage_fields(d: RshDecomposition,
                        fields: Sequence[MatrixField]) -> None:
    if len(fields) != len(d.stages):
        raise DecompositionError(
            f"{len(d.stages)} stages but {len(fields)} fields")
    amplification = None
    for k, (stage, f) in enumerate(zip(d.stages, fields)):
        if f.space != stage.base_space:
            raise DecompositionError(
                f"field for stage {k} is not on {stage.base_space.label}")
        if f.n % stage.matrix_size != 0:
            raise DecompositionError(
                f"field size {f.n} at stage {k} is not a multiple of "
                f"n({k}) = {stage.matrix_size}")
        factor = f.n // stage.matrix_size
        if amplification is None:
            amplification = factor
        elif factor != amplification:
            raise DecompositionError(
                f"stage {k} uses amplification {factor}, earlier stages "
                f"use {amplification}")


def stage_rank_gap_certificate(d: RshDecomposition,
                               a: Sequence[MatrixField],
                               b: Sequence[MatrixField],
                               tol: float = constants.RANK_TOL
                               ) -> Certificate:
    """rank a(x) + (d(x) - 1)/2 <= rank b(x) on every X_k minus boundary.

    The witness of a failure is (stage index, point).
    """
    _check_stage_fields(d, a)
    _check_stage_fields(d, b)
    checked = 0
    for k, stage in enumerate(d.stages):
        interior = stage.interior_points()
        dims = {p: stage.dim for p in interior}
        cert = cuntz.rank_gap_certificate(a[k], b[k], dims, tol, interior)
        checked += cert.checked
        if not cert.holds:
            return Certificate(False, (k, cert.witness), checked)
    return Certificate(True, None, checked)


def r_strict_hypothesis(d: RshDecomposition,
                        a: Sequence[MatrixField],
                        b: Sequence[MatrixField],
                        r: Fraction,
                        tol: float = constants.RANK_TOL) -> Certificate:
    """d_tau(a) + r < d_tau(b) for every extreme trace tau_x.

    With r >= rc_upper_bound(d) this forces the stage certificate.
    """
    _check_stage_fields(d, a)
    _check_stage_fields(d, b)
    checked = 0
    for k, trace in extreme_traces(d):
        checked += 1
        lhs = cuntz.dim_fn_value(a[k], trace, tol) + Fraction(r)
        if not lhs < cuntz.dim_fn_value(b[k], trace, tol):
            return Certificate(False, (k, trace.support()[0]), checked)
    return Certificate(True, None, checked)


def clutch_consistency(d: RshDecomposition,
                       fields: Sequence[MatrixField],
                       tol: float = constants.PROJECTION_TOL) -> Certificate:
    """At each boundary point, the stage value must be the block-diagonal
    sum of the clutch target values, in target order."""
    _check_stage_fields(d, fields)
    checked = 0
    for k, stage in enumerate(d.stages):
        if fields[k].n != stage.matrix_size:
            raise DecompositionError(
                "clutch consistency needs unamplified fields")
        for point_id, targets in stage.clutch.items():
            checked += 1
            blocks = [fields[t].value(y) for t, y in targets]
            expected = np.zeros((stage.matrix_size, stage.matrix_size),
                                dtype=complex)
            offset = 0
            for block in blocks:
                size = block.shape[0]
                expected[offset:offset + size, offset:offset + size] = block
                offset += size
            if np.max(np.abs(fields[k].value(point_id) - expected)) > tol:
                return Certificate(False, (k, point_id), checked)
    return Certificate(True, None, checked)


@dataclass
class DeltaSchedule:
    recursive: List[Real] = field(default_factory=list)
    closed_form: List[Real] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "recursive": list(self.recursive),
            "closed_form": list(self.closed_form),
        }


def _sqrt(x: Real) -> Real:
    if isinstance(x, Decimal):
        return x.sqrt()
    return math.sqrt(x)


def _schedule_context() -> decimal.Context:
    return decimal.Context(prec=SCHEDULE_PRECISION,
                           Emin=decimal.MIN_EMIN,
                           Emax=decimal.MAX_EMAX)


def delta_schedule(delta0: Real,
                   l: int,
                   N: int = constants.CONSTANT_N) -> DeltaSchedule:
    """delta_k = N sqrt(delta_{k-1}) next to the closed form
    delta_0^(1/2^k) prod_{j<k} N^(1/2^j).

    Accepts floats or Decimals; Decimals are evaluated at
    SCHEDULE_PRECISION digits.
    """
    if delta0 <= 0:
        raise PreconditionError(f"delta0 must be positive, got {delta0}")
    if l < 0 or N < 1:
        raise PreconditionError(f"need l >= 0 and N >= 1, got {l}, {N}")

    with decimal.localcontext(_schedule_context()):
        recursive: List[Real] = [delta0]
        for _ in range(l):
            recursive.append(N * _sqrt(recursive[-1]))

        closed: List[Real] = []
        for k in range(l + 1):
            if isinstance(delta0, Decimal):
                value: Real = delta0**(Decimal(1) / Decimal(2**k))
                for j in range(k):
                    value *= Decimal(N)**(Decimal(1) / Decimal(2**j))
            else:
                value = delta0**(1.0 / 2**k)
                for j in range(k):
                    value *= N**(1.0 / 2**j)
            closed.append(value)

        for k, (rec, cf) in enumerate(zip(recursive, closed)):
            if abs(rec - cf) > constants.SCHEDULE_REL_TOL * abs(rec):
                raise CuntzLabError(f"delta schedule disagrees at k={k}: "
                                    f"{rec} vs {cf}")
    return DeltaSchedule(recursive, closed)


def _schedule_end(exponent: int, l: int, N: int) -> Decimal:
    with decimal.localcontext(_schedule_context()):
        value = Decimal(10)**(-exponent)
        for _ in range(l):
            value = N * value.sqrt()
        return value


def required_delta0(eps: float, l: int,
                    N: int = constants.CONSTANT_N) -> Decimal:
    """Largest delta0 = 10^-j whose schedule ends with delta_l < eps.

    The value is a Decimal since it underflows floats once l grows.
    """
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")
    if l < 0:
        raise PreconditionError(f"l must be >= 0, got {l}")
    eps_dec = Decimal(repr(float(eps)))
    # log10 delta_l = -j / 2^l + log10(N) (2 - 2^(1-l)); start just below
    # the smallest j that the logarithm allows and walk up exactly.
    estimate = 2**l * (math.log10(N) * (2 - 2.0**(1 - l)) - math.log10(eps))
    exponent = max(0, int(math.floor(estimate)) - 2)
    while exponent > 0 and _schedule_end(exponent, l, N) < eps_dec:
        exponent -= 1
    while not _schedule_end(exponent, l, N) < eps_dec:
        exponent += 1
        if exponent > constants.REQUIRED_DELTA_MAX_EXPONENT:
            raise PreconditionError(
                f"no delta0 >= 1e-{constants.REQUIRED_DELTA_MAX_EXPONENT} "
                f"reaches eps={eps} in {l} steps")
    logger.debug(f"required_delta0: j={exponent} for l={l}, N={N}")
    with decimal.localcontext(_schedule_context()):
        return Decimal(10)**(-exponent)


@dataclass
class GrowthResult:
    j0: Optional[int]
    N: int
    i: int
    detail: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.j0 is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "j0": self.j0,
            "N": self.N,
            "i": self.i,
            "holds": self.holds,
            "terms": self.detail,
        }


def slow_dimension_growth_check(seq: InductiveSequence, N: int,
                                i: int) -> GrowthResult:
    """Least j0 > i with n_j(k) >= N dim(X_{j,k}) for every represented
    j >= j0 and every stage k; j0 is None when no such index exists."""
    if not 0 <= i < len(seq):
        raise PreconditionError(f"index {i} outside the sequence")
    if N < 1:
        raise PreconditionError(f"N must be positive, got {N}")

    passes = []
    detail = []
    for j, term in enumerate(seq.terms):
        ok = all(s.matrix_size >= N * s.dim for s in term.stages)
        passes.append(ok)
        detail.append({"term": j, "passes": ok})

    j0 = None
    for candidate in range(len(seq) - 1, i, -1):
        if not passes[candidate]:
            break
        j0 = candidate
    return GrowthResult(j0, N, i, detail)


def rc_sequence(seq: InductiveSequence) -> List[Fraction]:
    """rc_upper_bound of every term of the sequence."""
    return [rc_upper_bound(term) for term in seq.terms]


def single_stage(base_space: Any, matrix_size: int,
                 label: str = "") -> RshDecomposition:
    """The homogeneous algebra M_n(C(X)) as a length-0 decomposition."""
    return RshDecomposition([RshStage(base_space, matrix_size)], label)

