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
"""Exact invariants of the Villadsen-type inductive limit A^(r).

Stage i is M_{m_i}(C([0,1]^{N_i})). Everything here is integer or Fraction
arithmetic; asymptotic conditions are only ever checked on the supplied
prefix of the parameter sequences.
"""

import logging

from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Tuple,
)

from cuntz_lab import constants
from cuntz_lab.datatypes.villadsen_params import (
    StageInvariants,
    VilladsenParams,
)
from cuntz_lab.exceptions import ParamsError, PreconditionError

logger = logging.getLogger(name=__name__)

PREFIX_VERIFIED = "prefix-verified"
PREFIX_FAILED = "failed"


def stage_invariants(p: VilladsenParams, i: int) -> StageInvariants:
    m_i = p.m(i)
    big_n = p.N(i)
    return StageInvariants(i=i,
                           m_i=m_i,
                           N_i=big_n,
                           rc_i=Fraction(big_n - 1, 2 * m_i),
                           ratio_i=Fraction(big_n, 2 * m_i))


def stage_table(p: VilladsenParams, stages: int) -> List[StageInvariants]:
    """Rows i = 0..stages."""
    p.check_stage(stages)
    return [stage_invariants(p, i) for i in range(stages + 1)]


def connecting_multiplicities(p: VilladsenParams, i: int,
                              j: int) -> Tuple[int, int]:
    """(k_ij, l_ij): coordinate-projection and point-evaluation eigenvalue
    counts of the connecting map from stage i to stage j."""
    if not i <= j:
        raise PreconditionError(f"need i <= j, got {i}, {j}")
    k_ij = p.N(j) // p.N(i)
    return k_ij, p.m(j) // p.m(i) - k_ij


def _growth_check(p: VilladsenParams, i_max: int) -> Dict[str, Any]:
    prefix = p.n_seq[:i_max]
    if len(prefix) < 2:
        return {
            "holds": False,
            "reason": "growth needs at least two stages of n_i",
        }
    nondecreasing = all(a <= b for a, b in zip(prefix, prefix[1:]))
    growing = prefix[-1] > prefix[0]
    return {
        "holds": nondecreasing and growing,
        "nondecreasing": nondecreasing,
        "growing": growing,
    }


def _convergence_check(p: VilladsenParams, i_max: int,
                       tol: Fraction) -> Dict[str, Any]:
    running = [stage_invariants(p, i).ratio_i for i in range(i_max + 1)]
    distances = [abs(v - p.target_r) for v in running]
    monotone = all(a >= b for a, b in zip(distances, distances[1:]))
    return {
        "holds": distances[-1] < tol,
        "running": running,
        "final_distance": distances[-1],
        "distance_nonincreasing": monotone,
    }


def k0_divisibility(p: VilladsenParams,
                    q_max: int = constants.DEFAULT_Q_MAX,
                    i_max: Optional[int] = None) -> Dict[str, Any]:
    """Least stage i with q | m_i for every q <= q_max."""
    if q_max < 1:
        raise PreconditionError(f"q_max must be positive, got {q_max}")
    if i_max is None:
        i_max = p.last_stage
    p.check_stage(i_max)
    witnesses: Dict[int, Optional[int]] = dict()
    for q in range(1, q_max + 1):
        witnesses[q] = next(
            (i for i in range(i_max + 1) if p.m(i) % q == 0), None)
    missing = [q for q, i in witnesses.items() if i is None]
    if missing:
        logger.info(f"no m_i up to stage {i_max} divisible by {missing}")
    return {
        "holds": len(missing) == 0,
        "witnesses": witnesses,
        "missing": missing,
    }


def validate_params(p: VilladsenParams,
                    i_max: int,
                    q_max: int = constants.DEFAULT_Q_MAX,
                    tol: Fraction = Fraction(1, 10**6)) -> Dict[str, Any]:
    """Conditions on (n_i), (l_i) and (m_i) checked over stages 0..i_max.

    The verdict is never stronger than "prefix-verified": growth and the
    recurrence of nonzero l_i are asymptotic properties.
    """
    p.check_stage(i_max)
    tol = Fraction(tol)
    checks = {
        "growth": _growth_check(p, i_max),
        "convergence": _convergence_check(p, i_max, tol),
        "nonzero_l": {
            "holds": any(li != 0 for li in p.l_seq[:i_max])
        },
        "divisibility": k0_divisibility(p, q_max, i_max),
    }
    failures = [name for name, check in checks.items() if not check["holds"]]
    verdict = PREFIX_VERIFIED if not failures else PREFIX_FAILED
    if verdict == PREFIX_VERIFIED:
        logger.warning(f"parameters hold on stages 0..{i_max} only; "
                       f"asymptotic conditions are not implied")
    return {
        "i_max": i_max,
        "q_max": q_max,
        "verdict": verdict,
        "failures": failures,
        "checks": checks,
    }


def _refined_product(p: VilladsenParams, i: int, j: int) -> Fraction:
    product = Fraction(1)
    for stage in range(i + 1, j + 1):
        n_s = p.n_at(stage)
        product *= Fraction(n_s + p.l_at(stage), n_s)
    return product


def chern_obstruction_holds(p: VilladsenParams, i: int, j: int, rank_a: int,
                            eta: Fraction) -> Dict[str, Any]:
    """N_j > (N_i - rank a) m_j / m_i, the rank inequality that keeps the
    trivial bundle of rank rank(a) m_j/m_i out of the image of b at stage j.

    Also evaluates the eta-refined product
    prod (n_s + l_s)/n_s * (1 - m_i eta / (2 N_i)) over s = i+1..j, which
    bounds the rearranged inequality only when rank a > (eta/2) m_i.
    Unmet preconditions are listed under "violations".
    """
    p.check_stage(i)
    p.check_stage(j)
    if not i < j:
        raise PreconditionError(f"need i < j, got {i}, {j}")
    eta = Fraction(eta)
    violations = []
    if rank_a < 1:
        violations.append(f"rank_a must be positive, got {rank_a}")
    if not 0 < eta < 1:
        violations.append(f"eta must lie in (0, 1), got {eta}")
    if rank_a > p.N(i):
        violations.append(f"rank_a {rank_a} exceeds N_i = {p.N(i)}")

    lhs = Fraction(p.N(j))
    rhs = Fraction((p.N(i) - rank_a) * p.m(j), p.m(i))
    product = _refined_product(p, i, j)
    refined = product * (1 - Fraction(p.m(i)) * eta / (2 * p.N(i)))
    refined_applicable = Fraction(rank_a) > eta / 2 * p.m(i)
    if not refined_applicable:
        violations.append(
            f"refined form needs rank_a > (eta/2) m_i = {eta / 2 * p.m(i)}")
    return {
        "holds": lhs > rhs,
        "lhs": lhs,
        "rhs": rhs,
        "product": product,
        "refined": refined,
        "refined_below_one": refined < 1,
        "refined_applicable": refined_applicable,
        "violations": violations,
    }


def rank_bound_check(p: VilladsenParams, i: int, rank_a: int,
                     eta: Fraction) -> bool:
    """rank_a / m_i > eta/2, with eta/2 = 2r (eta / 4r) at r = target_r."""
    eta = Fraction(eta)
    r = p.target_r
    chain = 2 * r * (eta / (4 * r))
    return Fraction(rank_a, p.m(i)) > eta / 2 and chain == eta / 2


def obstruction_stage(p: VilladsenParams, eta: Fraction) -> Optional[int]:
    """Least i with (floor(N_i / 2) - 1) / m_i > target_r - eta / 4."""
    eta = Fraction(eta)
    threshold = p.target_r - eta / 4
    for i in range(p.last_stage + 1):
        if Fraction(p.N(i) // 2 - 1, p.m(i)) > threshold:
            return i
    return None


def morita_rationality_check(
        r: Fraction,
        s: Fraction,
        bound: Optional[int] = constants.MORITA_SEARCH_BOUND
) -> Dict[str, Any]:
    """Least (n, m) with r/n = s/m, i.e. m/n = s/r in lowest terms."""
    r, s = Fraction(r), Fraction(s)
    if r <= 0 or s <= 0:
        raise ParamsError(f"r and s must be positive, got {r}, {s}")
    ratio = s / r
    n, m = ratio.denominator, ratio.numerator
    if bound is not None and max(n, m) > bound:
        logger.info(f"least witness ({n}, {m}) exceeds bound {bound}")
        return {"compatible": False, "witness": None}
    return {"compatible": True, "witness": (n, m)}
