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
"""Maps between simplices of probability measures on cubes.

A cube [0,1]^{q d} is viewed as ([0,1]^d)^q; block b holds coordinates
b*d .. (b+1)*d - 1 (0-based). Averages of block marginals are mixtures.
"""

import logging

from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Sequence,
)

from cuntz_lab.datatypes.marginal_measure import (
    MarginalMeasure,
    total_variation,
)
from cuntz_lab.exceptions import MeasureError, PreconditionError

logger = logging.getLogger(name=__name__)

GAMMA = "gamma"
DELTA = "delta"


def _block(start: int, size: int) -> List[int]:
    return list(range(start, start + size))


def _average(measures: Sequence[MarginalMeasure]) -> MarginalMeasure:
    weight = Fraction(1, len(measures))
    return MarginalMeasure.mixture([(weight, m) for m in measures])


def pushforward(mu: MarginalMeasure,
                n: int,
                l: int,
                atoms: Sequence[Sequence[Any]] = (),
                exact: bool = True) -> MarginalMeasure:
    """Image of mu under the map induced on traces by one connecting map.

    mu lives on ([0,1]^d)^n. With exact=True the result is
    n/(n+l) * (1/n) sum_b mu_b + l/(n+l) * lambda, lambda the uniform
    combination of the point masses `atoms` in [0,1]^d. With exact=False the
    atom part is dropped and the block average alone is returned.
    """
    if n < 1 or l < 0:
        raise PreconditionError(f"need n >= 1 and l >= 0, got {n}, {l}")
    if mu.dim % n != 0:
        raise MeasureError(f"dimension {mu.dim} is not a multiple of {n}")
    d = mu.dim // n
    blocks = _average([mu.marginal(_block(b * d, d)) for b in range(n)])
    if not exact or l == 0:
        return blocks
    if len(atoms) == 0:
        raise PreconditionError("point masses are required when l > 0")
    lam = _average([MarginalMeasure.point_mass(a) for a in atoms])
    if lam.dim != d:
        raise MeasureError(f"atoms must lie in dimension {d}")
    return MarginalMeasure.mixture([(Fraction(n, n + l), blocks),
                                    (Fraction(l, n + l), lam)])


def pushforward_gap(mu: MarginalMeasure, n: int, l: int,
                    atoms: Sequence[Sequence[Any]]) -> Fraction:
    """Total variation between the exact and the simplified pushforward."""
    return total_variation(pushforward(mu, n, l, atoms, exact=True),
                           pushforward(mu, n, l, atoms, exact=False))


def _check_ordering(N1: int, M1: int, N2: int) -> None:
    if not 1 <= N1 <= M1 <= N2:
        raise PreconditionError(
            f"need 1 <= N1 <= M1 <= N2, got {N1}, {M1}, {N2}")


def _contained_blocks(N1: int, M1: int, N2: int) -> Dict[int, List[int]]:
    """k -> the t with D_t inside B_k, both 1-based.

    D_t = {(t-1)N1+1, .., tN1} for t <= N2/N1 and
    B_k = {(k-1)M1+1, .., kM1} for k <= floor(N2/M1).
    """
    contained: Dict[int, List[int]] = dict()
    for k in range(1, N2 // M1 + 1):
        lo, hi = (k - 1) * M1 + 1, k * M1
        contained[k] = [
            t for t in range(1, N2 // N1 + 1)
            if (t - 1) * N1 + 1 >= lo and t * N1 <= hi
        ]
    return contained


def intertwine_defect(N1: int, M1: int, N2: int) -> Dict[str, Any]:
    """L = #{t : D_t inside some B_k} and the mass bound 2(N2 - N1 L)/N2."""
    _check_ordering(N1, M1, N2)
    L = sum(len(ts) for ts in _contained_blocks(N1, M1, N2).values())
    bound = Fraction(2 * (N2 - N1 * L), N2)
    return {"L": L, "bound": bound}


def gamma_1(mu: MarginalMeasure, N1: int, M1: int) -> MarginalMeasure:
    """[0,1]^M1 -> [0,1]^N1: average of the first floor(M1/N1) N1-blocks."""
    if mu.dim != M1:
        raise MeasureError(f"gamma expects dimension {M1}, got {mu.dim}")
    count = M1 // N1
    return _average(
        [mu.marginal(_block(b * N1, N1)) for b in range(count)])


def delta_1(mu: MarginalMeasure, N1: int, M1: int,
            N2: int) -> MarginalMeasure:
    """[0,1]^N2 -> [0,1]^M1: average over k of sigma_k^*(mu_{B_k}).

    sigma_k rotates B_k so that its first coordinate lying in a D_t inside
    B_k comes first; B_k is left alone when it contains no D_t.
    """
    if mu.dim != N2:
        raise MeasureError(f"delta expects dimension {N2}, got {mu.dim}")
    parts = []
    for k, ts in _contained_blocks(N1, M1, N2).items():
        start = (k - 1) * M1
        shift = (ts[0] - 1) * N1 - start if ts else 0
        order = [start + (pos + shift) % M1 for pos in range(M1)]
        parts.append(mu.marginal(order))
    return _average(parts)


def intertwine_apply(mu: MarginalMeasure, direction: str, N1: int, M1: int,
                     N2: int) -> MarginalMeasure:
    _check_ordering(N1, M1, N2)
    if direction == GAMMA:
        return gamma_1(mu, N1, M1)
    if direction == DELTA:
        return delta_1(mu, N1, M1, N2)
    raise PreconditionError(f"unknown direction {direction!r}")


def phi_sharp(mu: MarginalMeasure, N1: int, N2: int) -> MarginalMeasure:
    """Simplified [0,1]^N2 -> [0,1]^N1 pushforward, N1 | N2."""
    if N2 % N1 != 0:
        raise PreconditionError(f"N1 = {N1} does not divide N2 = {N2}")
    if mu.dim != N2:
        raise MeasureError(f"phi expects dimension {N2}, got {mu.dim}")
    return pushforward(mu, N2 // N1, 0, exact=False)


def composed_defect(mu: MarginalMeasure, N1: int, M1: int,
                    N2: int) -> Dict[str, Any]:
    """Total variation of (gamma_1 o delta_1)(mu) - phi_sharp(mu) next to
    the block-counting bound."""
    report = intertwine_defect(N1, M1, N2)
    around = gamma_1(delta_1(mu, N1, M1, N2), N1, M1)
    direct = phi_sharp(mu, N1, N2)
    defect = total_variation(around, direct)
    report["defect"] = defect
    report["within_bound"] = defect <= report["bound"]
    if not report["within_bound"]:
        logger.warning(f"defect {defect} exceeds bound {report['bound']} "
                       f"for N1={N1}, M1={M1}, N2={N2}")
    return report
