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
"""Functional calculus, cut-downs, ranks and well-supported approximants
for positive matrix fields.

Spectral work is done per point with `numpy.linalg.eigh`. Norms of fields
are maxima over the sample points.
"""

import logging

from typing import (
    Any,
    Callable,
    Dict,
    List,
    NamedTuple,
    Sequence,
)

import numpy as np

from cuntz_lab import constants
from cuntz_lab import space as space_ops
from cuntz_lab.datatypes.matrix_field import (
    MatrixField,
    OperatorField,
    Plateau,
    RankFunction,
    SupportData,
)
from cuntz_lab.datatypes.sampled_space import ClosedRegion, SampledSpace
from cuntz_lab.exceptions import (
    ApproximantError,
    FieldError,
    PreconditionError,
)
from cuntz_lab.scalar_kit import ScalarKit

logger = logging.getLogger(name=__name__)

# Slack allowed on "norm <= 1" preconditions.
NORM_SLACK = 1e-12


class WellSupportedApproximant(NamedTuple):
    h: MatrixField
    hah: MatrixField
    support: SupportData
    eta: float
    thresholded: MatrixField


def constant_field(space: SampledSpace, matrix: Any) -> MatrixField:
    matrix = np.asarray(matrix, dtype=complex)
    return MatrixField(space, matrix.shape[0],
                       {p: matrix
                        for p in space.point_ids})


def zero_field(space: SampledSpace, n: int) -> MatrixField:
    return constant_field(space, np.zeros((n, n)))


def identity_field(space: SampledSpace, n: int) -> MatrixField:
    return constant_field(space, np.eye(n))


def field_from_function(space: SampledSpace, n: int,
                        fn: Callable[[Sequence[Any]], Any]) -> MatrixField:
    """Builds a field from a function of the point coordinates."""
    return MatrixField(space, n,
                       {p: fn(space.coords(p))
                        for p in space.point_ids})


def _require_same_space(a: OperatorField, b: OperatorField) -> None:
    if a.space != b.space:
        raise PreconditionError(f"fields live on different spaces: "
                                f"{a.space.label} and {b.space.label}")


def _require_same_shape(a: OperatorField, b: OperatorField) -> None:
    _require_same_space(a, b)
    if a.n != b.n:
        raise PreconditionError(f"matrix sizes differ: {a.n} and {b.n}")


def _spectral_apply(matrix: np.ndarray, fn: Callable[[float], float],
                    point_id: str) -> np.ndarray:
    eigvals, eigvecs = np.linalg.eigh(matrix)
    eigvals = np.clip(eigvals, 0.0, None)
    try:
        mapped = np.array([float(fn(float(lam))) for lam in eigvals])
    except (ArithmeticError, ValueError, TypeError) as e:
        raise FieldError(f"function undefined on the spectrum at "
                         f"{point_id}: {e}")
    if not np.all(np.isfinite(mapped)):
        raise FieldError(f"function is not finite on the spectrum at "
                         f"{point_id}: {eigvals.tolist()}")
    return (eigvecs * mapped) @ eigvecs.conj().T


def apply_scalar(a: MatrixField, fn: Callable[[float], float]) -> MatrixField:
    """Pointwise spectral application of `fn`.

    Eigenvalues are clipped at 0 before `fn` sees them.
    """
    values = {p: _spectral_apply(m, fn, p) for p, m in a.items()}
    return MatrixField(a.space, a.n, values)


def cut_down(a: MatrixField, eps: float) -> MatrixField:
    """(a - eps)_+ computed pointwise."""
    if eps < 0:
        raise PreconditionError(f"cut-down needs eps >= 0, got {eps}")
    if eps == 0:
        return a
    return apply_scalar(a, lambda t: max(0.0, t - eps))


def sqrt_field(a: MatrixField) -> MatrixField:
    return apply_scalar(a, np.sqrt)


def thresholded(a: MatrixField, eta: float) -> MatrixField:
    """Keeps the spectral part of a at or above eta and drops the rest."""
    return apply_scalar(a, lambda t: t if t >= eta else 0.0)


def rank_at(a: MatrixField, point_id: str,
            tol: float = constants.RANK_TOL) -> int:
    """Number of eigenvalues of a(x) strictly above tol."""
    if tol <= 0:
        raise PreconditionError(f"rank tolerance must be positive, got {tol}")
    return int(np.count_nonzero(a.eigenvalues(point_id) > tol))


def rank_function(a: MatrixField,
                  tol: float = constants.RANK_TOL) -> RankFunction:
    ranks = {p: rank_at(a, p, tol) for p in a.space.point_ids}
    return RankFunction(a.space, tol, a.n, ranks)


def support_projection(a: MatrixField,
                       tol: float = constants.RANK_TOL) -> MatrixField:
    """Pointwise projection onto the eigenvectors above tol."""
    values = dict()
    for p, m in a.items():
        eigvals, eigvecs = np.linalg.eigh(m)
        keep = eigvecs[:, eigvals > tol]
        values[p] = keep @ keep.conj().T
    return MatrixField(a.space, a.n, values)


def is_projection_field(a: OperatorField,
                        tol: float = constants.PROJECTION_TOL) -> bool:
    for _, m in a.items():
        if np.linalg.norm(m @ m - m, 2) > tol:
            return False
        if np.linalg.norm(m - m.conj().T, 2) > tol:
            return False
    return True


def norm_distance(a: OperatorField, b: OperatorField) -> float:
    """max_x ||a(x) - b(x)||."""
    _require_same_shape(a, b)
    return max(
        float(np.linalg.norm(a.value(p) - b.value(p), 2))
        for p in a.space.point_ids)


def block_sum(a: MatrixField, b: MatrixField) -> MatrixField:
    """a + b realised block-diagonally, of size a.n + b.n."""
    _require_same_space(a, b)
    values = dict()
    for p in a.space.point_ids:
        m = np.zeros((a.n + b.n, a.n + b.n), dtype=complex)
        m[:a.n, :a.n] = a.value(p)
        m[a.n:, a.n:] = b.value(p)
        values[p] = m
    return MatrixField(a.space, a.n + b.n, values)


def conjugate(a: MatrixField, u: OperatorField) -> MatrixField:
    """Pointwise u a u*."""
    _require_same_shape(a, u)
    return MatrixField(
        a.space, a.n,
        {p: u.value(p) @ a.value(p) @ u.value(p).conj().T
         for p in a.space.point_ids})


def _require_norm_at_most_one(a: MatrixField, name: str) -> None:
    norm = a.norm_bound()
    if norm > 1.0 + NORM_SLACK:
        raise PreconditionError(f"{name} must have norm <= 1, got {norm}")


def select_eta(a: MatrixField,
               eps: float,
               min_band_fraction: float = constants.MIN_BAND_FRACTION
               ) -> float:
    """Midpoint of the widest empty spectral band inside [eps/8, eps/4].

    The band is empty across every sample point. Ties go to the band with
    the smaller eta.
    """
    low, high = eps / 8.0, eps / 4.0
    inside = set()
    for p in a.space.point_ids:
        for lam in a.eigenvalues(p):
            if low <= lam <= high:
                inside.add(float(lam))
    edges = [low] + sorted(inside) + [high]

    best_width = -1.0
    best_eta = None
    for left, right in zip(edges, edges[1:]):
        width = right - left
        if width > best_width:
            best_width = width
            best_eta = (left + right) / 2.0

    if best_eta is None or best_width < min_band_fraction * eps:
        raise ApproximantError(
            f"no empty spectral band of width >= {min_band_fraction * eps:.3e}"
            f" inside [{low:.3e}, {high:.3e}]; {len(inside)} sampled "
            f"eigenvalues fall in it. Refine eps.")
    logger.debug(f"Selected eta={best_eta:.6e} from band width "
                 f"{best_width:.3e}")
    return best_eta


def _descending_eigvecs(matrix: np.ndarray) -> np.ndarray:
    _, eigvecs = np.linalg.eigh(matrix)
    return eigvecs[:, ::-1]


def _extend_projection(base: np.ndarray, base_rank: int, target_rank: int,
                       guide: np.ndarray) -> np.ndarray:
    """Grows the projection `base` to rank `target_rank` inside its
    complement, using the directions `guide` favours most.
    """
    n = base.shape[0]
    comp_vals, comp_vecs = np.linalg.eigh(np.eye(n) - base)
    basis = comp_vecs[:, comp_vals > 0.5]
    compressed = basis.conj().T @ guide @ basis
    vecs = _descending_eigvecs(compressed)[:, :target_rank - base_rank]
    extra = basis @ vecs
    return base + extra @ extra.conj().T


def support_data(hah: MatrixField,
                 tol: float = constants.RANK_TOL) -> SupportData:
    """Nested projection fields over the closures of the rank plateaus.

    Closures are one-step adjacency dilations. At a point in several
    closures the projections form a chain: ranks up to the point's own rank
    are prefixes of its descending eigenbasis (the own rank gives the
    support), larger ranks grow the chain along the support of a
    neighbouring point of that plateau.
    """
    ranks = rank_function(hah, tol)
    space = hah.space
    plateau_points = ranks.plateaus()
    closures = {
        r: space_ops.region_complement_closure(ClosedRegion(space,
                                                            pts)).members
        for r, pts in plateau_points
    }
    projections: Dict[int, Dict[str, np.ndarray]] = {
        r: dict()
        for r, _ in plateau_points
    }
    supports = {p: support_projection_at(hah, p, tol) for p in space}

    for x in space.point_ids:
        own = ranks[x]
        vecs = _descending_eigvecs(hah.value(x))
        chain_proj = None
        chain_rank = 0
        for r, pts in plateau_points:
            if x not in closures[r]:
                continue
            if r <= own:
                top = vecs[:, :r]
                proj = top @ top.conj().T
            else:
                y = next(p for p in space.point_ids
                         if p in space.neighbours(x) and ranks[p] == r)
                base = chain_proj if chain_proj is not None else np.zeros(
                    (hah.n, hah.n), dtype=complex)
                proj = _extend_projection(base, chain_rank, r, supports[y])
            projections[r][x] = proj
            chain_proj, chain_rank = proj, r

    plateaus = [
        Plateau(r, frozenset(pts), closures[r], projections[r])
        for r, pts in plateau_points
    ]
    return SupportData(plateaus)


def support_projection_at(a: MatrixField, point_id: str,
                          tol: float = constants.RANK_TOL) -> np.ndarray:
    eigvals, eigvecs = a.eigh(point_id)
    keep = eigvecs[:, eigvals > tol]
    return keep @ keep.conj().T


def well_supported_approximant(
        a: MatrixField,
        eps: float,
        tol: float = constants.RANK_TOL,
        min_band_fraction: float = constants.MIN_BAND_FRACTION
) -> WellSupportedApproximant:
    """Builds h with ||hah - a|| < eps, ||ha - a|| < eps/2, ||ah - a|| < eps/2
    and hah well-supported.

    The spectrum is split at a uniform eta from `select_eta`. The part below
    eta is dropped to give the thresholded element, whose spectrum then lies
    in {0} u [eta, 1], and h is the ramp min(t/eta, 1) applied to it.
    """
    if not 0.0 < eps < 1.0:
        raise PreconditionError(f"eps must lie in (0, 1), got {eps}")
    _require_norm_at_most_one(a, "a")

    eta = select_eta(a, eps, min_band_fraction)
    a_thresholded = thresholded(a, eta)
    h = apply_scalar(a_thresholded, lambda t: min(t / eta, 1.0))
    hah = MatrixField(
        a.space, a.n,
        {p: h.value(p) @ a.value(p) @ h.value(p)
         for p in a.space.point_ids})
    support = support_data(hah, tol)
    logger.info(f"Approximant on {a.space.label}: eta={eta:.6e}, "
                f"{len(support.plateaus)} rank plateaus")
    return WellSupportedApproximant(h, hah, support, eta, a_thresholded)


def approximant_errors(a: MatrixField,
                       approx: WellSupportedApproximant) -> Dict[str, float]:
    """The three norm distances bounded by the approximant contract."""
    ha = {p: approx.h.value(p) @ a.value(p) for p in a.space.point_ids}
    ah = {p: a.value(p) @ approx.h.value(p) for p in a.space.point_ids}
    return {
        "hah_minus_a":
        norm_distance(approx.hah, a),
        "ha_minus_a":
        max(float(np.linalg.norm(ha[p] - a.value(p), 2)) for p in ha),
        "ah_minus_a":
        max(float(np.linalg.norm(ah[p] - a.value(p), 2)) for p in ah),
    }


def dini_curve(a: MatrixField, b: MatrixField, v: OperatorField,
               deltas: Sequence[float]) -> List[float]:
    """||a - sqrt(a) v f_delta(b) v* sqrt(a)|| for each delta.

    The values are nonincreasing along a decreasing delta list.
    """
    _require_same_shape(a, b)
    _require_same_shape(a, v)
    _require_norm_at_most_one(a, "a")
    _require_norm_at_most_one(b, "b")
    if not v.is_unitary():
        raise PreconditionError("v is not unitary at every point")
    if any(d <= 0 for d in deltas):
        raise PreconditionError("deltas must be positive")
    if any(d1 <= d2 for d1, d2 in zip(deltas, deltas[1:])):
        raise PreconditionError("deltas must be strictly decreasing")

    root_a = sqrt_field(a)
    curve = []
    for delta in deltas:
        kit = ScalarKit(min(float(delta), 1.0))
        f_b = apply_scalar(b, kit.f)
        worst = 0.0
        for p in a.space.point_ids:
            ra = root_a.value(p)
            vp = v.value(p)
            approx = ra @ vp @ f_b.value(p) @ vp.conj().T @ ra
            worst = max(worst,
                        float(np.linalg.norm(a.value(p) - approx, 2)))
        curve.append(worst)
    return curve


def find_rank_delta(a: MatrixField,
                    b: MatrixField,
                    k: int,
                    eps: float,
                    tol: float = constants.RANK_TOL,
                    max_steps: int = constants.RANK_DELTA_MAX_STEPS) -> float:
    """Largest delta in {eps * 2^-j} with
    rank((a - eps)_+(x)) + k <= rank((b - delta)_+(x)) at every point.
    """
    _require_same_space(a, b)
    if k < 0:
        raise PreconditionError(f"k must be >= 0, got {k}")
    if eps <= 0:
        raise PreconditionError(f"eps must be positive, got {eps}")

    for p in a.space.point_ids:
        if rank_at(a, p, tol) + k > rank_at(b, p, tol):
            raise PreconditionError(
                f"rank(a) + {k} > rank(b) at point {p}", witness=p)

    a_cut = cut_down(a, eps)
    needed = {p: rank_at(a_cut, p, tol) + k for p in a.space.point_ids}
    for j in range(max_steps + 1):
        delta = eps * 2.0**(-j)
        b_cut = cut_down(b, delta)
        if all(needed[p] <= rank_at(b_cut, p, tol) for p in needed):
            logger.debug(f"find_rank_delta succeeded at j={j}")
            return delta
    raise PreconditionError(f"no delta >= eps * 2^-{max_steps} found")
