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
"""Cuntz comparison of positive matrix fields.

Provides the rank-gap certificate, a numerical witness search, dimension
functions, the semigroup model V(A) u LAff(T(A))_++ and the spectral
invariant used to compare unitary orbits.
"""

import logging
import math
import multiprocessing

from dataclasses import dataclass, field
from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np
import scipy.linalg
import scipy.stats

from cuntz_lab import constants, matfield
from cuntz_lab.datatypes.cuntz_class import (
    PROJECTION,
    SOFT,
    Certificate,
    CuntzClassRepr,
    LAffFunction,
    SpectralInvariant,
    require_same_traces,
)
from cuntz_lab.datatypes.matrix_field import (
    MatrixField,
    OperatorField,
    RankFunction,
)
from cuntz_lab.datatypes.trace_measure import TraceMeasure, TraceSet
from cuntz_lab.exceptions import ComparisonError, PreconditionError
from cuntz_lab.scalar_kit import ScalarKit

logger = logging.getLogger(name=__name__)

WElement = Union[CuntzClassRepr, LAffFunction]

# Added before flooring eigenvalues into spectral bins.
BIN_SLACK = 1e-9


def dim_fn_value(a: MatrixField,
                 mu: TraceMeasure,
                 tol: float = constants.RANK_TOL) -> Fraction:
    """d_tau(a) = sum_x weight(x) * rank(a(x)) / matrix_size_at(x)."""
    if mu.space != a.space:
        raise ComparisonError(f"trace {mu.label} lives on {mu.space.label}, "
                              f"field on {a.space.label}")
    total = Fraction(0)
    for point_id, weight in mu.weights.items():
        size = mu.matrix_size_at[point_id]
        if a.n % size != 0:
            raise ComparisonError(
                f"field size {a.n} is not an amplification of the matrix "
                f"size {size} at {point_id}")
        total += weight * Fraction(matfield.rank_at(a, point_id, tol), size)
    return total


def iota(a: MatrixField,
         traces: TraceSet,
         tol: float = constants.RANK_TOL) -> LAffFunction:
    return LAffFunction({t.label: dim_fn_value(a, t, tol) for t in traces})


def rank_gap_certificate(a: MatrixField,
                         b: MatrixField,
                         dims: Mapping[str, int],
                         tol: float = constants.RANK_TOL,
                         points: Optional[Sequence[str]] = None
                         ) -> Certificate:
    """Checks rank(a(x)) + (d(x) - 1)/2 <= rank(b(x)) at every point.

    A true certificate is a sufficient condition for a <~ b. `points`
    restricts the check, in the given order.
    """
    if a.space != b.space:
        raise PreconditionError(f"fields live on different spaces: "
                                f"{a.space.label} and {b.space.label}")
    if a.n != b.n:
        raise PreconditionError(f"matrix sizes differ: {a.n} and {b.n}")
    if points is None:
        points = a.space.point_ids
    missing = [p for p in points if p not in dims]
    if missing:
        raise PreconditionError(f"no covering dimension for {missing}",
                                witness=missing[0])

    for point_id in points:
        lhs = matfield.rank_at(a, point_id, tol) + Fraction(
            dims[point_id] - 1, 2)
        if lhs > matfield.rank_at(b, point_id, tol):
            logger.debug(f"Rank gap fails at {point_id}")
            return Certificate(False, point_id, len(points))
    return Certificate(True, None, len(points))


def rank_obstruction_bound(a: MatrixField,
                           b: MatrixField,
                           tol: float = constants.RANK_TOL) -> float:
    """max_x of the (rank b(x) + 1)-th largest eigenvalue of a(x).

    No v can bring ||v b v* - a|| below this value.
    """
    worst = 0.0
    for point_id in a.space.point_ids:
        k = matfield.rank_at(b, point_id, tol)
        if k >= a.n:
            continue
        eigvals = a.eigenvalues(point_id)[::-1]
        worst = max(worst, float(eigvals[k]))
    return worst


@dataclass
class WitnessResult:
    residual: float
    v: OperatorField
    restart_per_point: Dict[str, int] = field(default_factory=dict)
    obstruction_bound: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "residual": self.residual,
            "restart_per_point": dict(self.restart_per_point),
            "obstruction_bound": self.obstruction_bound,
        }


def _pinv_sqrt(b: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """Pseudo-inverse of sqrt(b) and the support projection of b."""
    eigvals, eigvecs = np.linalg.eigh(b)
    keep = eigvals > tol
    vecs = eigvecs[:, keep]
    inv_roots = 1.0 / np.sqrt(eigvals[keep])
    return (vecs * inv_roots) @ vecs.conj().T, vecs @ vecs.conj().T


def _sqrt_psd(m: np.ndarray) -> np.ndarray:
    eigvals, eigvecs = np.linalg.eigh(m)
    return (eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))) @ eigvecs.conj().T


def _point_residual(a: np.ndarray, b: np.ndarray, v: np.ndarray) -> float:
    return float(np.linalg.norm(v @ b @ v.conj().T - a, 2))


def _initial_unitary(restart: int, a: np.ndarray, b: np.ndarray,
                     rng: np.random.Generator, tol: float) -> np.ndarray:
    """Restart 0: identity. 1: spectral alignment of b's eigenbasis onto
    a's. 2: polar factor of sqrt(a) sqrt(f_delta(b)). 3+: Haar random."""
    n = a.shape[0]
    if restart == 0:
        return np.eye(n, dtype=complex)
    if restart == 1:
        _, vecs_a = np.linalg.eigh(a)
        _, vecs_b = np.linalg.eigh(b)
        return vecs_a[:, ::-1] @ vecs_b[:, ::-1].conj().T
    if restart == 2:
        eigvals = np.linalg.eigvalsh(b)
        positive = eigvals[eigvals > tol]
        delta = min(1.0, float(positive.min())) if positive.size else 1.0
        kit = ScalarKit(delta)
        vals, vecs = np.linalg.eigh(b)
        f_b = (vecs * np.asarray(kit.f(np.clip(vals, 0.0, 1.0)))
               ) @ vecs.conj().T
        unitary, _ = scipy.linalg.polar(_sqrt_psd(a) @ _sqrt_psd(f_b))
        return unitary
    if n == 1:
        return np.exp(2j * np.pi * rng.uniform()) * np.eye(1)
    return scipy.stats.unitary_group.rvs(n, random_state=rng)


def _search_point(a: np.ndarray, b: np.ndarray, restart: int, iters: int,
                  rng: np.random.Generator,
                  tol: float) -> Tuple[float, np.ndarray]:
    """Alternating updates of v = sqrt(a) W c+ with c = sqrt(b).

    With that form v b v* = sqrt(a) W P W* sqrt(a) for the support
    projection P of b, so only W is searched. Each step is the Procrustes
    fit of W to a W P via the polar decomposition.
    """
    root_a = _sqrt_psd(a)
    c_plus, support = _pinv_sqrt(b, tol)
    w = _initial_unitary(restart, a, b, rng, tol)

    best_v = root_a @ w @ c_plus
    best = _point_residual(a, b, best_v)
    for _ in range(iters):
        if best < constants.WITNESS_EARLY_STOP:
            break
        target = a @ w @ support
        if np.linalg.norm(target) < 1e-14:
            break
        w, _ = scipy.linalg.polar(target)
        v = root_a @ w @ c_plus
        residual = _point_residual(a, b, v)
        if residual < best:
            best, best_v = residual, v
    return best, best_v


def _run_restart(a_values: Dict[str, np.ndarray],
                 b_values: Dict[str, np.ndarray],
                 order: List[str],
                 restart: int,
                 iters: int,
                 seed: int,
                 tol: float,
                 skip: frozenset = frozenset()
                 ) -> Dict[str, Tuple[float, np.ndarray]]:
    rng = np.random.default_rng([seed, restart])
    results = dict()
    for point_id in order:
        # The generator is advanced for skipped points too, so the draws of
        # a point never depend on which other points were skipped.
        point_rng = np.random.default_rng(rng.integers(0, 2**63))
        if point_id in skip:
            continue
        results[point_id] = _search_point(a_values[point_id],
                                          b_values[point_id], restart, iters,
                                          point_rng, tol)
    return results


def _restart_job(args: Tuple[Any, ...], return_dict: Any,
                 semaphore: Any) -> None:
    with semaphore:
        restart = args[3]
        return_dict[restart] = _run_restart(*args)


def _pick(candidates: List[Tuple[float, int]]) -> Tuple[float, int]:
    """First restart below the early-stop residual, else the
    lexicographic minimum of (residual, restart)."""
    for residual, restart in sorted(candidates, key=lambda c: c[1]):
        if residual < constants.WITNESS_EARLY_STOP:
            return residual, restart
    return min(candidates)


def witness_search(a: MatrixField,
                   b: MatrixField,
                   restarts: int = constants.WITNESS_RESTARTS,
                   iters: int = constants.WITNESS_ITERS,
                   seed: int = 0,
                   tol: float = constants.RANK_TOL,
                   threads: int = 1) -> WitnessResult:
    """Searches a field v minimising max_x ||v(x) b(x) v(x)* - a(x)||.

    Points are searched independently. For each point the restart kept is
    the first reaching the early-stop residual, otherwise the lexicographic
    minimum of (residual, restart index); running restarts in parallel
    gives the same answer.
    """
    if a.space != b.space or a.n != b.n:
        raise PreconditionError("a and b must share space and matrix size")
    if restarts < 1 or iters < 0:
        raise PreconditionError("need restarts >= 1 and iters >= 0")
    a_zero = all(matfield.rank_at(a, p, tol) == 0 for p in a.space)
    b_zero = all(matfield.rank_at(b, p, tol) == 0 for p in b.space)
    if b_zero and not a_zero:
        raise PreconditionError("b vanishes identically but a does not")

    order = list(a.space.point_ids)
    a_values = {p: np.array(a.value(p)) for p in order}
    b_values = {p: np.array(b.value(p)) for p in order}

    per_restart: Dict[int, Dict[str, Tuple[float, np.ndarray]]] = dict()
    if threads > 1 and restarts > 1:
        logger.info(f"Running {restarts} witness restarts on "
                    f"{threads} workers")
        semaphore = multiprocessing.Semaphore(threads)
        with multiprocessing.Manager() as manager:
            return_dict = manager.dict()
            jobs = []
            for restart in range(restarts):
                args = (a_values, b_values, order, restart, iters, seed, tol)
                p = multiprocessing.Process(
                    target=_restart_job, args=(args, return_dict, semaphore))
                jobs.append(p)
                p.start()
            for proc in jobs:
                proc.join()
            per_restart = {r: return_dict[r] for r in range(restarts)}
    else:
        solved: set = set()
        for restart in range(restarts):
            per_restart[restart] = _run_restart(a_values, b_values, order,
                                                restart, iters, seed, tol,
                                                frozenset(solved))
            for point_id, (residual, _) in per_restart[restart].items():
                if residual < constants.WITNESS_EARLY_STOP:
                    solved.add(point_id)
            if len(solved) == len(order):
                break

    v_values = dict()
    chosen = dict()
    residual = 0.0
    for point_id in order:
        candidates = [(res[point_id][0], r)
                      for r, res in sorted(per_restart.items())
                      if point_id in res]
        point_residual, restart = _pick(candidates)
        chosen[point_id] = restart
        v_values[point_id] = per_restart[restart][point_id][1]
        residual = max(residual, point_residual)

    bound = rank_obstruction_bound(a, b, tol)
    logger.info(f"Witness search residual {residual:.3e} "
                f"(rank obstruction {bound:.3e})")
    return WitnessResult(residual, OperatorField(a.space, a.n, v_values),
                         chosen, bound)


def classify_field(a: MatrixField,
                   traces: TraceSet,
                   tol: float = constants.RANK_TOL,
                   label: str = "") -> CuntzClassRepr:
    """Projection kind iff the rank is constant across every adjacency
    edge."""
    ranks = matfield.rank_function(a, tol)
    locally_constant = all(ranks[x] == ranks[y]
                           for x, y in a.space.adjacency_pairs())
    kind = PROJECTION if locally_constant else SOFT
    return CuntzClassRepr(kind, ranks, iota(a, traces, tol), label)


def _as_laff(u: WElement) -> LAffFunction:
    if isinstance(u, CuntzClassRepr):
        return u.iota
    return u


def _traces_of(u: WElement) -> frozenset:
    return _as_laff(u).trace_ids


def w_add(u: WElement, v: WElement) -> WElement:
    """Addition in W(A) = V(A) u LAff(T(A))_++ with x +_W f = iota(x) + f."""
    require_same_traces(_traces_of(u), _traces_of(v))
    if (isinstance(u, CuntzClassRepr) and isinstance(v, CuntzClassRepr)
            and u.is_projection and v.is_projection):
        if u.rank_fn.space != v.rank_fn.space:
            raise ComparisonError("projection classes on different spaces")
        space = u.rank_fn.space
        ranks = {p: u.rank_fn[p] + v.rank_fn[p] for p in space.point_ids}
        rank_fn = RankFunction(space, u.rank_fn.tol,
                               u.rank_fn.n + v.rank_fn.n, ranks)
        return CuntzClassRepr(PROJECTION, rank_fn, u.iota + v.iota,
                              f"({u.label}+{v.label})")
    total = _as_laff(u) + _as_laff(v)
    if not total.is_strictly_positive():
        logger.warning("w_add result is not strictly positive")
    return total


def _is_projection(u: WElement) -> bool:
    return isinstance(u, CuntzClassRepr) and u.is_projection


def w_leq(u: WElement, v: WElement) -> bool:
    """The order of the semigroup model.

    Projection vs projection compares ranks pointwise. x <=_W f needs
    iota(x) < f strictly at every trace, f <=_W x needs f <= iota(x), and
    soft elements compare pointwise.
    """
    require_same_traces(_traces_of(u), _traces_of(v))
    if _is_projection(u) and _is_projection(v):
        assert isinstance(u, CuntzClassRepr) and isinstance(v, CuntzClassRepr)
        space = u.rank_fn.space
        return all(u.rank_fn[p] <= v.rank_fn[p] for p in space.point_ids)
    left, right = _as_laff(u), _as_laff(v)
    if _is_projection(u):
        return all(left[t] < right[t] for t in left.values)
    return all(left[t] <= right[t] for t in left.values)


@dataclass
class EmbeddingReport:
    checked: int = 0
    certified: int = 0
    violations: List[int] = field(default_factory=list)
    not_applicable: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checked": self.checked,
            "certified": self.certified,
            "violations": list(self.violations),
            "not_applicable": list(self.not_applicable),
        }


def tied_trace(u: WElement, v: WElement) -> Optional[str]:
    """A trace where projection u and soft v meet, with u <= v elsewhere.

    Rule (i) needs iota(u) < v strictly, so such a pair lies outside what
    the model can certify even when u <~ v.
    """
    if not _is_projection(u) or _is_projection(v):
        return None
    left, right = _as_laff(u), _as_laff(v)
    if any(left[t] > right[t] for t in left.values):
        return None
    return next((t for t in sorted(left.values) if left[t] == right[t]),
                None)


def order_embedding_check(instances: Sequence[Tuple[MatrixField,
                                                    MatrixField]],
                          traces: TraceSet,
                          dims: Mapping[str, int],
                          tol: float = constants.RANK_TOL) -> EmbeddingReport:
    """For every certified pair, the images in W(A) must compare.

    With d(x) <= 1 the certificate allows rank a(x) == rank b(x). A
    projection a then ties a soft b at the evaluation trace of x; such
    pairs are listed as not applicable instead of as violations.
    """
    report = EmbeddingReport()
    for idx, (a, b) in enumerate(instances):
        report.checked += 1
        if not rank_gap_certificate(a, b, dims, tol).holds:
            continue
        report.certified += 1
        class_a = classify_field(a, traces, tol, f"a{idx}")
        class_b = classify_field(b, traces, tol, f"b{idx}")
        if w_leq(class_a, class_b):
            continue
        tie = tied_trace(class_a, class_b)
        if tie is not None:
            logger.info(f"Instance {idx} not applicable: projection image "
                        f"equals the soft image at trace {tie}")
            report.not_applicable.append(idx)
            continue
        logger.warning(f"Order embedding violated by instance {idx}")
        report.violations.append(idx)
    return report


def strict_comparison_gap(a: MatrixField,
                          b: MatrixField,
                          traces: TraceSet,
                          tol: float = constants.RANK_TOL) -> Fraction:
    """min over traces of d_tau(b) - d_tau(a)."""
    if len(traces) == 0:
        raise ComparisonError("no traces registered")
    return min(
        dim_fn_value(b, t, tol) - dim_fn_value(a, t, tol) for t in traces)


def _bin_of(eigenvalue: float, bins: int) -> int:
    return max(0, math.floor(eigenvalue * bins + BIN_SLACK))


def ell_invariant(a: MatrixField, mus: Sequence[TraceMeasure],
                  bins: int) -> SpectralInvariant:
    """Binned spectrum and, per trace, the trace-weighted eigenvalue
    histogram. Bin k collects eigenvalues in [k/bins, (k+1)/bins)."""
    if bins < 1:
        raise PreconditionError(f"bins must be >= 1, got {bins}")
    point_bins = dict()
    spectrum = set()
    for point_id in a.space.point_ids:
        counts: Dict[int, int] = dict()
        for lam in a.eigenvalues(point_id):
            k = _bin_of(float(lam), bins)
            counts[k] = counts.get(k, 0) + 1
            spectrum.add(k)
        point_bins[point_id] = counts

    distributions = dict()
    for mu in mus:
        if mu.space != a.space:
            raise ComparisonError(f"trace {mu.label} is on another space")
        dist: Dict[int, Fraction] = dict()
        for point_id, weight in mu.weights.items():
            for k, count in point_bins[point_id].items():
                dist[k] = dist.get(k, Fraction(0)) + weight * Fraction(
                    count, a.n)
        distributions[mu.label] = dist
    return SpectralInvariant(bins, tuple(sorted(spectrum)), distributions)


def au_candidates(a: MatrixField, b: MatrixField,
                  mus: Sequence[TraceMeasure], bins: int) -> bool:
    """Whether a and b have bin-identical invariants."""
    return ell_invariant(a, mus, bins) == ell_invariant(b, mus, bins)
