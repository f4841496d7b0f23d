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
"""Scalar function families used to build comparison witnesses.

All functions accept a float or a numpy array of values in [0, 1] and
return the same shape. `g` and `g_s` are bounded by 1/delta rather than 1;
the other four map [0, 1] into [0, 1].
"""

import logging

from dataclasses import dataclass
from typing import (
    Any,
    Callable,
    Dict,
    Tuple,
    Union,
)

import numpy as np

from cuntz_lab.exceptions import PreconditionError

logger = logging.getLogger(name=__name__)

ArrayLike = Union[float, np.ndarray]

KIT_FUNCTIONS = ("f", "g", "h", "g_s", "r", "w")


def _as_output(result: np.ndarray, like: Any) -> ArrayLike:
    if np.ndim(like) == 0:
        return float(result)
    return result


@dataclass(frozen=True)
class ScalarKit:
    delta: float
    s: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 < self.delta <= 1.0:
            raise PreconditionError(f"delta must lie in (0, 1], "
                                    f"got {self.delta}")
        if not 0.0 <= self.s <= 1.0:
            raise PreconditionError(f"s must lie in [0, 1], got {self.s}")

    def f(self, t: ArrayLike) -> ArrayLike:
        """0 on [0, delta/2], linear up to 1 at delta, then 1."""
        arr = np.asarray(t, dtype=float)
        out = np.clip((2.0 * arr - self.delta) / self.delta, 0.0, 1.0)
        return _as_output(out, t)

    def g(self, t: ArrayLike) -> ArrayLike:
        """f(t)/t above delta/2, 0 below. t*g(t) = f(t)."""
        arr = np.asarray(t, dtype=float)
        above = arr > self.delta / 2.0
        safe = np.where(above, arr, 1.0)
        out = np.where(above, np.asarray(self.f(arr)) / safe, 0.0)
        return _as_output(out, t)

    def h1(self, t: ArrayLike) -> ArrayLike:
        arr = np.asarray(t, dtype=float)
        return _as_output(np.minimum(2.0 * arr / self.delta, 1.0), t)

    def h(self, t: ArrayLike) -> ArrayLike:
        """Straight-line homotopy from the identity (s=0) to h1 (s=1)."""
        arr = np.asarray(t, dtype=float)
        out = (1.0 - self.s) * arr + self.s * np.asarray(self.h1(arr))
        return _as_output(out, t)

    def g_s(self, t: ArrayLike) -> ArrayLike:
        """f(t)/h_s(t) above delta/2, 0 below. h_s*g_s = f."""
        arr = np.asarray(t, dtype=float)
        above = arr > self.delta / 2.0
        hs = np.asarray(self.h(arr))
        safe = np.where(above, hs, 1.0)
        out = np.where(above, np.asarray(self.f(arr)) / safe, 0.0)
        return _as_output(out, t)

    def r(self, t: ArrayLike) -> ArrayLike:
        arr = np.asarray(t, dtype=float)
        out = np.maximum(self.s, np.sqrt(np.asarray(self.h1(arr))))
        return _as_output(out, t)

    def w(self, t: ArrayLike) -> ArrayLike:
        arr = np.asarray(t, dtype=float)
        # g_{delta,1} = f / h_1 and h_1 = 1 wherever f > 0.
        g_one = ScalarKit(self.delta, 1.0).g_s(arr)
        out = np.maximum(self.s, np.sqrt(np.asarray(g_one)))
        return _as_output(out, t)

    def function(self, which: str) -> Callable[[ArrayLike], ArrayLike]:
        if which not in KIT_FUNCTIONS:
            raise PreconditionError(f"unknown kit function {which!r}, "
                                    f"expected one of {KIT_FUNCTIONS}")
        return getattr(self, which)

    def range_bound(self, which: str) -> Tuple[float, float]:
        """Documented range of each function on [0, 1]."""
        self.function(which)
        if which in ("g", "g_s"):
            return (0.0, 1.0 / self.delta)
        return (0.0, 1.0)


def scalar_kit_eval(kit: ScalarKit, which: str, t: ArrayLike) -> ArrayLike:
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise PreconditionError("kit functions are evaluated on [0, 1]")
    return kit.function(which)(t)


def identity_residuals(deltas: np.ndarray, ss: np.ndarray,
                       ts: np.ndarray) -> Dict[str, float]:
    """Worst violations of the kit identities over a (t, delta, s) grid.

    Returns the max of |t g - f|, |h_s g_s - f|, (f - r w)+ and (r w - 1)+.
    """
    worst = {
        "t_g_minus_f": 0.0,
        "h_g_minus_f": 0.0,
        "f_above_rw": 0.0,
        "rw_above_one": 0.0,
    }
    for delta in deltas:
        base = ScalarKit(float(delta))
        f = np.asarray(base.f(ts))
        worst["t_g_minus_f"] = max(
            worst["t_g_minus_f"],
            float(np.max(np.abs(ts * np.asarray(base.g(ts)) - f))))
        for s in ss:
            kit = ScalarKit(float(delta), float(s))
            hg = np.asarray(kit.h(ts)) * np.asarray(kit.g_s(ts))
            rw = np.asarray(kit.r(ts)) * np.asarray(kit.w(ts))
            worst["h_g_minus_f"] = max(worst["h_g_minus_f"],
                                       float(np.max(np.abs(hg - f))))
            worst["f_above_rw"] = max(worst["f_above_rw"],
                                      float(np.max(f - rw)))
            worst["rw_above_one"] = max(worst["rw_above_one"],
                                        float(np.max(rw - 1.0)))
    return worst
