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
"""Parameters of the Villadsen-type inductive limit and its stage data"""

import logging

from dataclasses import dataclass, field
from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Tuple,
)

from cuntz_lab.exceptions import ParamsError
from cuntz_lab.utils import format_rational

logger = logging.getLogger(name=__name__)


@dataclass(frozen=True)
class VilladsenParams:
    """Stage i >= 1 uses n_seq[i-1] and l_seq[i-1].

    m_i = m0 (n_1 + l_1) ... (n_i + l_i) and N_i = n0 n_1 ... n_i.
    """
    m0: int
    n0: int
    n_seq: Tuple[int, ...]
    l_seq: Tuple[int, ...]
    target_r: Fraction
    _m: List[int] = field(default_factory=list, compare=False, repr=False)
    _N: List[int] = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.m0 < 1 or self.n0 < 1:
            raise ParamsError(f"m0 and n0 must be positive, got "
                              f"{self.m0}, {self.n0}")
        if len(self.n_seq) != len(self.l_seq):
            raise ParamsError(f"n_seq and l_seq lengths differ: "
                              f"{len(self.n_seq)} vs {len(self.l_seq)}")
        if any(n < 1 for n in self.n_seq):
            raise ParamsError("every n_i must be positive")
        if any(li < 0 for li in self.l_seq):
            raise ParamsError("every l_i must be nonnegative")
        if Fraction(self.target_r) <= 0:
            raise ParamsError(f"target_r must be positive, got "
                              f"{self.target_r}")
        object.__setattr__(self, "target_r", Fraction(self.target_r))
        object.__setattr__(self, "n_seq", tuple(self.n_seq))
        object.__setattr__(self, "l_seq", tuple(self.l_seq))

        m, big_n = [self.m0], [self.n0]
        for n_i, l_i in zip(self.n_seq, self.l_seq):
            m.append(m[-1] * (n_i + l_i))
            big_n.append(big_n[-1] * n_i)
        self._m.extend(m)
        self._N.extend(big_n)

    @property
    def last_stage(self) -> int:
        return len(self.n_seq)

    def check_stage(self, i: int) -> None:
        if not 0 <= i <= self.last_stage:
            raise ParamsError(f"stage {i} outside the supplied prefix "
                              f"0..{self.last_stage}")

    def m(self, i: int) -> int:
        self.check_stage(i)
        return self._m[i]

    def N(self, i: int) -> int:
        self.check_stage(i)
        return self._N[i]

    def n_at(self, i: int) -> int:
        """n_i, with n_0 the initial cube dimension."""
        self.check_stage(i)
        return self.n0 if i == 0 else self.n_seq[i - 1]

    def l_at(self, i: int) -> int:
        self.check_stage(i)
        return 0 if i == 0 else self.l_seq[i - 1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m0": self.m0,
            "n0": self.n0,
            "n_seq": list(self.n_seq),
            "l_seq": list(self.l_seq),
            "target_r": self.target_r,
        }


@dataclass(frozen=True)
class StageInvariants:
    i: int
    m_i: int
    N_i: int
    rc_i: Fraction
    ratio_i: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            "i": self.i,
            "m_i": self.m_i,
            "N_i": self.N_i,
            "rc_i": self.rc_i,
            "ratio_i": self.ratio_i,
        }

    def csv_row(self) -> List[str]:
        return [
            str(self.i),
            str(self.m_i),
            str(self.N_i),
            format_rational(self.rc_i),
            format_rational(self.ratio_i),
        ]
