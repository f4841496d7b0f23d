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

APP_EXIT_ERROR = 1
APP_EXIT_SUCCESS = 0
# A computation finished but the certificate it produced is false.
APP_EXIT_CERTIFICATE_FALSE = 2

# Environment variables
ENV_LOGLEVEL = "CUNTZLAB_LOGLEVEL"
ENV_THREADS = "CUNTZLAB_THREADS"
ENV_CONFIG = "CUNTZLAB_CONFIG"

DEFAULT_THREADS = 1

# Numerical tolerances.
RANK_TOL = 1e-8
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10
PROJECTION_TOL = 1e-9
UNITARY_TOL = 1e-9
SCHEDULE_REL_TOL = 1e-9

# Residual below which a witness restart stops iterating.
WITNESS_EARLY_STOP = 1e-10
WITNESS_RESTARTS = 8
WITNESS_ITERS = 500

# Generated pairs declare a covering dimension in 0..MAX_DECLARED_DIM.
MAX_DECLARED_DIM = 2

# Smallest admissible width of the empty spectral band used to pick eta,
# relative to eps.
MIN_BAND_FRACTION = 1e-3

# Multiplicative constant of the delta schedule.
CONSTANT_N = 49

# Grid length used by find_rank_delta.
RANK_DELTA_MAX_STEPS = 60

# Upper bound on the 10^-j search of required_delta0.
REQUIRED_DELTA_MAX_EXPONENT = 100000

# Divisibility scan default for the Villadsen K0 check.
DEFAULT_Q_MAX = 10

# Distance below which a running ratio counts as converged.
CONVERGENCE_TOL = 1e-6

# Bound on the Morita (n, m) search. None disables the bound.
MORITA_SEARCH_BOUND = None

REPORT_FILE = "cuntzlab-report.json"
REPORT_CSV_FILE = "cuntzlab-report.csv"

# Keys of the YAML configuration file that may override tolerances.
CONFIG_OVERRIDE_KEYS = (
    "rank_tol",
    "hermitian_tol",
    "psd_tol",
    "projection_tol",
    "witness_restarts",
    "witness_iters",
    "constant_N",
    "q_max",
)
