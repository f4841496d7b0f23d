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
"""Reads and validates the input files of every command."""

import logging

from fractions import Fraction
from typing import (
    Any,
    Dict,
    List,
    Mapping,
    Optional,
)

import jsonschema
import numpy as np

from cuntz_lab import constants, schemas, utils
from cuntz_lab.datatypes.marginal_measure import (
    MarginalMeasure,
    ProductComponent,
    make_marginal,
)
from cuntz_lab.datatypes.matrix_field import MatrixField
from cuntz_lab.datatypes.rsh_decomposition import (
    ConnectingPattern,
    InductiveSequence,
    RshDecomposition,
    RshStage,
)
from cuntz_lab.datatypes.sampled_space import ClosedRegion, SampledSpace
from cuntz_lab.datatypes.trace_measure import TraceMeasure, TraceSet
from cuntz_lab.datatypes.villadsen_params import VilladsenParams
from cuntz_lab.exceptions import CuntzLabError, DataLoaderError

logger = logging.getLogger(name=__name__)


def validate(instance: Any, schema_name: str, location: str = "") -> None:
    """Raises DataLoaderError naming the first offending field."""
    validator = jsonschema.Draft7Validator(schemas.ALL_SCHEMAS[schema_name])
    try:
        errors = sorted(validator.iter_errors(instance),
                        key=lambda e: [str(p) for p in e.absolute_path])
    except RecursionError:
        raise DataLoaderError("document nests too deeply", location)
    if not errors:
        return
    error = errors[0]
    path = "/".join(str(p) for p in error.absolute_path) or "<root>"
    raise DataLoaderError(f"field {path}: {error.message}", location)


def _read(filename: str, schema_name: str) -> Any:
    content = utils.data_file_read_yaml(filename)
    validate(content, schema_name, filename)
    return content


def _wrap(location: str, fn: Any, *args: Any) -> Any:
    """Re-raises domain validation errors with the file location."""
    try:
        return fn(*args)
    except DataLoaderError:
        raise
    except CuntzLabError as e:
        raise DataLoaderError(str(e), location)


def space_from_dict(content: Mapping[str, Any],
                    location: str = "") -> SampledSpace:
    validate(content, "space", location)
    points = [(p["id"], [
        utils.parse_rational(c, f"{location} point {p['id']}")
        for c in p.get("coords", [])
    ]) for p in content["points"]]
    adjacency = [(x, y) for x, y in content.get("adjacency", [])]
    return _wrap(location, SampledSpace, content["label"], points, adjacency,
                 content["covering_dim"])


def load_space(filename: str) -> SampledSpace:
    return space_from_dict(_read(filename, "space"), filename)


def _matrix(rows: List[List[Any]], location: str) -> np.ndarray:
    try:
        return np.array([[
            complex(e[0], e[1]) if isinstance(e, list) else complex(e)
            for e in row
        ] for row in rows],
                        dtype=complex)
    except OverflowError:
        raise DataLoaderError("matrix entry out of range", location)


def field_values(content: Mapping[str, Any],
                 location: str = "") -> Dict[str, np.ndarray]:
    validate(content, "field", location)
    n = content["n"]
    values = dict()
    for point_id, rows in content["values"].items():
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DataLoaderError(f"field values/{point_id}: expected an "
                                  f"{n}x{n} matrix", location)
        values[str(point_id)] = _matrix(rows, f"{location} values/{point_id}")
    return values


def field_from_dict(content: Mapping[str, Any],
                    space: SampledSpace,
                    location: str = "",
                    hermitian_tol: float = constants.HERMITIAN_TOL,
                    psd_tol: float = constants.PSD_TOL) -> MatrixField:
    values = _values_on(content, space, location)
    return _wrap(location, MatrixField, space, content["n"], values,
                 hermitian_tol, psd_tol)


def _values_on(content: Mapping[str, Any], space: SampledSpace,
               location: str) -> Dict[str, np.ndarray]:
    values = field_values(content, location)
    label = content.get("space_label")
    if label is not None and label != space.label:
        raise DataLoaderError(
            f"field is on {label!r}, expected {space.label!r}", location)
    return values


def load_field(filename: str,
               space: SampledSpace,
               hermitian_tol: float = constants.HERMITIAN_TOL,
               psd_tol: float = constants.PSD_TOL) -> MatrixField:
    return field_from_dict(_read(filename, "field"), space, filename,
                           hermitian_tol, psd_tol)


def synthesize_space(filenames: List[str]) -> SampledSpace:
    """A space made of the point ids of the given field files.

    It has no adjacency and covering dimension 0; it is enough for
    pointwise comparison.
    """
    point_ids: List[str] = []
    label: Optional[str] = None
    for filename in filenames:
        content = _read(filename, "field")
        label = label or content.get("space_label")
        for point_id in content["values"]:
            if str(point_id) not in point_ids:
                point_ids.append(str(point_id))
    logger.info(f"Synthesised space with {len(point_ids)} points")
    return SampledSpace(label or "synthesised", [(p, ()) for p in point_ids],
                        [], 0)


def dims_from_dict(content: Any,
                   space: SampledSpace,
                   location: str = "") -> Dict[str, int]:
    validate(content, "dims", location)
    if isinstance(content, int):
        return {p: content for p in space.point_ids}
    missing = [p for p in space.point_ids if p not in content]
    if missing:
        raise DataLoaderError(f"no dimension for points {missing}", location)
    return {p: int(content[p]) for p in space.point_ids}


def load_dims(filename: str, space: SampledSpace) -> Dict[str, int]:
    return dims_from_dict(_read(filename, "dims"), space, filename)


def traces_from_dict(content: Mapping[str, Any],
                     space: SampledSpace,
                     default_size: int,
                     location: str = "") -> TraceSet:
    validate(content, "traces", location)
    traces = []
    for idx, entry in enumerate(content["traces"]):
        where = f"{location} traces/{idx}"
        weights = {
            str(p): utils.parse_rational(w, where)
            for p, w in entry["weights"].items()
        }
        size = entry.get("matrix_size", default_size)
        if isinstance(size, int):
            sizes = {p: size for p in weights}
        else:
            sizes = {str(p): int(s) for p, s in size.items()}
        traces.append(
            _wrap(where, TraceMeasure, entry["label"], space, weights, sizes))
    return _wrap(location, TraceSet, traces)


def load_traces(filename: str, space: SampledSpace,
                default_size: int) -> TraceSet:
    return traces_from_dict(_read(filename, "traces"), space, default_size,
                            filename)


def decomposition_from_dict(content: Mapping[str, Any],
                            location: str = "") -> RshDecomposition:
    validate(content, "decomposition", location)
    stages = []
    for k, entry in enumerate(content["stages"]):
        where = f"{location} stages/{k}"
        space = space_from_dict(entry["space"], where)
        boundary = _wrap(where, ClosedRegion, space, entry.get("boundary", []))
        clutch = {
            c["point"]: [(t[0], t[1]) for t in c["targets"]]
            for c in entry.get("clutch", [])
        }
        stages.append(
            _wrap(where, RshStage, space, entry["matrix_size"], boundary,
                  clutch))
    return _wrap(location, RshDecomposition, stages, content.get("label", ""))


def load_decomposition(filename: str) -> RshDecomposition:
    return decomposition_from_dict(_read(filename, "decomposition"), filename)


def sequence_from_dict(content: Mapping[str, Any],
                       location: str = "") -> InductiveSequence:
    validate(content, "sequence", location)
    terms = [
        decomposition_from_dict(t, f"{location} terms/{j}")
        for j, t in enumerate(content["terms"])
    ]
    maps = [[
        ConnectingPattern(p["target_stage"],
                          tuple((s[0], s[1]) for s in p["sources"]))
        for p in patterns
    ] for patterns in content["maps"]]
    return _wrap(location, InductiveSequence, terms, maps,
                 content.get("label", ""))


def load_sequence(filename: str) -> InductiveSequence:
    return sequence_from_dict(_read(filename, "sequence"), filename)


def params_from_dict(content: Mapping[str, Any],
                     location: str = "") -> VilladsenParams:
    validate(content, "params", location)
    return _wrap(location, VilladsenParams, content["m0"], content["n0"],
                 tuple(content["n_seq"]), tuple(content["l_seq"]),
                 utils.parse_rational(content["target_r"], location))


def load_params(filename: str) -> VilladsenParams:
    return params_from_dict(_read(filename, "params"), filename)


def measure_from_dict(content: Mapping[str, Any],
                      location: str = "") -> MarginalMeasure:
    validate(content, "measure", location)

    def rational(value: Any) -> Fraction:
        return utils.parse_rational(value, location)

    def build() -> MarginalMeasure:
        components = [
            ProductComponent(
                rational(c["weight"]),
                tuple(
                    make_marginal({rational(v): rational(p)
                                   for v, p in m}) for m in c["marginals"]))
            for c in content.get("components", [])
        ]
        atoms = [(rational(a["weight"]), tuple(rational(v)
                                               for v in a["point"]))
                 for a in content.get("atoms", [])]
        measure = MarginalMeasure(content["dim"], components, atoms)
        if not measure.is_probability():
            raise DataLoaderError(
                f"total mass is {measure.total_mass}, expected 1", location)
        return measure

    return _wrap(location, build)


def load_measure(filename: str) -> MarginalMeasure:
    return measure_from_dict(_read(filename, "measure"), filename)
