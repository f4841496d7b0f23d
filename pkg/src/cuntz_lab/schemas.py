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
"""JSON Schemas of the input file formats"""

from typing import Any, Dict

RATIONAL: Dict[str, Any] = {
    "anyOf": [
        {
            "type": "integer"
        },
        {
            "type": "number"
        },
        {
            "type": "string",
            "pattern": r"^\s*-?\d+(/\d+)?\s*$"
        },
    ]
}

POSITIVE_INT: Dict[str, Any] = {"type": "integer", "minimum": 1}
NONNEGATIVE_INT: Dict[str, Any] = {"type": "integer", "minimum": 0}
POINT_ID: Dict[str, Any] = {"type": "string", "minLength": 1}

SPACE: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "space",
    "type": "object",
    "required": ["label", "covering_dim", "points"],
    "properties": {
        "label": {
            "type": "string"
        },
        "covering_dim": NONNEGATIVE_INT,
        "points": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id"],
                "properties": {
                    "id": POINT_ID,
                    "coords": {
                        "type": "array",
                        "items": RATIONAL
                    },
                },
            },
        },
        "adjacency": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": POINT_ID,
            },
        },
    },
}

COMPLEX_ENTRY: Dict[str, Any] = {
    "oneOf": [
        {
            "type": "number"
        },
        {
            "type": "array",
            "minItems": 2,
            "maxItems": 2,
            "items": {
                "type": "number"
            },
        },
    ]
}

FIELD: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "field",
    "type": "object",
    "required": ["n", "values"],
    "properties": {
        "space_label": {
            "type": "string"
        },
        "n": POSITIVE_INT,
        "values": {
            "type": "object",
            "minProperties": 1,
            "additionalProperties": {
                "type": "array",
                "items": {
                    "type": "array",
                    "items": COMPLEX_ENTRY
                },
            },
        },
    },
}

DIMS: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "dims",
    "oneOf": [
        NONNEGATIVE_INT,
        {
            "type": "object",
            "additionalProperties": NONNEGATIVE_INT
        },
    ],
}

TRACES: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "traces",
    "type": "object",
    "required": ["traces"],
    "properties": {
        "traces": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["label", "weights"],
                "properties": {
                    "label": {
                        "type": "string"
                    },
                    "weights": {
                        "type": "object",
                        "additionalProperties": RATIONAL
                    },
                    "matrix_size": {
                        "oneOf": [
                            POSITIVE_INT,
                            {
                                "type": "object",
                                "additionalProperties": POSITIVE_INT
                            },
                        ]
                    },
                },
            },
        },
    },
}

DECOMPOSITION: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "decomposition",
    "type": "object",
    "required": ["stages"],
    "properties": {
        "label": {
            "type": "string"
        },
        "stages": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["space", "matrix_size"],
                "properties": {
                    "space": SPACE,
                    "matrix_size": POSITIVE_INT,
                    "boundary": {
                        "type": "array",
                        "items": POINT_ID
                    },
                    "clutch": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["point", "targets"],
                            "properties": {
                                "point": POINT_ID,
                                "targets": {
                                    "type": "array",
                                    "minItems": 1,
                                    "items": {
                                        "type": "array",
                                        "minItems": 2,
                                        "maxItems": 2,
                                        "items": [NONNEGATIVE_INT, POINT_ID],
                                    },
                                },
                            },
                        },
                    },
                },
            },
        },
    },
}

SEQUENCE: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "sequence",
    "type": "object",
    "required": ["terms", "maps"],
    "properties": {
        "label": {
            "type": "string"
        },
        "terms": {
            "type": "array",
            "minItems": 1,
            "items": DECOMPOSITION
        },
        "maps": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["target_stage", "sources"],
                    "properties": {
                        "target_stage": NONNEGATIVE_INT,
                        "sources": {
                            "type": "array",
                            "minItems": 1,
                            "items": {
                                "type": "array",
                                "minItems": 2,
                                "maxItems": 2,
                                "items": [NONNEGATIVE_INT, POSITIVE_INT],
                            },
                        },
                    },
                },
            },
        },
    },
}

PARAMS: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "villadsen-params",
    "type": "object",
    "required": ["m0", "n0", "n_seq", "l_seq", "target_r"],
    "properties": {
        "m0": POSITIVE_INT,
        "n0": POSITIVE_INT,
        "n_seq": {
            "type": "array",
            "items": POSITIVE_INT
        },
        "l_seq": {
            "type": "array",
            "items": NONNEGATIVE_INT
        },
        "target_r": RATIONAL,
    },
}

MARGINAL: Dict[str, Any] = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "array",
        "minItems": 2,
        "maxItems": 2,
        "items": RATIONAL,
    },
}

MEASURE: Dict[str, Any] = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "measure",
    "type": "object",
    "required": ["dim"],
    "properties": {
        "dim": POSITIVE_INT,
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["weight", "marginals"],
                "properties": {
                    "weight": RATIONAL,
                    "marginals": {
                        "type": "array",
                        "items": MARGINAL
                    },
                },
            },
        },
        "atoms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["weight", "point"],
                "properties": {
                    "weight": RATIONAL,
                    "point": {
                        "type": "array",
                        "items": RATIONAL
                    },
                },
            },
        },
    },
}

ALL_SCHEMAS: Dict[str, Dict[str, Any]] = {
    "space": SPACE,
    "field": FIELD,
    "dims": DIMS,
    "traces": TRACES,
    "decomposition": DECOMPOSITION,
    "sequence": SEQUENCE,
    "params": PARAMS,
    "measure": MEASURE,
}
