"""Experiment configuration: JSON schema and validation."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

import jsonschema

from .disc import DiscSequence, generate_algebraic, generate_geometric
from .errors import ConfigError

COMMANDS = ("carleson", "interpolate", "frame-sweep", "represent", "examples")

_pos_int = {"type": "integer", "minimum": 1}
_nonneg_int = {"type": "integer", "minimum": 0}
_pos_num = {"type": "number", "exclusiveMinimum": 0}

SEQUENCE_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"generator": {"const": "geometric"},
                           "alpha": {"type": "number", "exclusiveMinimum": 1}},
            "required": ["generator", "alpha"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"generator": {"const": "algebraic"},
                           "power": _pos_num,
                           "shift": _nonneg_int},
            "required": ["generator", "power"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "values": {
                    "type": "array",
                    "minItems": 1,
                    "items": {"oneOf": [
                        {"type": "number"},
                        {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
                    ]},
                },
            },
            "required": ["values"],
            "additionalProperties": False,
        },
    ]
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "orbitframes experiment configuration",
    "type": "object",
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "sequence": SEQUENCE_SCHEMA,
        "K": _pos_int,
        "K_list": {"type": "array", "items": _pos_int, "minItems": 1},
        "N_list": {"type": "array", "items": _nonneg_int, "minItems": 1},
        "ratio_bound": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
        "degree": {"oneOf": [{"const": "auto"}, _nonneg_int]},
        "trials": _pos_int,
        "name": {"enum": ["sum_basis", "factorial", "fractional", "block", "scaled"]},
        "count": _pos_int,
        "N": {"type": "integer", "minimum": 2},
        "d": _pos_int,
        "params": {
            "type": "object",
            "properties": {"factor": {"type": "number"}},
            "additionalProperties": False,
        },
        "tolerances": {
            "type": "object",
            "properties": {
                "separation": _pos_num,
                "rank": _pos_num,
                "residual": _pos_num,
                "kernel": _pos_num,
            },
            "additionalProperties": False,
        },
        "output": {
            "type": "object",
            "properties": {
                "path": {"type": "string", "minLength": 1},
                "format": {"enum": ["csv", "json"]},
            },
            "required": ["path"],
            "additionalProperties": False,
        },
        "seed": {"type": "integer"},
    },
    "required": ["command", "output"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"command": {"const": "carleson"}}},
         "then": {"required": ["sequence"]}},
        {"if": {"properties": {"command": {"const": "interpolate"}}},
         "then": {"required": ["sequence", "K"]}},
        {"if": {"properties": {"command": {"const": "frame-sweep"}}},
         "then": {"required": ["sequence", "K_list", "N_list"]}},
        {"if": {"properties": {"command": {"const": "represent"}}},
         "then": {"required": ["name", "N"]}},
        {"if": {"properties": {"command": {"const": "examples"}}},
         "then": {"required": ["name", "count"]}},
    ],
}

DEFAULT_TOLERANCES = {"separation": 1e-14, "rank": 1e-10, "residual": 1e-8, "kernel": 1e-8}


@dataclass
class ExperimentConfig:
    command: str
    output_path: str
    output_format: str = "csv"
    sequence: Optional[Dict[str, Any]] = None
    K: Optional[int] = None
    K_list: List[int] = field(default_factory=list)
    N_list: List[int] = field(default_factory=list)
    ratio_bound: Optional[float] = None
    degree: Union[str, int] = "auto"
    trials: int = 10
    name: Optional[str] = None
    count: Optional[int] = None
    N: Optional[int] = None
    d: Optional[int] = None
    params: Dict[str, Any] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    seed: int = 0
    raw: Dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def digest(self):
        canon = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def validate_config(raw):
    """Check ``raw`` against :data:`CONFIG_SCHEMA` and return an :class:`ExperimentConfig`."""
    try:
        jsonschema.validate(raw, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {exc.message}") from None
    out = raw["output"]
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(raw.get("tolerances", {}))
    return ExperimentConfig(
        command=raw["command"],
        output_path=out["path"],
        output_format=out.get("format", "csv"),
        sequence=raw.get("sequence"),
        K=raw.get("K"),
        K_list=list(raw.get("K_list", [])),
        N_list=list(raw.get("N_list", [])),
        ratio_bound=raw.get("ratio_bound"),
        degree=raw.get("degree", "auto"),
        trials=raw.get("trials", 10),
        name=raw.get("name"),
        count=raw.get("count"),
        N=raw.get("N"),
        d=raw.get("d"),
        params=dict(raw.get("params", {})),
        tolerances=tol,
        seed=raw.get("seed", 0),
        raw=raw,
    )


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    return validate_config(raw)


def sequence_factory(spec, separation_tol=1e-14):
    """Return ``K -> DiscSequence`` for a validated sequence spec."""
    if "values" in spec:
        vals = [complex(v[0], v[1]) if isinstance(v, list) else complex(v) for v in spec["values"]]
        full = DiscSequence.from_values(vals, separation_tol=separation_tol)

        def explicit(K=None):
            if K is None:
                return full
            if K > len(full):
                raise ConfigError(f"K={K} exceeds the {len(full)} explicit values")
            return full.prefix(K)
        return explicit
    if spec["generator"] == "geometric":
        return lambda K: generate_geometric(spec["alpha"], K)
    return lambda K: generate_algebraic(spec["power"], K, spec.get("shift", 1))
