"""Descent parameter configuration: file, environment, explicit overrides.

Config files are plain ``key = value`` lines ('#' starts a comment).  Keys
match DescentParams field names.  Environment variables override the file
with prefix ELASTICA_ (e.g. ELASTICA_C1); explicit overrides win over both.
"""
from __future__ import annotations

import os
from dataclasses import fields
from pathlib import Path
from typing import Mapping, Optional, Union

from .descent import DescentParams

ENV_PREFIX = "ELASTICA_"

_INT_FIELDS = {"n", "quiescence_runs", "max_iters", "snapshot_every"}


def _parse_value(key: str, raw: str):
    try:
        return int(raw) if key in _INT_FIELDS else float(raw)
    except ValueError as err:
        raise ValueError(f"config key {key!r}: cannot parse {raw!r}") from err


def read_config_file(path: Union[str, Path]) -> dict:
    values = {}
    known = {f.name for f in fields(DescentParams)}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _parse_value(key, raw)
    return values


def env_overrides(environ: Optional[Mapping[str, str]] = None) -> dict:
    environ = os.environ if environ is None else environ
    values = {}
    for f in fields(DescentParams):
        raw = environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            values[f.name] = _parse_value(f.name, raw)
    return values


def load_params(
    config_path: Optional[Union[str, Path]] = None,
    environ: Optional[Mapping[str, str]] = None,
    **overrides,
) -> DescentParams:
    values = {}
    if config_path is not None:
        values.update(read_config_file(config_path))
    values.update(env_overrides(environ))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return DescentParams(**values)
