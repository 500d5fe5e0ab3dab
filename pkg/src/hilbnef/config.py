"""Surface configuration documents (TOML or JSON) and their validation.

A document looks like::

    name = "quintic"
    preset = "p3-hypersurface"

    [preset_params]
    d = 5

or, for ``preset = "custom"``, carries ``rank``, ``gram`` (row-major),
``canonical``, ``chi_O``, ``effective_generators`` and ``ample_reference``.
Only integers are accepted; a float anywhere is a parse error.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import tomli

from .errors import ConfigError
from .lattice import DivisorClass, IntersectionLattice, SurfaceData
from .presets import cyclic_cover, p3_hypersurface

__all__ = ["PRESETS", "SurfaceConfig", "parse_config_text", "load_config", "config_from_mapping", "build_surface"]

PRESETS = ("p3-hypersurface", "cyclic-cover", "dp1", "custom")
_PARAMS = {"p3-hypersurface": {"d"}, "cyclic-cover": {"d", "e", "chi_O"}, "dp1": set(), "custom": set()}
_CUSTOM_REQUIRED = ("rank", "gram", "canonical", "effective_generators", "ample_reference")


class _Float:
    def __init__(self, text):
        self.text = text


@dataclass(frozen=True)
class SurfaceConfig:
    name: str
    preset: str
    preset_params: dict = field(default_factory=dict)
    custom: dict = field(default_factory=dict)

    def to_mapping(self) -> dict:
        out = {"name": self.name, "preset": self.preset}
        if self.preset_params:
            out["preset_params"] = dict(sorted(self.preset_params.items()))
        for k in (*_CUSTOM_REQUIRED, "chi_O"):
            if k in self.custom:
                out[k] = self.custom[k]
        return out


def _line_of(text: str | None, key: str) -> int | None:
    if not text:
        return None
    pat = re.compile(r'(^|[\s{,"])' + re.escape(key) + r'"?\s*[:=]')
    for i, line in enumerate(text.splitlines(), 1):
        if pat.search(line):
            return i
    return None


def _find_float(obj, path=""):
    if isinstance(obj, _Float):
        return path, obj.text
    if isinstance(obj, float):
        return path, repr(obj)
    if isinstance(obj, dict):
        for k, v in obj.items():
            hit = _find_float(v, f"{path}.{k}" if path else str(k))
            if hit:
                return hit
    if isinstance(obj, list):
        for i, v in enumerate(obj):
            hit = _find_float(v, f"{path}[{i}]")
            if hit:
                return hit
    return None


def parse_config_text(text: str, fmt: str = "toml") -> SurfaceConfig:
    if fmt == "json":
        try:
            data = json.loads(text, parse_float=_Float)
        except json.JSONDecodeError as exc:
            raise ConfigError(exc.msg, line=exc.lineno) from None
    elif fmt == "toml":
        try:
            data = tomli.loads(text, parse_float=_Float)
        except tomli.TOMLDecodeError as exc:
            line = getattr(exc, "lineno", None)
            if line is None:
                m = re.search(r"line (\d+)", str(exc))
                line = int(m.group(1)) if m else None
            raise ConfigError(str(exc).split(" (at")[0], line=line) from None
    else:
        raise ConfigError(f"unknown config format {fmt!r}")
    if not isinstance(data, dict):
        raise ConfigError("config document must be a table/object")
    hit = _find_float(data)
    if hit:
        path, raw = hit
        leaf = re.findall(r"[A-Za-z_]\w*", path)[-1]
        raise ConfigError(f"floating point value {raw} is not allowed", field=path, line=_line_of(text, leaf))
    return config_from_mapping(data, text)


def load_config(path) -> SurfaceConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    fmt = "json" if path.suffix.lower() == ".json" else "toml"
    return parse_config_text(text, fmt)


def _int(value, name, text=None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", field=name, line=_line_of(text, name.split(".")[-1]))
    return value


def _int_list(value, name, length=None, text=None) -> list[int]:
    if not isinstance(value, list):
        raise ConfigError("expected an integer array", field=name, line=_line_of(text, name))
    out = [_int(v, f"{name}[{i}]", text) for i, v in enumerate(value)]
    if length is not None and len(out) != length:
        raise ConfigError(f"expected {length} entries, got {len(out)}", field=name, line=_line_of(text, name))
    return out


def config_from_mapping(data: dict, text: str | None = None) -> SurfaceConfig:
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ConfigError("name must be a string", field="name", line=_line_of(text, "name"))
    preset = data.get("preset", "custom")
    if preset not in PRESETS:
        raise ConfigError(f"unknown preset {preset!r}; expected one of {', '.join(PRESETS)}", field="preset",
                          line=_line_of(text, "preset"))
    params = data.get("preset_params", {})
    if not isinstance(params, dict):
        raise ConfigError("preset_params must be a table", field="preset_params", line=_line_of(text, "preset_params"))
    params = {k: _int(v, f"preset_params.{k}", text) for k, v in params.items()}
    unknown = set(params) - _PARAMS[preset]
    if unknown:
        k = sorted(unknown)[0]
        raise ConfigError(f"parameter not used by preset {preset!r}", field=f"preset_params.{k}", line=_line_of(text, k))
    if preset == "p3-hypersurface":
        if "d" not in params:
            raise ConfigError("p3-hypersurface needs d", field="preset_params.d")
        if params["d"] < 1:
            raise ConfigError("d must be at least 1", field="preset_params.d", line=_line_of(text, "d"))
    if preset == "cyclic-cover":
        for k in ("d", "e"):
            if k not in params:
                raise ConfigError(f"cyclic-cover needs {k}", field=f"preset_params.{k}")
        d, e = params["d"], params["e"]
        if d < 2 or e % d or e * (d - 1) < 3 * d:
            raise ConfigError("cyclic-cover needs d >= 2, d | e and e >= 3d/(d-1)", field="preset_params",
                              line=_line_of(text, "preset_params"))
    custom = {}
    if preset == "custom":
        for k in _CUSTOM_REQUIRED:
            if k not in data:
                raise ConfigError("missing required field", field=k)
        rank = _int(data["rank"], "rank", text)
        if rank < 1:
            raise ConfigError("rank must be positive", field="rank", line=_line_of(text, "rank"))
        custom["rank"] = rank
        custom["gram"] = _int_list(data["gram"], "gram", rank * rank, text)
        custom["canonical"] = _int_list(data["canonical"], "canonical", rank, text)
        gens = data["effective_generators"]
        if not isinstance(gens, list) or not gens:
            raise ConfigError("expected a non-empty array of integer vectors", field="effective_generators",
                              line=_line_of(text, "effective_generators"))
        custom["effective_generators"] = [
            _int_list(g, f"effective_generators[{i}]", rank, text) for i, g in enumerate(gens)
        ]
        custom["ample_reference"] = _int_list(data["ample_reference"], "ample_reference", rank, text)
        if "chi_O" in data:
            custom["chi_O"] = _int(data["chi_O"], "chi_O", text)
    else:
        extra = [k for k in data if k not in ("name", "preset", "preset_params")]
        if extra:
            raise ConfigError(f"field not allowed with preset {preset!r}", field=extra[0], line=_line_of(text, extra[0]))
    return SurfaceConfig(name or preset, preset, params, custom)


def build_surface(cfg: SurfaceConfig) -> SurfaceData:
    p = cfg.preset_params
    if cfg.preset == "p3-hypersurface":
        return p3_hypersurface(p["d"])
    if cfg.preset == "cyclic-cover":
        return cyclic_cover(p["d"], p["e"], p.get("chi_O"))
    if cfg.preset == "dp1":
        from .dp1 import dp1_surface

        return dp1_surface()
    c = cfg.custom
    r = c["rank"]
    gram = [c["gram"][i * r : (i + 1) * r] for i in range(r)]
    try:
        return SurfaceData(
            name=cfg.name,
            lattice=IntersectionLattice(gram),
            canonical=DivisorClass(c["canonical"]),
            chi_O=c.get("chi_O"),
            effective_generators=tuple(DivisorClass(g) for g in c["effective_generators"]),
            ample_reference=DivisorClass(c["ample_reference"]),
            metadata={"preset": "custom"},
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
