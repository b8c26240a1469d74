"""Fan and module documents, fixture lookup, report rendering.

A fan document (``*.fan.json``)::

    {"schema_version": 1, "ambient_dim": 2, "name": "p2",
     "rays": [[1, 0], [0, 1], [-1, -1]],
     "max_cones": [[0, 1], [1, 2], [2, 0]]}

A module document (``*.mod.json``) lists the shifts of the ambient free
module and the generators, one list of component polynomials each::

    {"shifts": [[0]], "generators": [["Z_0^2"], ["Z_0*Z_1"]]}
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Sequence

from .cones import Fan
from .polynomials import parse_vector

SCHEMA_VERSION = 1


class FanDocumentError(ValueError):
    """Schema violation; the message names the offending field."""


class NormalizationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class FanDocument:
    ambient_dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: Optional[str] = None
    schema_version: int = SCHEMA_VERSION

    def to_fan(self) -> Fan:
        return Fan.from_rays(self.rays, self.max_cones, self.ambient_dim, self.name)

    def to_json(self) -> str:
        obj: dict[str, Any] = {"schema_version": self.schema_version, "ambient_dim": self.ambient_dim}
        if self.name is not None:
            obj["name"] = self.name
        obj["rays"] = [list(r) for r in self.rays]
        obj["max_cones"] = [list(c) for c in self.max_cones]
        return json.dumps(obj, indent=2) + "\n"


def _locate_key(text: str, key: str) -> str:
    for n, line in enumerate(text.splitlines(), 1):
        if f'"{key}"' in line:
            return f"line {n}"
    return "document"


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FanDocumentError(f"{where}: expected an integer, got {x!r}")
    return x


def parse_fan(text: str) -> FanDocument:
    """Parse and check a fan document. Non-primitive rays are scaled down
    with a :class:`NormalizationWarning`."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FanDocumentError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(obj, dict):
        raise FanDocumentError("document: top level must be an object")
    version = obj.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise FanDocumentError(f"{_locate_key(text, 'schema_version')}: unsupported schema_version {version!r}")
    for key in ("rays", "max_cones"):
        if key not in obj:
            raise FanDocumentError(f"document: missing field {key!r}")
    rays_raw = obj["rays"]
    if not isinstance(rays_raw, list):
        raise FanDocumentError(f"{_locate_key(text, 'rays')}: field 'rays' must be a list")
    dim = obj.get("ambient_dim")
    if dim is None:
        if not rays_raw:
            raise FanDocumentError("document: 'ambient_dim' is required when there are no rays")
        dim = len(rays_raw[0]) if isinstance(rays_raw[0], list) else -1
    dim = _int(dim, f"{_locate_key(text, 'ambient_dim')}: field 'ambient_dim'")
    if dim < 0:
        raise FanDocumentError("field 'ambient_dim' must be nonnegative")
    rays = []
    where_rays = _locate_key(text, "rays")
    for i, r in enumerate(rays_raw):
        if not isinstance(r, list) or len(r) != dim:
            raise FanDocumentError(f"{where_rays}: rays[{i}] must be a list of {dim} integers")
        v = tuple(_int(x, f"{where_rays}: rays[{i}]") for x in r)
        g = math.gcd(*v) if v else 0
        if g == 0:
            raise FanDocumentError(f"{where_rays}: rays[{i}] is zero")
        if g != 1:
            warnings.warn(f"rays[{i}] = {list(v)} normalized to {[x // g for x in v]}", NormalizationWarning,
                          stacklevel=2)
            v = tuple(x // g for x in v)
        rays.append(v)
    cones_raw = obj["max_cones"]
    where_cones = _locate_key(text, "max_cones")
    if not isinstance(cones_raw, list):
        raise FanDocumentError(f"{where_cones}: field 'max_cones' must be a list")
    cones = []
    for j, c in enumerate(cones_raw):
        if not isinstance(c, list):
            raise FanDocumentError(f"{where_cones}: max_cones[{j}] must be a list of ray indices")
        idx = tuple(_int(x, f"{where_cones}: max_cones[{j}]") for x in c)
        for x in idx:
            if not 0 <= x < len(rays):
                raise FanDocumentError(
                    f"{where_cones}: max_cones[{j}] references ray index {x} of {len(rays)}")
        cones.append(idx)
    name = obj.get("name")
    if name is not None and not isinstance(name, str):
        raise FanDocumentError(f"{_locate_key(text, 'name')}: field 'name' must be a string")
    return FanDocument(dim, tuple(rays), tuple(cones), name, version)


# ------------------------------------------------------------- fixtures


FIXTURE_NAMES = ("p2", "p1", "hirzebruch-a", "ex-1.100a", "ex-1.100b", "ex-1.230", "ex-1.400a", "ex-1.400b",
                 "ex-3.290")


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("toric_cox") / "fixtures" / f"{name}.fan.json"))


def list_fixtures() -> list[str]:
    return list(FIXTURE_NAMES)


def resolve_fan_path(arg: str) -> Path:
    """A path on disk, or a fixture given as ``p2``, ``p2.json``,
    ``fixtures/p2.json`` or ``p2.fan.json``."""
    p = Path(arg)
    if p.is_file():
        return p
    stem = p.name
    for suffix in (".fan.json", ".json"):
        if stem.endswith(suffix):
            stem = stem[: -len(suffix)]
            break
    if stem in FIXTURE_NAMES:
        return fixture_path(stem)
    raise FileNotFoundError(f"no fan file or fixture named {arg!r}")


def load_fan(arg: str) -> FanDocument:
    return parse_fan(resolve_fan_path(arg).read_text())


def load_fixture(name: str) -> Fan:
    return parse_fan(fixture_path(name).read_text()).to_fan()


# -------------------------------------------------------------- modules


def parse_module(text: str, ring):
    """A :class:`~toric_cox.graded.GradedSubmodule` from a module document."""
    from .graded import GradedSubmodule

    obj = json.loads(text)
    if not isinstance(obj, dict) or "shifts" not in obj:
        raise FanDocumentError("module document needs 'shifts' and 'generators'")
    shifts = [tuple(_int(x, "shifts") for x in s) for s in obj["shifts"]]
    gens = []
    for i, g in enumerate(obj.get("generators", [])):
        comps = [g] if isinstance(g, str) else g
        if len(comps) != len(shifts):
            raise FanDocumentError(f"generators[{i}] has {len(comps)} components, expected {len(shifts)}")
        gens.append(parse_vector(comps, ring.nvars))
    return GradedSubmodule(ring, shifts, gens)


# -------------------------------------------------------------- reports


@dataclass
class RunReport:
    command: list[str]
    input_digest: str
    results: dict
    timing: Optional[float] = None
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {"command": self.command, "input_digest": self.input_digest, "results": self.results}
        if self.warnings:
            out["warnings"] = self.warnings
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 6)
        return out


def digest(*texts: str) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
        h.update(b"\0")
    return h.hexdigest()[:16]


def _render(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines += _render(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                lines += _render(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def emit_report(r: RunReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(r.as_dict(), indent=2, sort_keys=False) + "\n"
    if format == "text":
        return "\n".join(_render(r.as_dict())) + "\n"
    raise ValueError(f"unknown format {format!r}")
