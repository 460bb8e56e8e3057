"""Command/frame wire protocol: canonical JSON, newline-delimited.

Canonical serialization: UTF-8, object keys sorted, compact separators,
reals quantized to at most six fractional digits.  Byte-identical inputs
therefore produce byte-identical frames, which the replay tests rely on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Union

from .scene import SceneFrame


class CommandError(ValueError):
    """Schema violation; ``pointer`` locates the offending member."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(message)
        self.pointer = pointer

    def payload(self) -> dict:
        return {"error": str(self), "pointer": self.pointer}


@dataclass(frozen=True)
class MoveCmd:
    axis: int
    sign: int  # +1 / -1, or 0 for "wait in place"


@dataclass(frozen=True)
class ClickCmd:
    tile_id: int | None = None
    x: float | None = None
    y: float | None = None


@dataclass(frozen=True)
class SliderCmd:
    name: str
    value: float


@dataclass(frozen=True)
class ModeCmd:
    world: str
    d: int | None = None


@dataclass(frozen=True)
class ResetCmd:
    seed: int


@dataclass(frozen=True)
class QuitCmd:
    pass


Command = Union[MoveCmd, ClickCmd, SliderCmd, ModeCmd, ResetCmd, QuitCmd]


def _require(data: dict, key: str, types, pointer_root: str):
    if key not in data:
        raise CommandError(f"missing member {key!r}", f"{pointer_root}/{key}")
    value = data[key]
    if not isinstance(value, types) or isinstance(value, bool):
        raise CommandError(f"member {key!r} has wrong type", f"{pointer_root}/{key}")
    return value


def parse_command(text: str | bytes | dict, d: int | None = None) -> Command:
    """Parse and validate one command; ``d`` bounds axis indices if given."""
    if isinstance(text, (str, bytes)):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CommandError(f"not valid JSON: {exc}", "") from None
    else:
        data = text
    if not isinstance(data, dict):
        raise CommandError("command must be a JSON object", "")
    kind = data.get("type")
    if kind == "move":
        axis = _require(data, "axis", int, "")
        sign = _require(data, "sign", int, "")
        if sign not in (-1, 0, 1):
            raise CommandError("sign must be -1, 0 or 1", "/sign")
        if axis < 0 or (d is not None and axis >= d):
            raise CommandError(f"axis {axis} out of range", "/axis")
        return MoveCmd(axis=axis, sign=sign)
    if kind == "click":
        if "tile_id" in data:
            return ClickCmd(tile_id=_require(data, "tile_id", int, ""))
        x = _require(data, "x", (int, float), "")
        y = _require(data, "y", (int, float), "")
        return ClickCmd(x=float(x), y=float(y))
    if kind == "slider":
        name = _require(data, "name", str, "")
        value = _require(data, "value", (int, float), "")
        return SliderCmd(name=name, value=value)
    if kind == "mode":
        world = _require(data, "world", str, "")
        dd = data.get("d")
        if dd is not None and (not isinstance(dd, int) or isinstance(dd, bool)):
            raise CommandError("member 'd' has wrong type", "/d")
        return ModeCmd(world=world, d=dd)
    if kind == "reset":
        return ResetCmd(seed=_require(data, "seed", int, ""))
    if kind == "quit":
        return QuitCmd()
    raise CommandError(f"unknown command type {kind!r}", "/type")


def command_to_dict(cmd: Command) -> dict:
    if isinstance(cmd, MoveCmd):
        return {"type": "move", "axis": cmd.axis, "sign": cmd.sign}
    if isinstance(cmd, ClickCmd):
        if cmd.tile_id is not None:
            return {"type": "click", "tile_id": cmd.tile_id}
        return {"type": "click", "x": cmd.x, "y": cmd.y}
    if isinstance(cmd, SliderCmd):
        return {"type": "slider", "name": cmd.name, "value": cmd.value}
    if isinstance(cmd, ModeCmd):
        out = {"type": "mode", "world": cmd.world}
        if cmd.d is not None:
            out["d"] = cmd.d
        return out
    if isinstance(cmd, ResetCmd):
        return {"type": "reset", "seed": cmd.seed}
    if isinstance(cmd, QuitCmd):
        return {"type": "quit"}
    raise TypeError(f"not a command: {cmd!r}")


def serialize_command(cmd: Command) -> str:
    return canonical_dumps(command_to_dict(cmd))


@dataclass
class FrameMessage:
    """One frame on the wire: scene content plus session metadata."""

    frame: SceneFrame
    world: str
    status: str
    hud: dict = field(default_factory=dict)
    settled: bool = True

    @property
    def frame_seq(self) -> int:
        return self.frame.frame_seq


def frame_to_dict(msg: FrameMessage) -> dict:
    polys = []
    for poly in msg.frame.polys:
        polys.append({
            "tile_id": poly.tile_id,
            "coord": list(poly.coord),
            "boundary": [[float(x), float(y)] for x, y in poly.boundary],
            "fill": list(poly.fill),
            "labels": [{"text": t, "pos": [float(p[0]), float(p[1])],
                        "color": list(c)} for t, p, c in poly.labels],
        })
    return {
        "frame_seq": msg.frame.frame_seq,
        "world": msg.world,
        "status": msg.status,
        "hud": msg.hud,
        "settled": msg.settled,
        "polys": polys,
        "events": msg.frame.events,
    }


def serialize_frame(msg: FrameMessage) -> str:
    return canonical_dumps(frame_to_dict(msg))


def _quantize(obj: Any) -> Any:
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("cannot serialize non-finite real")
        q = float(format(obj, ".6f"))
        return 0.0 if q == 0.0 else q  # normalize -0.0
    if isinstance(obj, dict):
        return {str(k): _quantize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_quantize(v) for v in obj]
    return obj


def canonical_dumps(obj: Any) -> str:
    """Sorted keys, compact separators, reals at <= 6 fractional digits."""
    return json.dumps(_quantize(obj), sort_keys=True, ensure_ascii=False,
                      separators=(",", ":"))
