"""Session orchestration: one world, one tiling patch, one camera.

A session applies commands to its world state, keeps the view centered on
the focused tile (the player, or the current cell), and emits the resulting
frames.  Recentering is animated server-side: a move produces a batch of
frames along the camera geodesic, the last one marked settled and carrying
the turn's events.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .protocol import (
    ClickCmd,
    Command,
    CommandError,
    FrameMessage,
    MoveCmd,
    ModeCmd,
    QuitCmd,
    ResetCmd,
    SliderCmd,
)
from .scene import DEFAULT_CUTOFF, Camera2D, build_frame, pick, recenter_steps
from .tiling import new_patch
from .worlds import (
    ColorPickerState,
    PitchState,
    center_new,
    colorpicker_set_step,
    colorpicker_step,
    default_level,
    house_new,
    pitch_frequency,
    pitch_ratio,
    rogue_new,
    rogue_step,
    puzzle_step,
    sokoban_step,
    world_style,
)
from .worlds.colorpicker import color_hex

WORLD_DEFAULT_D = {"colorpicker": 3, "pitch": 4, "rogue": 3, "house": 4,
                   "center": 4, "sokoban": 4}


@dataclass(frozen=True)
class SessionConfig:
    world: str = "colorpicker"
    d: int | None = None
    seed: int = 0
    cutoff: float = DEFAULT_CUTOFF
    anim_steps: int = 8

    def resolved_d(self) -> int:
        d = self.d if self.d is not None else WORLD_DEFAULT_D[self.world]
        if self.world == "colorpicker" and d != 3:
            raise ValueError("the color picker is three-dimensional")
        if self.world in ("pitch", "house") and d != 4:
            raise ValueError(f"world {self.world!r} is four-dimensional")
        if self.world == "sokoban" and d != 4:
            raise ValueError("sokoban is four-dimensional")
        if not 3 <= d <= 6:
            raise ValueError("d must be within 3..6")
        return d


class _Adapter:
    """Binds a world's pure transition functions to the session loop."""

    world_id: str
    world_d: int
    tiling_d: int
    altitude_scale = 0.0

    def move(self, code):
        raise NotImplementedError

    def wait(self):
        return [], None

    def slider(self, name, value):
        return [{"kind": "info", "payload": f"no slider {name!r} here"}]

    def status(self):
        return "playing"

    def hud(self):
        return {}

    def state_json(self):
        return {}

    def style(self, focus_coord):
        return world_style(self.world_id, self.state, focus_coord)


class _ColorPicker(_Adapter):
    world_id = "colorpicker"

    def __init__(self, config):
        self.world_d = self.tiling_d = 3
        self.state = ColorPickerState()

    def move(self, code):
        new = colorpicker_step(self.state, code)
        if new.current == self.state.current:
            return [{"kind": "info", "payload": "channel is saturated"}], None
        self.state = new
        return [], code

    def slider(self, name, value):
        if name != "step":
            return super().slider(name, value)
        try:
            self.state = colorpicker_set_step(self.state, int(value))
        except ValueError as exc:
            return [{"kind": "info", "payload": str(exc)}]
        return []

    def hud(self):
        return {"color": color_hex(self.state), "step": self.state.step}

    def state_json(self):
        return {"current": list(self.state.current), "step": self.state.step}


class _Pitch(_Adapter):
    world_id = "pitch"

    def __init__(self, config):
        self.world_d = self.tiling_d = 4
        self.state = PitchState()

    def move(self, code):
        axis = abs(code) - 1
        sign = 1 if code > 0 else -1
        cell = list(self.state.cell)
        cell[axis] += sign
        self.state = replace(self.state, cell=tuple(cell))
        ratio = pitch_ratio(self.state.cell)
        event = {"kind": "sound", "payload": {
            "freq": pitch_frequency(self.state), "ms": 300,
            "ratio": f"{ratio.numerator}/{ratio.denominator}"}}
        return [event], code

    def hud(self):
        ratio = pitch_ratio(self.state.cell)
        return {"freq": round(pitch_frequency(self.state), 3),
                "ratio": f"{ratio.numerator}/{ratio.denominator}",
                "base": self.state.base_freq}

    def state_json(self):
        return {"cell": list(self.state.cell), "base_freq": self.state.base_freq}


class _Rogue(_Adapter):
    world_id = "rogue"

    def __init__(self, config):
        self.world_d = self.tiling_d = config.resolved_d()
        self.state = rogue_new(self.world_d, config.seed)

    def move(self, code):
        from .tiling import step
        target = step(self.state.player, code)
        action = ("attack", code) if target in self.state.enemies else ("move", code)
        before = self.state.player
        self.state, events = rogue_step(self.state, action)
        return events, (code if self.state.player != before else None)

    def wait(self):
        self.state, events = rogue_step(self.state, ("wait",))
        return events, None

    def status(self):
        return self.state.status

    def hud(self):
        return {"turn": self.state.turn, "enemies": len(self.state.enemies)}

    def state_json(self):
        return {"player": list(self.state.player),
                "enemies": [list(e) for e in self.state.enemies],
                "status": self.state.status, "turn": self.state.turn}


class _Puzzle(_Adapter):
    def __init__(self, config):
        self.world_id = config.world
        if config.world == "house":
            self.world_d = 4
            self.state = house_new()
        else:
            self.world_d = config.resolved_d()
            self.state = center_new("cube", d=self.world_d)
        self.tiling_d = self.world_d

    def move(self, code):
        before = self.state.player
        self.state, events = puzzle_step(self.state, code)
        return events, (code if self.state.player != before else None)

    def status(self):
        return "won" if self.state.solved else "playing"

    def hud(self):
        return {"solved": self.state.solved}

    def state_json(self):
        return {"kind": self.state.kind, "player": list(self.state.player),
                "solved": self.state.solved}


class _Sokoban(_Adapter):
    world_id = "sokoban"
    altitude_scale = 0.5

    def __init__(self, config, level=None):
        self.world_d = 4
        self.tiling_d = 3
        self.state = level if level is not None else default_level()

    def move(self, code):
        before = self.state.player
        self.state, events = sokoban_step(self.state, code)
        moved = self.state.player
        axis = abs(code) - 1
        if axis < 3 and moved[:3] != before[:3]:
            return events, code
        return events, None

    def status(self):
        return self.state.status

    def hud(self):
        home = len(self.state.targets & self.state.boxes)
        return {"moves": self.state.moves, "boxes_home": home,
                "targets": len(self.state.targets)}

    def state_json(self):
        return {"player": list(self.state.player),
                "boxes": sorted(list(b) for b in self.state.boxes),
                "status": self.state.status, "moves": self.state.moves}


def _make_adapter(config: SessionConfig, level=None) -> _Adapter:
    world = config.world
    if world == "colorpicker":
        return _ColorPicker(config)
    if world == "pitch":
        return _Pitch(config)
    if world == "rogue":
        return _Rogue(config)
    if world in ("house", "center"):
        return _Puzzle(config)
    if world == "sokoban":
        return _Sokoban(config, level)
    raise ValueError(f"unknown world {world!r}")


class Session:
    """One sequential command stream over one world instance."""

    def __init__(self, config: SessionConfig, level=None):
        self.config = config
        self._level = level
        self.closed = False
        self._reset()

    def _reset(self):
        self.adapter = _make_adapter(self.config, self._level)
        self.patch = new_patch(self.adapter.tiling_d)
        self.camera = Camera2D(view=np.eye(3),
                               altitude_scale=self.adapter.altitude_scale)
        self.focus = self.patch.central
        self.frame_seq = 0
        self.last_frame = None
        start = self._world_focus_coord()
        self.focus = self._walk_to(start)

    def _world_focus_coord(self):
        state = self.adapter.state
        player = getattr(state, "player", None)
        if player is None:
            return (0,) * self.adapter.tiling_d
        return tuple(player[: self.adapter.tiling_d])

    def _walk_to(self, coord):
        """Move the focus tile from the center to the given coordinate."""
        tile = self.focus
        for axis, value in enumerate(coord):
            code = (axis + 1) * (1 if value > 0 else -1)
            for _ in range(abs(value)):
                tile = self._neighbor_by_direction(tile, code)
        cams = recenter_steps(self.patch, self.camera, tile, 1)
        self.camera = cams[-1]
        return tile

    def _neighbor_by_direction(self, tile_id, code):
        tile = self.patch.tile(tile_id)
        k = tile.edge_dirs.index(code)
        return self.patch.neighbor(tile_id, k)

    # -- frames ---------------------------------------------------------------

    def _emit(self, camera, settled, events):
        self.frame_seq += 1
        frame = build_frame(self.patch, camera,
                            self.adapter.style(self.patch.tile(self.focus).coord),
                            self.config.cutoff, seed_tile=self.focus,
                            frame_seq=self.frame_seq)
        frame.events = list(events)
        msg = FrameMessage(frame=frame, world=self.adapter.world_id,
                           status=self.adapter.status(), hud=self.adapter.hud(),
                           settled=settled)
        if settled:
            self.last_frame = frame
        return msg

    def initial_frames(self) -> list[FrameMessage]:
        return [self._emit(self.camera, True, [])]

    def handle(self, cmd: Command) -> list[FrameMessage]:
        """Apply one command; returns the animation batch ending settled."""
        if self.closed:
            return []
        if isinstance(cmd, QuitCmd):
            self.closed = True
            return []
        if isinstance(cmd, ResetCmd):
            self.config = replace(self.config, seed=cmd.seed)
            self._reset()
            return self.initial_frames()
        if isinstance(cmd, ModeCmd):
            d = cmd.d if cmd.d is not None else WORLD_DEFAULT_D.get(cmd.world)
            if cmd.world not in WORLD_DEFAULT_D:
                raise CommandError(f"unknown world {cmd.world!r}", "/world")
            self.config = replace(self.config, world=cmd.world, d=d)
            self._reset()
            return self.initial_frames()
        if isinstance(cmd, SliderCmd):
            events = self.adapter.slider(cmd.name, cmd.value)
            return [self._emit(self.camera, True, events)]
        if isinstance(cmd, MoveCmd):
            if cmd.axis >= self.adapter.world_d:
                raise CommandError(
                    f"axis {cmd.axis} out of range for this world", "/axis")
            if cmd.sign == 0:
                events, delta = self.adapter.wait()
            else:
                events, delta = self.adapter.move((cmd.axis + 1) * cmd.sign)
            return self._frames_after(events, delta)
        if isinstance(cmd, ClickCmd):
            return self._handle_click(cmd)
        raise CommandError(f"unhandled command {cmd!r}", "")

    def _handle_click(self, cmd: ClickCmd) -> list[FrameMessage]:
        if cmd.tile_id is not None:
            target = cmd.tile_id
        else:
            if self.last_frame is None:
                return [self._emit(self.camera, True,
                                   [{"kind": "info", "payload": "nothing rendered yet"}])]
            target = pick(self.last_frame, (cmd.x, cmd.y))
        if target is None:
            return [self._emit(self.camera, True,
                               [{"kind": "info", "payload": "click hit no tile"}])]
        if target == self.focus:
            events, delta = self.adapter.wait()
            return self._frames_after(events, delta)
        tile = self.patch.tile(self.focus)
        for k, nid in enumerate(tile.neighbors):
            if nid == target:
                code = tile.edge_dirs[k]
                axis, sign = abs(code) - 1, (1 if code > 0 else -1)
                return self.handle(MoveCmd(axis=axis, sign=sign))
        return [self._emit(self.camera, True,
                           [{"kind": "info", "payload": "tile is not adjacent"}])]

    def _frames_after(self, events, delta) -> list[FrameMessage]:
        if delta is None:
            return [self._emit(self.camera, True, events)]
        self.focus = self._neighbor_by_direction(self.focus, delta)
        cameras = recenter_steps(self.patch, self.camera, self.focus,
                                 self.config.anim_steps)
        self.camera = cameras[-1]
        out = []
        for cam in cameras[:-1]:
            out.append(self._emit(cam, False, []))
        out.append(self._emit(cameras[-1], True, events))
        return out

    def state_json(self) -> dict:
        return {"world": self.adapter.world_id, "status": self.adapter.status(),
                "state": self.adapter.state_json(), "frame_seq": self.frame_seq}
