"""Three-axis color picker: navigate RGB space one tile at a time.

Each hexagon shows the color reached by walking there from the focused tile,
so all nearby colors are visible at once; a step slider scales how much one
tile changes each channel.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..scene import TileStyle

STEP_CHOICES = (1, 2, 4, 8, 16, 32)


@dataclass(frozen=True)
class ColorPickerState:
    current: tuple = (128, 128, 128)
    step: int = 1


def _clamp(v: int) -> int:
    return 0 if v < 0 else 255 if v > 255 else v


def colorpicker_step(state: ColorPickerState, direction: int) -> ColorPickerState:
    """Move one tile along a signed axis: the channel changes by +-step."""
    axis = abs(direction) - 1
    sign = 1 if direction > 0 else -1
    if not 0 <= axis < 3:
        raise ValueError(f"color axis out of range: {direction}")
    updated = list(state.current)
    updated[axis] = _clamp(updated[axis] + sign * state.step)
    return replace(state, current=tuple(updated))


def colorpicker_set_step(state: ColorPickerState, value: int) -> ColorPickerState:
    if value not in STEP_CHOICES:
        raise ValueError(f"step must be one of {STEP_CHOICES}")
    return replace(state, step=value)


def color_hex(state: ColorPickerState) -> str:
    return "#%02x%02x%02x" % state.current


def colorpicker_style(state: ColorPickerState, focus_coord: tuple):
    """Tiles are painted with the color they would select if walked to."""
    cur = state.current
    step = state.step

    def style(coord):
        fill = tuple(_clamp(cur[a] + step * (coord[a] - focus_coord[a]))
                     for a in range(3))
        return TileStyle(fill=fill)

    return style
