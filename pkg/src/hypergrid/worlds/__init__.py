"""Interactive applications over Z^d: deterministic state machines + styles.

Every world is a frozen-dataclass state with pure transition functions that
return ``(new_state, events)``; events are small dicts (kind: sound | win |
lose | info).  Styles map a tile coordinate to the fill color and labels the
2D scene builder needs.
"""

from .colorpicker import (
    STEP_CHOICES,
    ColorPickerState,
    colorpicker_set_step,
    colorpicker_step,
    colorpicker_style,
)
from .pitch import PitchState, pitch_frequency, pitch_ratio, pitch_style
from .puzzles import (
    PuzzleState,
    center_new,
    classify_cell,
    house_new,
    puzzle_solved,
    puzzle_step,
    puzzle_style,
)
from .rogue import (
    RogueState,
    rogue_new,
    rogue_step,
    rogue_style,
    rogue_two_attackers,
)
from .sokoban import (
    GRAVITY_AXIS,
    SokobanState,
    default_level,
    load_level,
    sokoban_step,
    sokoban_style,
    state_to_level,
)

WORLD_IDS = ("colorpicker", "pitch", "rogue", "house", "center", "sokoban")


def world_style(world_id: str, state, focus_coord: tuple):
    """Style function for a world state, relative to the focused tile."""
    if world_id == "colorpicker":
        return colorpicker_style(state, focus_coord)
    if world_id == "pitch":
        return pitch_style(state, focus_coord)
    if world_id == "rogue":
        return rogue_style(state)
    if world_id in ("house", "center"):
        return puzzle_style(state)
    if world_id == "sokoban":
        return sokoban_style(state)
    raise ValueError(f"unknown world {world_id!r}")
