"""Four-dimensional Sokoban with gravity along the fourth axis.

Three axes are shown in the tiling; the fourth is altitude.  Pushing moves a
single box one cell if the cell beyond it is free; after every action, boxes
and the player fall until supported.  The game is won when every target cell
holds a box.

Level files are JSON: {"format": 1, "d": 4, "walls": [[...]], "boxes": ...,
"targets": ..., "player": [...]} with integer coordinate arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..scene import TileStyle
from ..tiling import step

GRAVITY_AXIS = 3          # fall direction is -e4
GRAVITY_CAP = 10 ** 6     # fixpoint iteration limit
LEVEL_FORMAT = 1


@dataclass(frozen=True)
class SokobanState:
    walls: frozenset
    boxes: frozenset
    targets: frozenset
    player: tuple
    status: str = "playing"
    moves: int = 0


def load_level(data: dict) -> SokobanState:
    if data.get("format") != LEVEL_FORMAT:
        raise ValueError(f"unsupported level format {data.get('format')!r}")
    if data.get("d") != 4:
        raise ValueError("sokoban levels are four-dimensional")
    walls = frozenset(tuple(c) for c in data["walls"])
    boxes = frozenset(tuple(c) for c in data["boxes"])
    targets = frozenset(tuple(c) for c in data["targets"])
    player = tuple(data["player"])
    if len(boxes) != len(data["boxes"]):
        raise ValueError("boxes must be pairwise distinct")
    if boxes & walls:
        raise ValueError("a box sits inside a wall")
    if player in walls or player in boxes:
        raise ValueError("player cell is occupied")
    state = SokobanState(walls=walls, boxes=boxes, targets=targets, player=player)
    return _settle(state)


def state_to_level(state: SokobanState) -> dict:
    return {
        "format": LEVEL_FORMAT,
        "d": 4,
        "walls": sorted(list(c) for c in state.walls),
        "boxes": sorted(list(c) for c in state.boxes),
        "targets": sorted(list(c) for c in state.targets),
        "player": list(state.player),
    }


def default_level() -> SokobanState:
    """A small floored room: push two boxes onto their marks."""
    walls = set()
    for x in range(-3, 4):
        for y in range(-3, 4):
            for z in range(-3, 4):
                walls.add((x, y, z, -1))          # floor
    walls.add((2, 2, 0, 0))                       # one obstacle on the floor
    return load_level({
        "format": 1, "d": 4,
        "walls": sorted(list(c) for c in walls),
        "boxes": [[1, 0, 0, 0], [0, 2, 0, 0]],
        "targets": [[3, 0, 0, 0], [0, 3, 0, 0]],
        "player": [0, 0, 0, 0],
    })


def _below(cell):
    return step(cell, -(GRAVITY_AXIS + 1))


def _settle(state: SokobanState) -> SokobanState:
    """Let everything fall to a fixpoint; lowest entities settle first."""
    boxes = set(state.boxes)
    player = state.player
    for _ in range(GRAVITY_CAP):
        moved = False
        for box in sorted(boxes, key=lambda c: c[GRAVITY_AXIS]):
            target = _below(box)
            if target not in state.walls and target not in boxes \
                    and target != player:
                boxes.discard(box)
                boxes.add(target)
                moved = True
        down = _below(player)
        if down not in state.walls and down not in boxes:
            player = down
            moved = True
        if not moved:
            return replace(state, boxes=frozenset(boxes), player=player)
    raise RuntimeError("gravity failed to settle; level has no floor")


def sokoban_step(state: SokobanState, direction: int) -> tuple[SokobanState, list]:
    """Move or push along a signed axis, then resolve gravity."""
    if state.status != "playing":
        return state, [{"kind": "info", "payload": "game over"}]
    target = step(state.player, direction)
    boxes = set(state.boxes)
    if target in state.walls:
        return state, [{"kind": "info", "payload": "blocked by a wall"}]
    if target in boxes:
        beyond = step(target, direction)
        if beyond in state.walls or beyond in boxes or beyond == state.player:
            return state, [{"kind": "info", "payload": "box cannot move"}]
        boxes.discard(target)
        boxes.add(beyond)
    moved = replace(state, boxes=frozenset(boxes), player=target,
                    moves=state.moves + 1)
    settled = _settle(moved)
    events = []
    if settled.targets and settled.targets <= settled.boxes:
        settled = replace(settled, status="won")
        events.append({"kind": "win", "payload": "all boxes delivered"})
    return settled, events


_FLOOR = (226, 222, 208)
_WALL = (130, 120, 126)
_BOX = (196, 130, 56)
_GOLD = (255, 200, 40)


def sokoban_style(state: SokobanState):
    """Column style: each (x, y, z) tile shows its most relevant cell.

    The chosen cell's altitude drives the projection parameter, so raised
    content is drawn shrunk toward the tile center.
    """
    columns: dict = {}
    for cell in state.walls:
        cur = columns.get(cell[:3])
        if cur is None or cur[1] < cell[3]:
            columns[cell[:3]] = ("wall", cell[3])
    for cell in state.targets:
        columns[cell[:3]] = ("target", cell[3])
    for cell in state.boxes:
        columns[cell[:3]] = ("box", cell[3])
    columns[state.player[:3]] = ("player", state.player[3])
    base = min((c[3] for c in state.walls), default=0)

    def style(coord):
        kind, level = columns.get(coord, (None, base))
        altitude = max(0, level - base)
        if kind == "player":
            return TileStyle(fill=_FLOOR, altitude=altitude,
                             labels=(("*", "center", _GOLD),))
        if kind == "box":
            return TileStyle(fill=_BOX, altitude=altitude)
        if kind == "target":
            return TileStyle(fill=_FLOOR, altitude=altitude,
                             labels=(("x", "center", (150, 60, 60)),))
        if kind == "wall":
            return TileStyle(fill=_WALL, altitude=altitude)
        return TileStyle(fill=(205, 206, 214), altitude=0)

    return style
