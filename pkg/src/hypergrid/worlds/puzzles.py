"""Spatial-intuition puzzles: the sealed 3D house and find-the-center.

The house is a 5x5x5 cube of wall cells living in the slice w = 0 of Z^4;
its interior is unreachable within that slice but trivially entered through
the fourth axis.  Find-the-center places the player near the corner of a
hypercube or orthoplex and asks them to walk to the all-zeros cell.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..scene import TileStyle
from ..tiling import step

HOUSE_HALF = 2  # wall shell of the 5x5x5 block spans -2..2 in axes 1..3


@dataclass(frozen=True)
class PuzzleState:
    kind: str          # "house" | "cube" | "orthoplex"
    d: int
    r: int
    player: tuple
    solved: bool = False


def house_new() -> PuzzleState:
    return PuzzleState(kind="house", d=4, r=HOUSE_HALF, player=(0, 0, 0, 2))


def center_new(kind: str = "cube", d: int = 4, r: int = 4,
               player: tuple | None = None) -> PuzzleState:
    if kind not in ("cube", "orthoplex"):
        raise ValueError(f"unknown center puzzle shape {kind!r}")
    if player is None:
        player = (r,) * d
    return PuzzleState(kind=kind, d=d, r=r, player=tuple(player))


def house_walls():
    """All wall cells of the house: the boundary of the block, in slice w=0."""
    cells = set()
    rng = range(-HOUSE_HALF, HOUSE_HALF + 1)
    for x in rng:
        for y in rng:
            for z in rng:
                if max(abs(x), abs(y), abs(z)) == HOUSE_HALF:
                    cells.add((x, y, z, 0))
    return cells


def classify_cell(state: PuzzleState, coord: tuple) -> str:
    if all(c == 0 for c in coord):
        return "center"
    if state.kind == "house":
        spatial = max(abs(c) for c in coord[:3])
        if coord[3] == 0 and spatial == HOUSE_HALF:
            return "wall"
        if coord[3] == 0 and spatial < HOUSE_HALF:
            return "inside"
        return "outside"
    if state.kind == "cube":
        return "inside" if max(abs(c) for c in coord) < state.r else "outside"
    return "inside" if sum(abs(c) for c in coord) < state.r else "outside"


def puzzle_step(state: PuzzleState, direction: int) -> tuple[PuzzleState, list]:
    target = step(state.player, direction)
    if classify_cell(state, target) == "wall":
        return state, [{"kind": "info", "payload": "blocked by a wall"}]
    solved = state.solved or all(c == 0 for c in target)
    events = []
    if solved and not state.solved:
        events.append({"kind": "win", "payload": "center reached"})
    return replace(state, player=target, solved=solved), events


def puzzle_solved(state: PuzzleState) -> bool:
    return state.solved


_FILLS = {
    "wall": (220, 50, 50),
    "inside": (240, 215, 70),
    "center": (255, 255, 255),
    "outside": (198, 205, 216),
}


def puzzle_style(state: PuzzleState):
    def style(coord):
        fill = _FILLS[classify_cell(state, coord)]
        if coord == state.player:
            return TileStyle(fill=fill, labels=(("*", "center", (255, 200, 40)),))
        return TileStyle(fill=fill)

    return style
