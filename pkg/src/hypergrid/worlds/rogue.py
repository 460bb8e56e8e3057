"""Minimal turn-based roguelike on Z^d.

Player and enemies alternate turns.  A creature moves to an adjacent cell or
attacks an adjacent creature, destroying it; the game is lost when an enemy
stands next to the player at the end of the enemy phase.  Enemies are not
clever: each one greedily steps along the axis with the largest coordinate
gap to the player (lowest axis index on ties), skipping blocked cells.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from ..scene import TileStyle
from ..tiling import step

GOLD = (255, 200, 40)
GREEN = (70, 200, 70)


@dataclass(frozen=True)
class RogueState:
    d: int
    player: tuple
    enemies: tuple
    walls: frozenset
    seed: int = 0
    status: str = "playing"
    turn: int = 0


def rogue_new(d: int, seed: int, n_enemies: int = 2, arena_radius: int = 6,
              wall_density: float = 0.1) -> RogueState:
    """Arena with sparse random walls; enemies start a few steps away."""
    rng = random.Random(seed)
    cells = _box(d, arena_radius)
    walls = {c for c in cells if rng.random() < wall_density}
    player = (0,) * d
    walls.discard(player)
    enemies = []
    candidates = [c for c in cells
                  if 2 <= _l1(c, player) <= 4 and c not in walls]
    for _ in range(n_enemies):
        pick = candidates[rng.randrange(len(candidates))]
        enemies.append(pick)
        candidates = [c for c in candidates if c != pick]
    return RogueState(d=d, player=player, enemies=tuple(enemies),
                      walls=frozenset(walls), seed=seed)


def rogue_two_attackers() -> RogueState:
    """The two-pursuers setup: both flank the player at distance 2 in d=3."""
    return RogueState(d=3, player=(0, 0, 0),
                      enemies=((1, 1, 0), (1, -1, 0)), walls=frozenset())


def _box(d, radius):
    cells = [()]
    for _ in range(d):
        cells = [c + (v,) for c in cells for v in range(-radius, radius + 1)]
    return cells


def _l1(a, b):
    return sum(abs(x - y) for x, y in zip(a, b))


def rogue_step(state: RogueState, action) -> tuple[RogueState, list]:
    """One full turn: the player's action, then every enemy's pursuit move.

    ``action`` is ("move", code), ("attack", code) or ("wait",) with signed
    axis codes.  Illegal actions reject without consuming the turn.
    """
    events: list = []
    if state.status != "playing":
        return state, [{"kind": "info", "payload": "game over"}]

    kind = action[0]
    player = state.player
    enemies = list(state.enemies)
    if kind == "move":
        target = step(player, action[1])
        if target in state.walls:
            return state, [{"kind": "info", "payload": "blocked by a wall"}]
        if target in enemies:
            return state, [{"kind": "info", "payload": "occupied; attack instead"}]
        player = target
    elif kind == "attack":
        target = step(player, action[1])
        if target not in enemies:
            return state, [{"kind": "info", "payload": "nothing to attack"}]
        enemies.remove(target)
        events.append({"kind": "info", "payload": "enemy destroyed"})
    elif kind != "wait":
        return state, [{"kind": "info", "payload": f"unknown action {kind!r}"}]

    enemies = _enemy_phase(state, player, enemies)

    status = state.status
    if not enemies:
        status = "won"
        events.append({"kind": "win", "payload": "all enemies destroyed"})
    elif any(_l1(e, player) == 1 for e in enemies):
        status = "lost"
        events.append({"kind": "lose", "payload": "an enemy caught you"})
    new = replace(state, player=player, enemies=tuple(enemies), status=status,
                  turn=state.turn + 1)
    return new, events


def _enemy_phase(state, player, enemies):
    moved = []
    taken = set(enemies)
    for enemy in enemies:
        taken.discard(enemy)
        gaps = [(abs(player[a] - enemy[a]), a) for a in range(state.d)
                if player[a] != enemy[a]]
        gaps.sort(key=lambda g: (-g[0], g[1]))
        chosen = enemy
        for _gap, axis in gaps:
            sign = 1 if player[axis] > enemy[axis] else -1
            cand = step(enemy, (axis + 1) * sign)
            if cand in state.walls or cand in taken or cand == player \
                    or cand in moved:
                continue
            chosen = cand
            break
        moved.append(chosen)
        taken.add(chosen)
    return moved


def rogue_style(state: RogueState):
    enemies = set(state.enemies)

    def style(coord):
        if coord in state.walls:
            return TileStyle(fill=(96, 96, 108))
        fill = (228, 226, 214)
        if coord == state.player:
            return TileStyle(fill=fill, labels=(("*", "center", GOLD),))
        if coord in enemies:
            return TileStyle(fill=fill, labels=(("*", "center", GREEN),))
        return TileStyle(fill=fill)

    return style
