"""Four-axis just-intonation pitch space.

A cell (x, y, z, t) sounds at the ratio (3/2)^x (4/3)^y (5/4)^z (7/5)^t to
the base frequency; neighboring cells are consonant intervals.  Ratios are
exact fractions so composing intervals is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..scene import TileStyle

GENERATORS = (Fraction(3, 2), Fraction(4, 3), Fraction(5, 4), Fraction(7, 5))


@dataclass(frozen=True)
class PitchState:
    base_freq: float = 261.63
    cell: tuple = (0, 0, 0, 0)


def pitch_ratio(cell: tuple) -> Fraction:
    """Exact interval ratio of a cell relative to the origin."""
    ratio = Fraction(1)
    for gen, exponent in zip(GENERATORS, cell):
        ratio *= gen ** exponent
    return ratio


def pitch_frequency(state: PitchState, cell: tuple | None = None) -> float:
    ratio = pitch_ratio(state.cell if cell is None else cell)
    return state.base_freq * ratio.numerator / ratio.denominator


_AXIS_TINTS = ((235, 140, 120), (140, 200, 235), (170, 225, 150), (220, 180, 235))


def pitch_style(state: PitchState, focus_coord: tuple):
    """Soft per-cell tint from the exponents; the focused cell shows its ratio."""

    def style(coord):
        fill = [245, 245, 240]
        for axis, tint in enumerate(_AXIS_TINTS):
            weight = coord[axis] - focus_coord[axis]
            if weight:
                shade = max(-3, min(3, weight))
                for c in range(3):
                    fill[c] = int(fill[c] + (tint[c] - fill[c]) * abs(shade) / 6
                                  * (1 if shade > 0 else 0.55))
        fill = tuple(max(0, min(255, int(v))) for v in fill)
        if coord == focus_coord:
            ratio = pitch_ratio(coord)
            text = f"{ratio.numerator}/{ratio.denominator}"
            return TileStyle(fill=fill, labels=((text, "center", (30, 30, 30)),))
        return TileStyle(fill=fill)

    return style
