"""Visualize and navigate d-dimensional integer grids via hyperbolic geometry.

The package maps Z^d (3 <= d <= 6) onto the right-angled {2d,4} tessellation
of the hyperbolic plane and, for d = 4 and 6, onto the {3,4,4} and {5,3,4}
honeycombs of hyperbolic 3-space.  On top of the geometry it provides a
2D scene builder, a software honeycomb raycaster, several small interactive
worlds (color picker, pitch space, roguelike, puzzles, Sokoban with gravity),
and a newline-delimited JSON protocol plus CLI to drive them.
"""

__version__ = "0.1.0"
