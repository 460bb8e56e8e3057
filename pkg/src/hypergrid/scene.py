"""Renderer-agnostic 2D drawing lists over the Poincare disk.

A frame is a list of sampled polygons in unit-disk coordinates plus label
positions; clients only ever draw straight segments between the samples.
Projection uses the stereographic map (x, y, z) -> (x/(w+z), y/(w+z)); w = 1
gives the standard disk, larger w shrinks a tile toward the center, which is
how altitude is shown in worlds with gravity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import hyperboloid as hm
from .tiling import TilePatch

SAMPLES_PER_EDGE = 8
DEFAULT_CUTOFF = 5.0


@dataclass(frozen=True)
class Camera2D:
    """World-to-view isometry plus projection parameters."""

    view: np.ndarray
    w_base: float = 1.0
    altitude_scale: float = 0.0

    @staticmethod
    def identity() -> "Camera2D":
        return Camera2D(view=np.eye(3))


@dataclass(frozen=True)
class TileStyle:
    fill: tuple  # (r, g, b), 0..255
    labels: tuple = ()  # of (text, anchor, (r, g, b)); anchor: "center" or edge index
    altitude: int | None = None


@dataclass
class Poly:
    tile_id: int
    coord: tuple
    boundary: np.ndarray  # (m, 2) disk points
    fill: tuple
    labels: list  # of (text, (x, y), color)


@dataclass
class SceneFrame:
    frame_seq: int
    polys: list[Poly] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)


@lru_cache(maxsize=8)
def _canonical_boundary(d: int) -> np.ndarray:
    """Sampled boundary of the centered 2d-gon, 8 points per edge, CCW."""
    from .tiling import polygon_metrics

    params = polygon_metrics(d)
    p = params.p
    corners = []
    for c in range(p):
        beta = 2.0 * math.pi * (c + 0.5) / p
        corners.append(np.array([math.sinh(params.circumradius) * math.cos(beta),
                                 math.sinh(params.circumradius) * math.sin(beta),
                                 math.cosh(params.circumradius)]))
    fractions = np.arange(SAMPLES_PER_EDGE) / SAMPLES_PER_EDGE
    chunks = []
    for k in range(p):
        a = corners[(k - 1) % p]
        b = corners[k]
        chunks.append(hm.geodesic_between(a, b, fractions))
    return np.vstack(chunks)


@lru_cache(maxsize=8)
def _label_anchors(d: int) -> np.ndarray:
    """Hyperboloid anchor points: index 0..2d-1 near each edge, 2d = center."""
    from .tiling import polygon_metrics

    params = polygon_metrics(d)
    rows = []
    rho = 0.68 * params.inradius
    for k in range(params.p):
        alpha = 2.0 * math.pi * k / params.p
        rows.append([math.sinh(rho) * math.cos(alpha),
                     math.sinh(rho) * math.sin(alpha),
                     math.cosh(rho)])
    rows.append([0.0, 0.0, 1.0])
    return np.array(rows)


def build_frame(patch: TilePatch, camera: Camera2D, style_fn, cutoff: float,
                seed_tile: int = 0, frame_seq: int = 0) -> SceneFrame:
    """Project every tile whose center is within ``cutoff`` of the view center.

    The patch is grown as needed; exploration starts from ``seed_tile`` which
    should be (near) the current center of view.
    """
    if cutoff <= 0:
        raise ValueError("cutoff must be positive")
    view = camera.view
    bound = cutoff + 2.0 * patch.params.circumradius

    def view_dist(tid):
        c = view @ patch.center(tid)
        return math.acosh(max(1.0, c[2]))

    visible = []
    seen = {seed_tile}
    queue = [seed_tile]
    while queue:
        tid = queue.pop()
        dist = view_dist(tid)
        if dist > bound:
            continue
        if dist <= cutoff:
            visible.append(tid)
        for k in range(patch.n_edges):
            nid = patch.neighbor(tid, k)
            if nid not in seen:
                seen.add(nid)
                queue.append(nid)

    boundary = _canonical_boundary(patch.d)
    anchors = _label_anchors(patch.d)
    frame = SceneFrame(frame_seq=frame_seq)
    for tid in sorted(visible):
        tile = patch.tile(tid)
        style = style_fn(tile.coord)
        if style is None:
            continue
        w = camera.w_base + camera.altitude_scale * (style.altitude or 0)
        m = view @ patch.placement(tid)
        pts = boundary @ m.T
        disk = pts[:, :2] / (w + pts[:, 2:3])
        labels = []
        if style.labels:
            apts = anchors @ m.T
            adisk = apts[:, :2] / (w + apts[:, 2:3])
            for text, anchor, color in style.labels:
                idx = patch.n_edges if anchor == "center" else int(anchor)
                labels.append((text, (float(adisk[idx, 0]), float(adisk[idx, 1])), color))
        frame.polys.append(Poly(tile_id=tid, coord=tile.coord, boundary=disk,
                                fill=style.fill, labels=labels))
    return frame


def recenter_steps(patch: TilePatch, camera: Camera2D, target: int,
                   n_steps: int) -> list[Camera2D]:
    """Cameras interpolating along the geodesic to the target tile's center."""
    if not 0 <= target < len(patch):
        raise ValueError(f"unknown tile {target}")
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    goal = camera.view @ patch.center(target)
    dist = math.acosh(max(1.0, goal[2]))
    if dist < 1e-12:
        return [camera] * n_steps
    u = hm.tangent_toward(hm.origin(2), goal)
    out = []
    for i in range(1, n_steps + 1):
        q = hm.geodesic_at(hm.origin(2), u, dist * i / n_steps)
        view = hm.reorthonormalize(hm.inverse(hm.translation_to(q)) @ camera.view)
        out.append(Camera2D(view=view, w_base=camera.w_base,
                            altitude_scale=camera.altitude_scale))
    return out


def pick(frame: SceneFrame, at) -> int | None:
    """Tile whose sampled polygon contains the disk point (even-odd rule)."""
    x, y = float(at[0]), float(at[1])
    if x * x + y * y >= 1.0:
        return None
    for poly in frame.polys:
        if _contains(poly.boundary, x, y):
            return poly.tile_id
    return None


def _contains(boundary: np.ndarray, x: float, y: float) -> bool:
    bx = boundary[:, 0]
    by = boundary[:, 1]
    nx = np.roll(bx, -1)
    ny = np.roll(by, -1)
    straddles = (by > y) != (ny > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        cross_x = bx + (y - by) * (nx - bx) / (ny - by)
    hits = straddles & (cross_x > x)
    return bool(np.count_nonzero(hits) % 2)
