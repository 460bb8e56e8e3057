"""Software raycaster for the H^3 honeycombs: pinhole camera, fog, checker.

Every pixel gets a geodesic ray in the canonical cell frame; rays march cell
to cell until they enter a filled cell (`honeycomb.step_rays` in lockstep
batches) or the step budget runs out.  Hits are shaded as the cell's fill
color damped by exp(-distance/4) and a 2x2 checker on the entry face; misses
stay black.  The march is deterministic, so identical inputs give
byte-identical images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hyperboloid as hm
from .honeycomb import (
    NUDGE,
    BatchRays,
    HoneycombSpec,
    Scene,
    face_uv,
    nudge_rays,
    step_rays,
)

FOG_SCALE = 4.0
CHECKER_DIM = 0.72


@dataclass
class ImageBuf:
    width: int
    height: int
    pixels: np.ndarray  # (height, width, 3) uint8, row-major from top-left

    def tobytes(self) -> bytes:
        return self.pixels.tobytes()


def look_rotation(forward, up_hint=(0.0, 1.0, 0.0)) -> np.ndarray:
    """Isometry fixing the origin that turns +z toward ``forward``."""
    f = np.asarray(forward, dtype=float)
    norm = np.linalg.norm(f)
    if norm < 1e-12:
        raise hm.GeometryError("camera forward direction is zero")
    f = f / norm
    up = np.asarray(up_hint, dtype=float)
    r = np.cross(up, f)
    if np.linalg.norm(r) < 1e-9:
        r = np.cross(np.array([1.0, 0.0, 0.0]), f)
    if np.linalg.norm(r) < 1e-9:
        r = np.cross(np.array([0.0, 0.0, 1.0]), f)
    r = r / np.linalg.norm(r)
    u = np.cross(f, r)
    return hm.embed_rotation(np.column_stack([r, u, f]))


def camera_pose(position=(0.0, 0.0, 0.0), forward=(0.0, 0.0, 1.0),
                up_hint=(0.0, 1.0, 0.0)) -> np.ndarray:
    """Camera-to-world isometry from spatial position and view direction."""
    return hm.translation_to(hm.point_from_spatial(position)) @ look_rotation(
        forward, up_hint)


def pixel_directions(width: int, height: int, fov_deg: float) -> np.ndarray:
    """Unit tangent directions at the origin, one per pixel (row-major)."""
    half = math.tan(math.radians(fov_deg) / 2.0)
    xs = (2.0 * (np.arange(width) + 0.5) / width - 1.0) * half
    ys = (1.0 - 2.0 * (np.arange(height) + 0.5) / height) * half * height / width
    px, py = np.meshgrid(xs, ys)
    dirs = np.zeros((height * width, 4))
    dirs[:, 0] = px.ravel()
    dirs[:, 1] = py.ravel()
    dirs[:, 2] = 1.0
    dirs[:, :3] /= np.linalg.norm(dirs[:, :3], axis=1)[:, None]
    return dirs


@dataclass
class TraceResult:
    hit: np.ndarray        # (N,) bool
    color: np.ndarray      # (N, 3) uint8 raw fill color
    traveled: np.ndarray   # (N,)
    uv: np.ndarray         # (N, 2)
    coords: np.ndarray     # (N, d) coordinates of the cells that were hit
    steps: np.ndarray      # (N,)


def trace_batch(spec: HoneycombSpec, scene: Scene, pos, dirs, max_steps: int,
                start_coord=None) -> TraceResult:
    """March N rays from a common start cell until hit or step exhaustion."""
    n = len(dirs)
    pos = np.asarray(pos, dtype=float)
    if pos.ndim == 1:
        pos = np.tile(pos, (n, 1))
    coords0 = np.zeros((n, spec.d), dtype=np.int64)
    if start_coord is not None:
        coords0[:] = np.asarray(start_coord, dtype=np.int64)
    rays = BatchRays(spec, pos, dirs, coords0)

    result = TraceResult(
        hit=np.zeros(n, dtype=bool),
        color=np.zeros((n, 3), dtype=np.uint8),
        traveled=np.zeros(n),
        uv=np.zeros((n, 2)),
        coords=np.tile(coords0, 1).copy(),
        steps=np.zeros(n, dtype=np.int64),
    )
    live = np.arange(n)
    for step in range(max_steps):
        faces, stuck = step_rays(rays)
        filled, colors = scene.fill_many(rays.coords)
        done = filled & ~stuck
        if np.any(done):
            tgt = live[done]
            result.hit[tgt] = True
            result.color[tgt] = colors[done]
            # distance as of stepping just inside the cell, like scalar trace
            result.traveled[tgt] = rays.traveled[done] + NUDGE
            u, v = face_uv(spec, faces[done], rays.pos[done])
            result.uv[tgt, 0] = u
            result.uv[tgt, 1] = v
            result.coords[tgt] = rays.coords[done]
            result.steps[tgt] = rays.steps[done]
        keep = ~done & ~stuck
        if not np.all(keep):
            live = live[keep]
            rays = rays.select(keep)
        if len(live) == 0:
            break
        nudge_rays(rays)  # includes per-step tangent re-projection
    return result


def shade(result: TraceResult) -> np.ndarray:
    """Fog and checker shading of raw hit colors; misses are black."""
    fog = np.exp(-result.traveled / FOG_SCALE)
    checker = (np.floor(result.uv[:, 0] * 2.0)
               + np.floor(result.uv[:, 1] * 2.0)).astype(np.int64) % 2
    factor = np.where(checker == 0, 1.0, CHECKER_DIM) * fog
    rgb = result.color.astype(float) * factor[:, None]
    rgb[~result.hit] = 0.0
    return np.clip(np.rint(rgb), 0, 255).astype(np.uint8)


def render(spec: HoneycombSpec, scene: Scene, camera: np.ndarray, width: int,
           height: int, fov: float = 90.0, max_steps: int = 600,
           start_coord=None) -> ImageBuf:
    """Render the scene through a pinhole camera placed inside the start cell."""
    if width <= 0 or height <= 0:
        raise ValueError("image dimensions must be positive")
    hm.assert_isometry(camera)
    pos = camera @ hm.origin(3)
    gaps = spec.normals @ (hm.form_signs(4) * pos)
    if np.max(gaps) > 1e-9:
        raise hm.GeometryError("camera position is outside the canonical cell")
    local = pixel_directions(width, height, fov)
    dirs = local @ camera.T
    result = trace_batch(spec, scene, pos, dirs, max_steps, start_coord)
    rgb = shade(result)
    return ImageBuf(width=width, height=height,
                    pixels=rgb.reshape(height, width, 3))
