"""Right-angled honeycombs of H^3 and the cell-to-cell geodesic ray marcher.

Two honeycombs carry integer-grid coordinates here: the octahedral {3,4,4}
(cells labeled by Z^4, ideal vertices) and the dodecahedral {5,3,4} (Z^6,
material vertices).  Both have right dihedral angles, so the isometry onto
the neighbor across a face is the reflection in that face's plane, and the
four cells around any edge close up exactly.

A ray is marched cell to cell: intersect the ray with all face planes of the
canonical cell, cross the nearest face, re-express position and direction in
the neighbor's canonical frame, and update the Z^d coordinate by the crossed
face's direction label.  As with the 2D tiling, crossing face f flips that
face's label to -delta and hands +delta to the opposite face; all other face
labels are unchanged (the relabel permutation of a reflection crossing is the
identity).

The batch tracer marches many rays in lockstep over numpy arrays; the scalar
`advance`/`trace` operations are one-ray wrappers over the same kernel, so
there is exactly one implementation of the marching rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import hyperboloid as hm

NUDGE = 1e-9  # advance past a crossed plane so it cannot be re-hit
# Longest representable single-cell transit.  Rays grazing an ideal vertex
# are asymptotic to its faces; the solver then reports transits with
# e^t-sized coordinates that double precision cannot carry.  Such rays are
# dropped as stuck (they would be fogged to black regardless).
MAX_TRANSIT = 11.0
GOLD = (255, 215, 0)
SILVER = (192, 192, 192)


@dataclass(frozen=True)
class HoneycombSpec:
    """Face data of one honeycomb cell type, canonical cell at the origin."""

    name: str
    d: int
    face_count: int
    normals: np.ndarray        # (2d, 4) outward unit spacelike
    opposite: np.ndarray       # (2d,) pairing of faces
    cross: np.ndarray          # (2d, 4, 4) neighbor -> canonical isometries
    relabel: np.ndarray        # (2d, 2d) face index permutation per crossing
    adjacent: np.ndarray       # (2d, 2d) bool, faces sharing an edge
    vertices: np.ndarray       # (V, 4) cell vertex vectors (ideal: lightlike)
    vertex_character: str      # "ideal" | "material"
    face_u: np.ndarray         # (2d, 4) per-face texture basis
    face_v: np.ndarray


def _face_frame(normal: np.ndarray):
    """Texture basis: two unit spacelike vectors spanning the face's plane."""
    signs = hm.form_signs(4)
    o = hm.origin(3)
    center = o - hm.minkowski_inner(o, normal) * normal
    center = center / math.sqrt(-hm.minkowski_inner(center, center))
    basis = []
    for cand in np.eye(4)[:3]:
        w = cand + hm.minkowski_inner(cand, center) * center
        w = w - hm.minkowski_inner(w, normal) * normal
        for prev in basis:
            w = w - hm.minkowski_inner(w, prev) * prev
        norm = hm.minkowski_inner(w, w)
        if norm > 1e-9:
            basis.append(w / math.sqrt(norm))
        if len(basis) == 2:
            break
    return basis[0], basis[1]


def _build_spec(name, d, spatial_axes, a, b, vertices):
    """Assemble a spec from face axis directions and the normal profile (a, b)."""
    n_faces = 2 * d
    normals = np.zeros((n_faces, 4))
    for i, u in enumerate(spatial_axes):
        normals[i, :3] = a * u
        normals[i, 3] = b
    signs = hm.form_signs(4)
    gram = normals @ (signs * normals).T
    adjacent = np.abs(gram) < 1e-9
    opposite = np.empty(n_faces, dtype=int)
    for i in range(n_faces):
        cands = [j for j in range(n_faces)
                 if j != i and np.allclose(normals[j, :3], -normals[i, :3], atol=1e-12)]
        assert len(cands) == 1
        opposite[i] = cands[0]
    cross = np.stack([hm.reflect_in_plane(normals[i]) for i in range(n_faces)])
    # reflection crossings keep face indexing aligned; verify numerically that
    # reflecting a neighbor's face planes back lands on the canonical ones
    relabel = np.tile(np.arange(n_faces), (n_faces, 1))
    for f in range(n_faces):
        back = (cross[f] @ (cross[f] @ normals.T)).T
        assert np.max(np.abs(back - normals)) < 1e-9
    fu, fv = zip(*[_face_frame(normals[i]) for i in range(n_faces)])
    return HoneycombSpec(
        name=name, d=d, face_count=n_faces, normals=normals, opposite=opposite,
        cross=cross, relabel=relabel, adjacent=adjacent,
        vertices=np.asarray(vertices, dtype=float),
        vertex_character="ideal" if name == "344" else "material",
        face_u=np.stack(fu), face_v=np.stack(fv))


def spec_344() -> HoneycombSpec:
    """The octahedral honeycomb {3,4,4}: Z^4 coordinates, ideal vertices.

    Face normals point along (+-1, +-1, +-1); right dihedral angles force the
    profile (a, b) = (1/sqrt2, 1/sqrt2).  Faces 0..3 carry sign vectors with
    positive product, faces 4..7 are their opposites.
    """
    signs3 = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    axes = [np.array(s, dtype=float) for s in signs3]
    axes += [-u for u in axes]
    # vertices: ideal points along the six coordinate half-axes
    verts = []
    for ax in range(3):
        for sgn in (1.0, -1.0):
            v = np.zeros(4)
            v[ax] = sgn
            v[3] = 1.0
            verts.append(v)
    return _build_spec("344", 4, [u / math.sqrt(3.0) for u in axes],
                       a=math.sqrt(1.5), b=math.sqrt(0.5), vertices=verts)


def spec_534() -> HoneycombSpec:
    """The right-angled dodecahedral honeycomb {5,3,4}: Z^6, material vertices.

    Face axes are icosahedron vertex directions; right angles between
    edge-sharing faces force a^2 = (5 + sqrt5)/4, b^2 = a^2 - 1.
    """
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    reps = [(0, phi, 1), (0, phi, -1), (phi, 1, 0), (phi, -1, 0),
            (1, 0, phi), (1, 0, -phi)]
    axes = [np.array(r) / np.linalg.norm(r) for r in reps]
    axes += [-u for u in axes]
    a = math.sqrt((5.0 + math.sqrt(5.0)) / 4.0)
    b = math.sqrt(a * a - 1.0)
    # vertices along dodecahedron vertex directions, lifted to the radius
    # where the three incident face planes meet
    raw = [(sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
    raw += [(0, sy / phi, sz * phi) for sy in (1, -1) for sz in (1, -1)]
    raw += [(sy / phi, sz * phi, 0) for sy in (1, -1) for sz in (1, -1)]
    raw += [(sz * phi, 0, sy / phi) for sy in (1, -1) for sz in (1, -1)]
    verts = []
    for w in raw:
        w = np.array(w, dtype=float)
        w /= np.linalg.norm(w)
        dots = sorted((float(u @ w) for u in axes), reverse=True)
        rho = math.atanh(b / (a * dots[0]))
        verts.append(np.append(math.sinh(rho) * w, math.cosh(rho)))
    return _build_spec("534", 6, axes, a=a, b=b, vertices=verts)


def honeycomb_spec(name: str) -> HoneycombSpec:
    if name in ("344", "3,4,4"):
        return spec_344()
    if name in ("534", "5,3,4"):
        return spec_534()
    raise ValueError(f"unknown honeycomb {name!r}")


def canonical_face_dirs(d: int) -> np.ndarray:
    """Face k -> +e_k for k < d, face k+d -> -e_k (codes +-1..+-d)."""
    return np.concatenate([np.arange(1, d + 1), -np.arange(1, d + 1)]).astype(np.int8)


# -- batch marching kernel ----------------------------------------------------


class BatchRays:
    """Mutable state of many rays marched in lockstep (one row per ray)."""

    def __init__(self, spec: HoneycombSpec, pos, dirs, coords=None):
        n = len(pos)
        self.spec = spec
        self.pos = np.array(pos, dtype=float)
        self.dir = np.array(dirs, dtype=float)
        if coords is None:
            coords = np.zeros((n, spec.d), dtype=np.int64)
        self.coords = np.array(coords, dtype=np.int64)
        self.face_dirs = np.tile(canonical_face_dirs(spec.d), (n, 1))
        self.traveled = np.zeros(n)
        self.steps = np.zeros(n, dtype=np.int64)

    def select(self, idx):
        out = BatchRays.__new__(BatchRays)
        out.spec = self.spec
        for name in ("pos", "dir", "coords", "face_dirs", "traveled", "steps"):
            setattr(out, name, getattr(self, name)[idx])
        return out


def _signed_normals(spec):
    return spec.normals * hm.form_signs(4)


def step_rays(rays: BatchRays):
    """Advance every ray one cell; returns (crossed faces, stuck mask).

    Stuck rays (no exit plane found, numerically impossible for a proper
    cell) are flagged and must be discarded by the caller.
    """
    spec = rays.spec
    jn = _signed_normals(spec).T  # (4, 2d)
    a = rays.pos @ jn
    b = rays.dir @ jn
    valid = (b > np.abs(a)) & (a <= 1e-12)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(valid, -a / b, 0.0)
        t = np.where(valid, np.arctanh(np.clip(ratio, 0.0, 1.0 - 1e-16)), np.inf)
    faces = np.argmin(t, axis=1)
    rows = np.arange(len(faces))
    t_hit = t[rows, faces]
    stuck = ~np.isfinite(t_hit) | (t_hit > MAX_TRANSIT)
    t_hit = np.where(stuck, 0.0, t_hit)

    ch = np.cosh(t_hit)[:, None]
    sh = np.sinh(t_hit)[:, None]
    new_pos = rays.pos * ch + rays.dir * sh
    new_dir = rays.pos * sh + rays.dir * ch
    for f in range(spec.face_count):
        sel = faces == f
        if np.any(sel):
            new_pos[sel] = new_pos[sel] @ spec.cross[f].T
            new_dir[sel] = new_dir[sel] @ spec.cross[f].T
    rays.pos = new_pos
    rays.dir = new_dir

    delta = rays.face_dirs[rows, faces].astype(np.int64)
    axes = np.abs(delta) - 1
    rays.coords[rows, axes] += np.sign(delta)
    opp = spec.opposite[faces]
    rays.face_dirs[rows, faces] = -delta
    rays.face_dirs[rows, opp] = delta
    rays.traveled = rays.traveled + t_hit
    rays.steps = rays.steps + 1
    return faces, stuck


def nudge_rays(rays: BatchRays):
    """Move just past the crossed plane so it cannot be hit again.

    Always re-projects the pair onto the hyperboloid and its tangent space:
    a stray tangency of size eps grows like e^(2t) per marching step, so it
    must be removed every step, not on the relaxed cadence that suffices for
    isometry composition.
    """
    rays.pos = rays.pos + rays.dir * NUDGE
    rays.traveled = rays.traveled + NUDGE
    renormalize_rays(rays)


def renormalize_rays(rays: BatchRays):
    signs = hm.form_signs(4)
    q = -np.sum(rays.pos * rays.pos * signs, axis=1)
    rays.pos = rays.pos / np.sqrt(q)[:, None]
    tangency = np.sum(rays.dir * rays.pos * signs, axis=1)
    rays.dir = rays.dir + tangency[:, None] * rays.pos
    norm = np.sum(rays.dir * rays.dir * signs, axis=1)
    rays.dir = rays.dir / np.sqrt(norm)[:, None]


def face_uv(spec, faces, pos):
    """Texture coordinates of entry points lying on the given faces."""
    signs = hm.form_signs(4)
    u = np.sum(pos * (spec.face_u[faces] * signs), axis=1)
    v = np.sum(pos * (spec.face_v[faces] * signs), axis=1)
    return u, v


# -- scalar surface ------------------------------------------------------------


@dataclass(frozen=True)
class RayState:
    coord: tuple
    face_dirs: tuple
    pos: np.ndarray
    dir: np.ndarray
    traveled: float = 0.0
    steps: int = 0


@dataclass(frozen=True)
class Hit:
    color: tuple
    traveled: float
    uv: tuple
    coord: tuple
    steps: int


def initial_ray(spec: HoneycombSpec, pos=None, direction=None,
                coord=None) -> RayState:
    if pos is None:
        pos = hm.origin(3)
    if direction is None:
        direction = hm.project_direction(pos, spec.normals[0])
    hm.assert_point(pos, tol=1e-7)
    hm.assert_direction(direction, pos)
    return RayState(coord=tuple(coord) if coord else (0,) * spec.d,
                    face_dirs=tuple(canonical_face_dirs(spec.d)),
                    pos=np.asarray(pos, dtype=float),
                    dir=np.asarray(direction, dtype=float))


def _state_to_batch(spec, state):
    rays = BatchRays(spec, state.pos[None, :], state.dir[None, :],
                     np.array([state.coord]))
    rays.face_dirs = np.array([state.face_dirs], dtype=np.int8)
    rays.traveled = np.array([state.traveled])
    rays.steps = np.array([state.steps], dtype=np.int64)
    return rays


def _batch_to_state(rays) -> RayState:
    return RayState(coord=tuple(int(c) for c in rays.coords[0]),
                    face_dirs=tuple(int(x) for x in rays.face_dirs[0]),
                    pos=rays.pos[0], dir=rays.dir[0],
                    traveled=float(rays.traveled[0]), steps=int(rays.steps[0]))


def advance(spec: HoneycombSpec, state: RayState):
    """Cross into the next cell; returns (new state, crossed face index)."""
    gaps = spec.normals @ (hm.form_signs(4) * state.pos)
    if np.max(gaps) > 1e-7:
        raise hm.GeometryError("ray position is outside the canonical cell")
    rays = _state_to_batch(spec, state)
    faces, stuck = step_rays(rays)
    if stuck[0]:
        raise RuntimeError("ray failed to exit the cell")
    nudge_rays(rays)
    return _batch_to_state(rays), int(faces[0])


def trace(spec: HoneycombSpec, scene, state: RayState, max_steps: int):
    """March until a filled cell is entered; None after max_steps misses."""
    for _ in range(max_steps):
        state, crossed = advance(spec, state)
        color = scene.fill(state.coord)
        if color is not None:
            u, v = face_uv(spec, np.array([crossed]), state.pos[None, :])
            return Hit(color=color, traveled=float(state.traveled),
                       uv=(float(u[0]), float(v[0])),
                       coord=state.coord, steps=int(state.steps))
    return None


# -- scenes --------------------------------------------------------------------


@dataclass(frozen=True)
class Scene:
    """Pure coordinate predicate: which cells are filled, and their colors."""

    key: str
    title: str
    d: int
    fill_batch: Callable

    def fill_many(self, coords):
        coords = np.asarray(coords, dtype=np.int64)
        return self.fill_batch(coords)

    def fill(self, coord):
        mask, colors = self.fill_many(np.asarray([coord], dtype=np.int64))
        if not mask[0]:
            return None
        return tuple(int(c) for c in colors[0])


def _paint(n, mask_color_pairs):
    """Combine (mask, color) pairs; earlier pairs take precedence."""
    filled = np.zeros(n, dtype=bool)
    colors = np.zeros((n, 3), dtype=np.uint8)
    for mask, color in mask_color_pairs:
        use = mask & ~filled
        colors[use] = color
        filled |= mask
    return filled, colors


def scene_catalog(d: int = 4) -> list[Scene]:
    """The ten bundled coordinate scenes (A)-(J) for the given grid dimension.

    Extents the catalog leaves open are fixed as: the cage (A) is the frame
    of the |z_i| <= 2 box (cells with at least two coordinates at magnitude
    2); hyperplane walls are one cell thick; diagonal tunnels keep cells
    within Chebyshev distance 1 of the diagonal line.
    """
    if d not in (4, 6):
        raise ValueError("scenes are defined for d = 4 or 6")

    def cage(z):
        inside = np.max(np.abs(z), axis=1) <= 2
        bars = np.sum(np.abs(z) == 2, axis=1) >= 2
        golden = np.all(z == 0, axis=1)
        return _paint(len(z), [(golden, GOLD), (inside & bars, (210, 210, 215))])

    def tunnel_1d(z):
        open_ = np.all(z[:, 1:] == 0, axis=1)
        return _paint(len(z), [(~open_, (255, 32, 32))])

    def skeleton(z):
        odd = np.sum(z % 2 != 0, axis=1)
        return _paint(len(z), [(odd <= 1, (235, 235, 240))])

    def tunnel_2d(z):
        open_ = np.all(z[:, 2:] == 0, axis=1)
        return _paint(len(z), [(~open_, (255, 140, 0))])

    if d == 4:
        def hyperplanes_2(z):
            return _paint(len(z), [(z[:, 0] == -1, (40, 40, 255)),
                                   (z[:, 0] == 1, (0, 230, 70))])
    else:
        # higher-dimensional variant: the open tunnel is codimension 2
        def hyperplanes_2(z):
            wall = (z[:, 0] != 0) | (z[:, 1] != 0)
            lead = np.where(z[:, 0] != 0, z[:, 0], z[:, 1])
            return _paint(len(z), [(wall & (lead > 0), (0, 230, 70)),
                                   (wall, (40, 40, 255))])

    def hyperplanes_3(z):
        return _paint(len(z), [(z[:, 0] == -1, (0, 235, 235)),
                               (z[:, 0] == 2, (0, 230, 70))])

    def orthogonal(z):
        return _paint(len(z), [(z[:, 0] == 1, (255, 40, 40)),
                               (z[:, 1] == 1, (255, 235, 40))])

    def quarterspaces(z):
        x, y = z[:, 0], z[:, 1]
        return _paint(len(z), [((x >= 2) & (y >= 2), (255, 40, 40)),
                               ((x >= 2) & (y <= -2), (255, 235, 40)),
                               ((x <= -2) & (y >= 2), (0, 235, 235)),
                               ((x <= -2) & (y <= -2), (40, 40, 255))])

    def diag_partial(z):
        head = z[:, :-1]
        spread = head.max(axis=1) - head.min(axis=1)
        near = (spread <= 2) & (np.abs(z[:, -1]) <= 1)
        parity = np.sum(z, axis=1) % 2 == 0
        return _paint(len(z), [(~near & parity, GOLD), (~near, SILVER)])

    def diag_full(z):
        spread = z.max(axis=1) - z.min(axis=1)
        near = spread <= 2
        parity = np.sum(z, axis=1) % 2 == 0
        return _paint(len(z), [(~near & parity, (170, 40, 240)),
                               (~near, (130, 130, 130))])

    entries = [
        ("A", "cage with a golden center", cage),
        ("B", "one-dimensional tunnel", tunnel_1d),
        ("C", "skeleton of period-2 cubes", skeleton),
        ("D", "two-dimensional tunnel", tunnel_2d),
        ("E", "parallel walls at distance 2", hyperplanes_2),
        ("F", "parallel walls at distance 3", hyperplanes_3),
        ("G", "two orthogonal walls", orthogonal),
        ("H", "four quarterspaces", quarterspaces),
        ("I", "diagonal tunnel in all axes but one", diag_partial),
        ("J", "diagonal tunnel", diag_full),
    ]
    return [Scene(key=k, title=t, d=d, fill_batch=f) for k, t, f in entries]


def scene_by_key(key: str, d: int = 4) -> Scene:
    for scene in scene_catalog(d):
        if scene.key == key.upper():
            return scene
    raise ValueError(f"no scene {key!r}")


def empty_scene(d: int) -> Scene:
    return Scene(key="-", title="empty", d=d,
                 fill_batch=lambda z: (np.zeros(len(z), dtype=bool),
                                       np.zeros((len(z), 3), dtype=np.uint8)))


def suggested_start(key: str, d: int = 4) -> tuple:
    """A cell from which the scene is visible and the camera sits in the open."""
    if key.upper() in ("A", "C"):
        return (1, 1) + (0,) * (d - 2)
    return (0,) * d
