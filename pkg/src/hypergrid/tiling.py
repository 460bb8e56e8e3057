"""The right-angled {2d,4} tessellation of H^2 with integer-grid labels.

Every tile carries a coordinate in Z^d and a bijective labeling of its 2d
edges by the signed unit vectors +-e_1 .. +-e_d, with opposite edges carrying
opposite directions.  Crossing an edge changes the coordinate by that edge's
direction, so tiles sharing an edge are exactly the tiles whose coordinates
differ by one signed unit step.

Crossing convention: the canonical isometry across edge k is the reflection
in that edge's geodesic line.  Reflections make the four placements around a
vertex compose to the exact identity (the two edge lines at a corner meet at
a right angle), so tile identity and edge indexing are independent of the
discovery path.  Under this convention the neighbor's labeling equals the
current tile's except that the crossed edge flips to -delta and its opposite
edge becomes +delta.

Signed axes are encoded as nonzero ints: +(a+1) / -(a+1) for axis a.  Tile
identity is purely combinatorial (neighbor links plus order-4 vertex
closure); floating point never decides identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import hyperboloid as hm


class PatchConflictError(RuntimeError):
    """Two discovery paths disagreed about a tile; must never happen."""


@dataclass(frozen=True)
class TilingParams:
    """Metric data of the {2d,4} tiling: a 2d-gon with right corners."""

    d: int
    p: int
    q: int
    circumradius: float
    inradius: float
    edge_length: float


def polygon_metrics(d: int) -> TilingParams:
    """Circumradius, inradius and edge length of the {2d,4} cell.

    Uses the characteristic right triangle of a regular {p,q} polygon:
    cosh R = cot(pi/p) cot(pi/q), cosh r = cos(pi/q)/sin(pi/p),
    cosh(l/2) = cos(pi/p)/sin(pi/q).
    """
    if not 3 <= d <= 6:
        raise hm.GeometryError(f"dimension {d} outside supported range 3..6")
    p, q = 2 * d, 4
    circum = math.acosh(1.0 / (math.tan(math.pi / p) * math.tan(math.pi / q)))
    inrad = math.acosh(math.cos(math.pi / q) / math.sin(math.pi / p))
    edge = 2.0 * math.acosh(math.cos(math.pi / p) / math.sin(math.pi / q))
    return TilingParams(d=d, p=p, q=q, circumradius=circum,
                        inradius=inrad, edge_length=edge)


def step(coord: tuple, direction: int) -> tuple:
    """Move a Z^d coordinate one cell along a signed axis."""
    ax = abs(direction) - 1
    delta = 1 if direction > 0 else -1
    return coord[:ax] + (coord[ax] + delta,) + coord[ax + 1:]


def canonical_dirs(d: int) -> tuple:
    """Edge labeling of the central tile: edge k -> +e_k, edge k+d -> -e_k."""
    return tuple(range(1, d + 1)) + tuple(range(-1, -d - 1, -1))


def mirrored_dirs(dirs: tuple, k: int, d: int) -> tuple:
    new = list(dirs)
    new[k] = -dirs[k]
    new[(k + d) % (2 * d)] = dirs[k]
    return tuple(new)


class Tile:
    __slots__ = ("id", "coord", "edge_dirs", "neighbors", "parent", "ring")

    def __init__(self, tid, coord, edge_dirs, n_edges, parent, ring):
        self.id = tid
        self.coord = coord
        self.edge_dirs = edge_dirs
        self.neighbors = [None] * n_edges
        self.parent = parent          # (parent id, crossed edge) or None
        self.ring = ring

    def __repr__(self):
        return f"Tile({self.id}, coord={self.coord})"


class TilePatch:
    """Lazily grown patch of the labeled tessellation around a central tile."""

    def __init__(self, d: int):
        self.params = polygon_metrics(d)
        self.d = d
        self.n_edges = 2 * d
        self.central = 0
        self.tiles: list[Tile] = [
            Tile(0, (0,) * d, canonical_dirs(d), self.n_edges, None, 0)
        ]
        self.conflicts = 0
        self._steps = self._edge_reflections()
        self._placements: dict[int, np.ndarray] = {0: np.eye(3)}

    def _edge_reflections(self):
        r = self.params.inradius
        mats = []
        for k in range(self.n_edges):
            alpha = 2.0 * math.pi * k / self.params.p
            normal = np.array([math.cosh(r) * math.cos(alpha),
                               math.cosh(r) * math.sin(alpha),
                               math.sinh(r)])
            mats.append(hm.reflect_in_plane(normal))
        return mats

    def __len__(self):
        return len(self.tiles)

    def tile(self, tid: int) -> Tile:
        return self.tiles[tid]

    # -- linking ------------------------------------------------------------

    def _link(self, a: Tile, k: int, b: Tile):
        """Record that b lies across edge k of a (same edge index both ways)."""
        if a.neighbors[k] is not None:
            if a.neighbors[k] != b.id:
                self.conflicts += 1
                raise PatchConflictError(
                    f"edge {k} of tile {a.id} already links elsewhere")
            return
        if b.neighbors[k] is not None and b.neighbors[k] != a.id:
            self.conflicts += 1
            raise PatchConflictError(
                f"edge {k} of tile {b.id} already links elsewhere")
        if (b.coord != step(a.coord, a.edge_dirs[k])
                or b.edge_dirs != mirrored_dirs(a.edge_dirs, k, self.d)):
            self.conflicts += 1
            raise PatchConflictError(
                f"labels disagree across edge {k} of tiles {a.id}/{b.id}")
        a.neighbors[k] = b.id
        b.neighbors[k] = a.id
        self._relax_ring(a, b)

    def _relax_ring(self, a: Tile, b: Tile):
        """Keep ring equal to the true BFS distance under any discovery order."""
        queue = [(a, b)]
        while queue:
            x, y = queue.pop()
            if y.ring > x.ring + 1:
                x, y = y, x
            if x.ring > y.ring + 1:
                x.ring = y.ring + 1
                for nid in x.neighbors:
                    if nid is not None:
                        queue.append((self.tiles[nid], x))

    def _walk_vertex(self, tid: int, c: int):
        """Collect the linked chain of tiles around the vertex at corner c.

        Around the vertex between edges c and c+1 the crossings alternate
        between those two edge indices, and exactly four tiles meet.  Returns
        (members, closing_edge) where closing_edge links the chain ends when
        all four members are present but the loop is still open, else None.
        """
        tiles = self.tiles
        c2 = (c + 1) % self.n_edges
        chain = [tid]
        # forward: first crossing via edge c+1, then alternate
        edge = c2
        cur = tid
        while len(chain) < 5:
            nxt = tiles[cur].neighbors[edge]
            if nxt is None:
                break
            if nxt == chain[0] and len(chain) == 4:
                return chain, None  # loop already closed
            cur = nxt
            chain.append(cur)
            edge = c if edge == c2 else c2
        fwd_open = edge
        # backward: first crossing via edge c
        edge = c
        cur = tid
        while len(chain) < 5:
            prv = tiles[cur].neighbors[edge]
            if prv is None:
                break
            if prv in chain:
                if prv == chain[-1] and len(chain) == 4:
                    return chain, None
                self.conflicts += 1
                raise PatchConflictError(f"vertex loop of tile {tid} corner {c} pinched")
            cur = prv
            chain.insert(0, cur)
            edge = c2 if edge == c else c
        if len(chain) > 4:
            self.conflicts += 1
            raise PatchConflictError(f"more than 4 tiles around corner {c} of {tid}")
        if len(chain) == 4:
            bwd_open = edge
            if fwd_open != bwd_open:
                self.conflicts += 1
                raise PatchConflictError("vertex walk parity broken")
            return chain, fwd_open
        return chain, None

    def _close_vertices(self, seeds):
        """Close every completable order-4 vertex reachable from the seeds."""
        queue = list(seeds)
        while queue:
            tid, c = queue.pop()
            chain, closing = self._walk_vertex(tid, c)
            if closing is None or len(chain) < 4:
                continue
            first, last = self.tiles[chain[0]], self.tiles[chain[-1]]
            self._link(last, closing, first)
            for t in (first.id, last.id):
                queue.append((t, closing))
                queue.append((t, (closing - 1) % self.n_edges))

    # -- public surface -----------------------------------------------------

    def neighbor(self, tid: int, k: int) -> int:
        """Tile across edge k, materializing it if needed (with closure)."""
        tile = self.tiles[tid]
        n2 = self.n_edges
        existing = tile.neighbors[k]
        if existing is not None:
            return existing
        # around either endpoint vertex, the opposite tile is 3 links away
        for e1 in ((k + 1) % n2, (k - 1) % n2):
            a = tile.neighbors[e1]
            if a is None:
                continue
            b = self.tiles[a].neighbors[k]
            if b is None:
                continue
            c = self.tiles[b].neighbors[e1]
            if c is None:
                continue
            other = self.tiles[c]
            self._link(tile, k, other)
            self._close_vertices([(tid, k), (tid, (k - 1) % n2)])
            return other.id
        new = Tile(len(self.tiles), step(tile.coord, tile.edge_dirs[k]),
                   mirrored_dirs(tile.edge_dirs, k, self.d),
                   n2, (tid, k), tile.ring + 1)
        self.tiles.append(new)
        tile.neighbors[k] = new.id
        new.neighbors[k] = tid
        self._close_vertices([(new.id, k), (new.id, (k - 1) % n2)])
        return new.id

    def expand(self, radius: int) -> None:
        """Materialize every tile within ``radius`` edge steps of the center."""
        t = 0
        while t < len(self.tiles):
            tile = self.tiles[t]
            if tile.ring < radius:
                nbrs = tile.neighbors
                for k in range(self.n_edges):
                    if nbrs[k] is None:
                        self.neighbor(t, k)
            t += 1

    def placement(self, tid: int) -> np.ndarray:
        """Isometry mapping the canonical centered 2d-gon onto this tile."""
        cached = self._placements.get(tid)
        if cached is not None:
            return cached
        chain = []
        cur = tid
        while cur not in self._placements:
            chain.append(cur)
            cur = self.tiles[cur].parent[0]
        m = self._placements[cur]
        for t in reversed(chain):
            m = m @ self._steps[self.tiles[t].parent[1]]
            if self.tiles[t].ring % 16 == 0:
                m = hm.reorthonormalize(m)
            self._placements[t] = m
        return m

    def center(self, tid: int) -> np.ndarray:
        return self.placement(tid)[:, 2].copy()

    def ring_sizes(self) -> list[int]:
        counts: dict[int, int] = {}
        for tile in self.tiles:
            counts[tile.ring] = counts.get(tile.ring, 0) + 1
        return [counts[r] for r in sorted(counts)]


def new_patch(d: int) -> TilePatch:
    """Fresh patch holding only the central tile (coordinate zero)."""
    return TilePatch(d)


def ring_recurrence(d: int, radius: int) -> list[int]:
    """Independent combinatorial ring counts for the {2d,4} tiling.

    Tiles in ring k split into side tiles (one edge toward ring k-1) and
    corner tiles (two).  A side tile spawns p-3 side children and co-spawns
    2 corner children; a corner tile spawns p-4 and co-spawns 2; every corner
    child has exactly two co-parents.
    """
    p = 2 * d
    sizes = [1]
    side, corner = p, 0
    for _ in range(radius):
        sizes.append(side + corner)
        side, corner = (p - 3) * side + (p - 4) * corner, side + corner
    return sizes[:radius + 1]
