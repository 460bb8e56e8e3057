"""Tests for frame building, recentering and hit testing."""

import math

import numpy as np
import pytest

import hypergrid.hyperboloid as hm
from hypergrid.scene import (
    Camera2D,
    SAMPLES_PER_EDGE,
    TileStyle,
    build_frame,
    pick,
    recenter_steps,
)
from hypergrid.tiling import new_patch


def flat_style(coord):
    return TileStyle(fill=(120, 120, 120))


@pytest.fixture
def hex_patch():
    return new_patch(3)


class TestBuildFrame:
    def test_central_polygon_winds_origin(self, hex_patch):
        frame = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=3.0)
        central = [p for p in frame.polys if p.tile_id == 0]
        assert len(central) == 1
        assert pick(frame, (0.0, 0.0)) == 0

    def test_culling_monotone(self, hex_patch):
        small = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=2.0)
        big = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=4.0)
        ids_small = {p.tile_id for p in small.polys}
        ids_big = {p.tile_id for p in big.polys}
        assert ids_small <= ids_big
        assert len(ids_small) < len(ids_big)

    def test_cutoff_is_exact(self, hex_patch):
        cutoff = 3.0
        frame = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff)
        shown = {p.tile_id for p in frame.polys}
        for tid in range(len(hex_patch)):
            c = hex_patch.center(tid)
            dist = hm.distance(hm.origin(2), c)
            if dist <= cutoff:
                assert tid in shown
            elif dist > cutoff + 1e-9:
                assert tid not in shown

    def test_boundary_inside_disk_and_dense(self, hex_patch):
        frame = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=4.0)
        for poly in frame.polys:
            assert poly.boundary.shape[0] == 6 * SAMPLES_PER_EDGE
            assert np.all(np.hypot(poly.boundary[:, 0], poly.boundary[:, 1]) < 1.0)

    def test_altitude_scale_zero_matches_plain_projection(self, hex_patch):
        styled = lambda coord: TileStyle(fill=(1, 2, 3), altitude=3)
        cam = Camera2D.identity()
        frame_a = build_frame(hex_patch, cam, styled, cutoff=2.5)
        frame_b = build_frame(hex_patch, cam, flat_style, cutoff=2.5)
        for pa, pb in zip(frame_a.polys, frame_b.polys):
            assert np.array_equal(pa.boundary, pb.boundary)

    def test_altitude_shrinks(self, hex_patch):
        cam = Camera2D(view=np.eye(3), altitude_scale=0.5)
        lifted = build_frame(hex_patch, cam,
                             lambda c: TileStyle(fill=(0, 0, 0), altitude=2),
                             cutoff=2.0)
        flat = build_frame(hex_patch, cam, flat_style, cutoff=2.0)
        r_lifted = np.hypot(*lifted.polys[0].boundary.T).max()
        r_flat = np.hypot(*flat.polys[0].boundary.T).max()
        assert r_lifted < r_flat

    def test_recentering_consistency(self, hex_patch):
        # pre-composing the camera acts like transforming every point
        hex_patch.expand(2)
        move = hm.translation_to(hm.point_from_spatial([0.4, -0.2]))
        cam = Camera2D(view=hm.inverse(move))
        frame = build_frame(hex_patch, cam, flat_style, cutoff=3.0)
        plain = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=3.5)
        plain_by_id = {p.tile_id: p for p in plain.polys}
        checked = 0
        for poly in frame.polys:
            if poly.tile_id not in plain_by_id:
                continue
            # recompute: project(inverse(move) @ placement @ boundary)
            m = hm.inverse(move) @ hex_patch.placement(poly.tile_id)
            from hypergrid.scene import _canonical_boundary
            pts = _canonical_boundary(3) @ m.T
            want = pts[:, :2] / (1.0 + pts[:, 2:3])
            assert np.max(np.abs(want - poly.boundary)) < 1e-9
            checked += 1
        assert checked > 3

    def test_disjoint_interiors(self, hex_patch):
        shapely = pytest.importorskip("shapely")
        from shapely.geometry import Polygon

        frame = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=3.0)
        shapes = [Polygon(p.boundary) for p in frame.polys]
        for i in range(len(shapes)):
            for j in range(i + 1, len(shapes)):
                inter = shapes[i].intersection(shapes[j]).area
                assert inter < 1e-6

    def test_label_anchors(self, hex_patch):
        style = lambda coord: TileStyle(
            fill=(9, 9, 9),
            labels=(("c", "center", (255, 255, 255)), ("e", 2, (0, 255, 0))))
        frame = build_frame(hex_patch, Camera2D.identity(), style, cutoff=1.0)
        poly = frame.polys[0]
        assert len(poly.labels) == 2
        (ct, cpos, _), (et, epos, _) = poly.labels
        assert ct == "c" and abs(cpos[0]) < 1e-12 and abs(cpos[1]) < 1e-12
        # edge-2 anchor sits inside the tile toward edge 2 (120 degrees)
        ang = math.atan2(epos[1], epos[0])
        assert ang == pytest.approx(2 * math.pi * 2 / 6, abs=1e-9)
        assert pick(frame, epos) == 0


class TestRecenterSteps:
    def test_already_centered(self, hex_patch):
        cam = Camera2D.identity()
        steps = recenter_steps(hex_patch, cam, 0, 5)
        assert len(steps) == 5
        for s in steps:
            assert np.allclose(s.view, np.eye(3))

    def test_single_step_is_final(self, hex_patch):
        target = hex_patch.neighbor(0, 0)
        steps = recenter_steps(hex_patch, Camera2D.identity(), target, 1)
        assert len(steps) == 1
        c = steps[0].view @ hex_patch.center(target)
        assert np.max(np.abs(c - hm.origin(2))) < 1e-7

    def test_final_centered_and_path_on_geodesic(self, hex_patch):
        hex_patch.expand(2)
        target = hex_patch.neighbor(hex_patch.neighbor(0, 0), 1)
        cam = Camera2D.identity()
        steps = recenter_steps(hex_patch, cam, target, 8)
        final = steps[-1].view @ hex_patch.center(target)
        assert np.max(np.abs(final - hm.origin(2))) < 1e-7
        # centers of intermediate cameras lie on the geodesic 0 -> target
        start = hm.origin(2)
        goal = hex_patch.center(target)
        total = hm.distance(start, goal)
        u = hm.tangent_toward(start, goal)
        for i, s in enumerate(steps, start=1):
            center_world = hm.inverse(s.view) @ hm.origin(2)
            expected = hm.geodesic_at(start, u, total * i / len(steps))
            assert np.max(np.abs(center_world - expected)) < 1e-6

    def test_unknown_tile(self, hex_patch):
        with pytest.raises(ValueError):
            recenter_steps(hex_patch, Camera2D.identity(), 999999, 4)


class TestPick:
    def test_outside_disk(self, hex_patch):
        frame = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=2.0)
        assert pick(frame, (1.2, 0.0)) is None

    def test_gap_returns_none(self, hex_patch):
        frame = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=1.0)
        assert pick(frame, (0.999, 0.0)) is None

    def test_every_projected_center(self, hex_patch):
        frame = build_frame(hex_patch, Camera2D.identity(), flat_style, cutoff=3.0)
        for poly in frame.polys:
            c = hex_patch.center(poly.tile_id)
            at = hm.to_disk(c)
            assert pick(frame, at) == poly.tile_id
