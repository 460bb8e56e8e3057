"""Tests for image writers and the command line interface."""

import json
import socket
import threading
import zlib

import numpy as np
import pytest

from hypergrid.cli import main, make_server
from hypergrid.raster import rasterize_frame, read_ppm, write_png, write_ppm
from hypergrid.render3d import ImageBuf
from hypergrid.scene import Camera2D, TileStyle, build_frame
from hypergrid.session import SessionConfig
from hypergrid.tiling import new_patch


class TestPpm:
    def test_one_white_pixel(self, tmp_path):
        img = ImageBuf(width=1, height=1,
                       pixels=np.full((1, 1, 3), 255, dtype=np.uint8))
        out = tmp_path / "white.ppm"
        write_ppm(img, out)
        data = out.read_bytes()
        assert data == b"P6\n1 1\n255\n\xff\xff\xff"

    def test_header_echoes_dimensions(self, tmp_path):
        img = ImageBuf(width=7, height=4,
                       pixels=np.zeros((4, 7, 3), dtype=np.uint8))
        out = tmp_path / "img.ppm"
        write_ppm(img, out)
        assert out.read_bytes().startswith(b"P6\n7 4\n255\n")

    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(3)
        img = ImageBuf(width=5, height=3,
                       pixels=rng.integers(0, 256, (3, 5, 3), dtype=np.uint8))
        out = tmp_path / "rt.ppm"
        write_ppm(img, out)
        back = read_ppm(out)
        assert back.width == 5 and back.height == 3
        assert np.array_equal(back.pixels, img.pixels)


class TestPng:
    def test_decodable_payload(self, tmp_path):
        rng = np.random.default_rng(4)
        img = ImageBuf(width=6, height=2,
                       pixels=rng.integers(0, 256, (2, 6, 3), dtype=np.uint8))
        out = tmp_path / "img.png"
        write_png(img, out)
        data = out.read_bytes()
        assert data.startswith(b"\x89PNG\r\n\x1a\n")
        idat_at = data.index(b"IDAT") + 4
        length = int.from_bytes(data[idat_at - 8:idat_at - 4], "big")
        raw = zlib.decompress(data[idat_at:idat_at + length])
        rows = [raw[i * (1 + 18): (i + 1) * (1 + 18)] for i in range(2)]
        for r, row in enumerate(rows):
            assert row[0] == 0
            assert row[1:] == img.pixels[r].tobytes()


class TestRasterizeFrame:
    def test_fills_center(self):
        patch = new_patch(3)
        frame = build_frame(patch, Camera2D.identity(),
                            lambda c: TileStyle(fill=(200, 10, 10)), cutoff=2.0)
        img = rasterize_frame(frame, 128)
        assert tuple(img.pixels[64, 64]) == (200, 10, 10)

    def test_label_dot_drawn(self):
        patch = new_patch(3)
        style = lambda c: TileStyle(fill=(30, 30, 30),
                                    labels=(("*", "center", (255, 255, 0)),))
        frame = build_frame(patch, Camera2D.identity(), style, cutoff=1.0)
        img = rasterize_frame(frame, 128)
        assert tuple(img.pixels[64, 64]) == (255, 255, 0)


class TestCliRender:
    def test_render_3d_header_and_determinism(self, tmp_path):
        out1 = tmp_path / "e1.ppm"
        out2 = tmp_path / "e2.ppm"
        args = ["render-3d", "--honeycomb", "344", "--scene", "E",
                "--width", "64", "--height", "48", "--max-steps", "80"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        data = out1.read_bytes()
        assert data.startswith(b"P6\n64 48\n255\n")
        assert data == out2.read_bytes()

    def test_render_2d(self, tmp_path):
        out = tmp_path / "picker.ppm"
        assert main(["render-2d", "--world", "colorpicker", "--size", "96",
                     "--cutoff", "2.5", "--out", str(out)]) == 0
        img = read_ppm(out)
        assert tuple(img.pixels[48, 48]) == (128, 128, 128)

    def test_bad_flags_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["render-3d", "--scene", "E"])  # missing --out
        assert exc.value.code == 2

    def test_render_failure_exit_1(self, tmp_path):
        rc = main(["render-3d", "--scene", "Z", "--out", str(tmp_path / "x.ppm")])
        assert rc == 1


class TestCliPlay:
    def test_empty_script_keeps_playing(self, tmp_path, capsys):
        script = tmp_path / "empty.txt"
        script.write_text("")
        rc = main(["play", "--world", "rogue", "--d", "3", "--seed", "42",
                   "--script", str(script)])
        assert rc == 0
        state = json.loads(capsys.readouterr().out.strip())
        assert state["status"] == "playing"
        assert state["world"] == "rogue"

    def test_scripted_house_solve(self, tmp_path, capsys):
        script = tmp_path / "moves.jsonl"
        script.write_text(
            '{"type":"move","axis":3,"sign":-1}\n'
            '{"type":"move","axis":3,"sign":-1}\n')
        rc = main(["play", "--world", "house", "--script", str(script)])
        assert rc == 0
        state = json.loads(capsys.readouterr().out.strip())
        assert state["status"] == "won"

    def test_frames_out_replayable(self, tmp_path, capsys):
        script = tmp_path / "moves.jsonl"
        script.write_text('{"type":"move","axis":0,"sign":1}\n')
        outs = []
        for name in ("a", "b"):
            frames = tmp_path / f"frames_{name}.jsonl"
            rc = main(["play", "--world", "colorpicker", "--script", str(script),
                       "--frames-out", str(frames)])
            assert rc == 0
            capsys.readouterr()
            outs.append(frames.read_bytes())
        assert outs[0] == outs[1]


class TestServe:
    def test_socket_round_trip(self):
        server = make_server("127.0.0.1", 0, SessionConfig(world="colorpicker",
                                                           anim_steps=1))
        port = server.server_address[1]
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        try:
            with socket.create_connection(("127.0.0.1", port), timeout=10) as conn:
                f = conn.makefile("rwb")
                first = json.loads(f.readline())
                assert first["world"] == "colorpicker"
                assert first["settled"] is True
                conn.sendall(b'{"type":"move","axis":0,"sign":1}\n')
                settled = None
                while settled is None:
                    msg = json.loads(f.readline())
                    if msg.get("settled"):
                        settled = msg
                assert settled["hud"]["color"] == "#818080"
                conn.sendall(b'{"type":"bogus"}\n')
                err = json.loads(f.readline())
                assert err["pointer"] == "/type"
                conn.sendall(b'{"type":"quit"}\n')
        finally:
            server.shutdown()
            server.server_close()
