"""Command line interface: offline renders, headless play, and the server.

Subcommands:
  render-2d   project a world's tiling view to a PPM/PNG image
  render-3d   raycast a honeycomb scene to a PPM/PNG image
  play        drive a session from a command script, print the final state
  serve       newline-delimited JSON protocol over TCP, one session per
              connection
"""

from __future__ import annotations

import argparse
import json
import socketserver
import sys
from pathlib import Path

from . import __version__
from .honeycomb import honeycomb_spec, scene_by_key, suggested_start
from .protocol import CommandError, canonical_dumps, parse_command, serialize_frame
from .raster import rasterize_frame, write_image
from .render3d import camera_pose, render
from .session import Session, SessionConfig, WORLD_DEFAULT_D


def _parse_floats(text: str, n: int, flag: str):
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != n:
        raise ValueError(f"{flag} expects {n} comma-separated numbers")
    return [float(p) for p in parts]


def _parse_ints(text: str, n: int, flag: str):
    return [int(round(v)) for v in _parse_floats(text, n, flag)]


def _add_render2d(sub):
    p = sub.add_parser("render-2d", help="render a world's disk view to an image")
    p.add_argument("--world", default="colorpicker", choices=sorted(WORLD_DEFAULT_D))
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--size", type=int, default=1024)
    p.add_argument("--cutoff", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=0)


def _add_render3d(sub):
    p = sub.add_parser("render-3d", help="raycast a honeycomb scene to an image")
    p.add_argument("--honeycomb", default="344", choices=["344", "534"])
    p.add_argument("--scene", default="E", type=str)
    p.add_argument("--out", required=True)
    p.add_argument("--width", type=int, default=320)
    p.add_argument("--height", type=int, default=240)
    p.add_argument("--camera", default="0,0,0", help="spatial position x,y,z")
    p.add_argument("--look", default="1,1,1", help="forward direction x,y,z")
    p.add_argument("--fov", type=float, default=90.0)
    p.add_argument("--max-steps", type=int, default=600)
    p.add_argument("--start", default=None,
                   help="start cell coordinates (default: per scene)")


def _add_play(sub):
    p = sub.add_parser("play", help="headless session driven by a script")
    p.add_argument("--world", default="rogue", choices=sorted(WORLD_DEFAULT_D))
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--script", required=True,
                   help="file with one JSON command per line")
    p.add_argument("--cutoff", type=float, default=5.0)
    p.add_argument("--frames-out", default=None,
                   help="optionally write every emitted frame line here")


def _add_serve(sub):
    p = sub.add_parser("serve", help="serve the frame/command protocol on TCP")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=0)
    p.add_argument("--world", default="colorpicker", choices=sorted(WORLD_DEFAULT_D))
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypergrid", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    _add_render2d(sub)
    _add_render3d(sub)
    _add_play(sub)
    _add_serve(sub)
    return parser


def cmd_render_2d(args) -> int:
    config = SessionConfig(world=args.world, d=args.d, seed=args.seed,
                           cutoff=args.cutoff)
    session = Session(config)
    frame = session.initial_frames()[-1].frame
    write_image(rasterize_frame(frame, args.size), args.out)
    return 0


def cmd_render_3d(args) -> int:
    spec = honeycomb_spec(args.honeycomb)
    scene = scene_by_key(args.scene, spec.d)
    start = (_parse_ints(args.start, spec.d, "--start") if args.start
             else suggested_start(args.scene, spec.d))
    camera = camera_pose(position=_parse_floats(args.camera, 3, "--camera"),
                         forward=_parse_floats(args.look, 3, "--look"))
    img = render(spec, scene, camera, args.width, args.height, fov=args.fov,
                 max_steps=args.max_steps, start_coord=start)
    write_image(img, args.out)
    return 0


def cmd_play(args) -> int:
    config = SessionConfig(world=args.world, d=args.d, seed=args.seed,
                           cutoff=args.cutoff)
    session = Session(config)
    frames = session.initial_frames()
    sink = open(args.frames_out, "w", encoding="utf-8") if args.frames_out else None
    try:
        if sink:
            for msg in frames:
                sink.write(serialize_frame(msg) + "\n")
        for line in Path(args.script).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cmd = parse_command(line)
            batch = session.handle(cmd)
            if sink:
                for msg in batch:
                    sink.write(serialize_frame(msg) + "\n")
            if session.closed:
                break
    finally:
        if sink:
            sink.close()
    print(canonical_dumps(session.state_json()))
    return 0


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        config = self.server.session_config
        session = Session(config)
        for msg in session.initial_frames():
            self._send(serialize_frame(msg))
        while not session.closed:
            line = self.rfile.readline()
            if not line:
                break
            text = line.decode("utf-8").strip()
            if not text:
                continue
            try:
                cmd = parse_command(text)
                batch = session.handle(cmd)
            except CommandError as exc:
                self._send(canonical_dumps(exc.payload()))
                continue
            for msg in batch:
                self._send(serialize_frame(msg))

    def _send(self, text: str):
        self.wfile.write(text.encode("utf-8") + b"\n")


class ProtocolServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


def make_server(host: str, port: int, config: SessionConfig) -> ProtocolServer:
    server = ProtocolServer((host, port), _Handler)
    server.session_config = config
    return server


def cmd_serve(args) -> int:
    config = SessionConfig(world=args.world, d=args.d, seed=args.seed)
    with make_server(args.host, args.port, config) as server:
        print(f"listening on {server.server_address[1]}", flush=True)
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "render-2d":
            return cmd_render_2d(args)
        if args.command == "render-3d":
            return cmd_render_3d(args)
        if args.command == "play":
            return cmd_play(args)
        if args.command == "serve":
            return cmd_serve(args)
    except (ValueError, OSError, CommandError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
