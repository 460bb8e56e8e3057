#!/usr/bin/env python3
"""Regenerate golden frame fixtures from the engine (runs from frontend/)."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[2] / "src"))

from hypergrid.protocol import MoveCmd, serialize_frame
from hypergrid.session import Session, SessionConfig

OUT = pathlib.Path(__file__).resolve().parents[1] / "test" / "fixtures"


def dump(name, msg):
    (OUT / name).write_text(serialize_frame(msg) + "\n", encoding="utf-8")
    print("wrote", name)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    picker = Session(SessionConfig(world="colorpicker", anim_steps=2))
    dump("colorpicker_initial.json", picker.initial_frames()[-1])
    batch = picker.handle(MoveCmd(axis=0, sign=1))
    dump("colorpicker_moved.json", batch[-1])

    rogue = Session(SessionConfig(world="rogue", d=3, seed=7, anim_steps=1))
    dump("rogue_initial.json", rogue.initial_frames()[-1])

    sokoban = Session(SessionConfig(world="sokoban", anim_steps=1))
    dump("sokoban_initial.json", sokoban.initial_frames()[-1])

    pitch = Session(SessionConfig(world="pitch", anim_steps=1))
    pitch.initial_frames()
    batch = pitch.handle(MoveCmd(axis=0, sign=1))
    dump("pitch_fifth.json", batch[-1])


if __name__ == "__main__":
    main()
