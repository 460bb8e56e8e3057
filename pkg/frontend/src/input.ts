/**
 * Input mapping: keyboard, pointer and slider events to protocol commands.
 *
 * Key bindings (documented in the app): arrows drive axes 1 and 2; the
 * letter pairs w/s, e/q, d/a, x/z drive axes 3 through 6; space waits.
 * Clicks send normalized disk coordinates; the server resolves the tile.
 */

import type { Command } from "./protocol.js";
import { canvasToDisk, viewport } from "./renderer.js";

const KEY_AXES: Record<string, { axis: number; sign: 1 | -1 }> = {
  ArrowRight: { axis: 0, sign: 1 },
  ArrowLeft: { axis: 0, sign: -1 },
  ArrowUp: { axis: 1, sign: 1 },
  ArrowDown: { axis: 1, sign: -1 },
  w: { axis: 2, sign: 1 },
  s: { axis: 2, sign: -1 },
  e: { axis: 3, sign: 1 },
  q: { axis: 3, sign: -1 },
  d: { axis: 4, sign: 1 },
  a: { axis: 4, sign: -1 },
  x: { axis: 5, sign: 1 },
  z: { axis: 5, sign: -1 },
};

export function keyToCommand(key: string, worldDim: number): Command | null {
  if (key === " ") {
    return { type: "move", axis: 0, sign: 0 };
  }
  const bound = KEY_AXES[key];
  if (!bound || bound.axis >= worldDim) {
    return null;
  }
  return { type: "move", axis: bound.axis, sign: bound.sign };
}

export function clickToCommand(
  px: number,
  py: number,
  width: number,
  height: number,
): Command | null {
  const [x, y] = canvasToDisk(viewport(width, height), px, py);
  if (x * x + y * y >= 1) {
    return null;
  }
  return { type: "click", x, y };
}

export function sliderToCommand(name: string, raw: string | number): Command {
  return { type: "slider", name, value: Number(raw) };
}
