/**
 * Types and helpers for the engine's newline-delimited JSON protocol.
 *
 * The client never computes geometry: frames arrive as sampled polygons in
 * unit-disk coordinates, commands go out as small JSON objects, and tile
 * picking happens server-side (clicks send disk coordinates).
 */

export type Rgb = [number, number, number];

export interface FrameLabel {
  text: string;
  pos: [number, number];
  color: Rgb;
}

export interface FramePoly {
  tile_id: number;
  coord: number[];
  boundary: [number, number][];
  fill: Rgb;
  labels: FrameLabel[];
}

export interface FrameEvent {
  kind: "sound" | "win" | "lose" | "info";
  payload: unknown;
}

export interface FrameMessage {
  frame_seq: number;
  world: string;
  status: string;
  hud: Record<string, unknown>;
  settled: boolean;
  polys: FramePoly[];
  events: FrameEvent[];
}

export interface ProtocolError {
  error: string;
  pointer: string;
}

export type Command =
  | { type: "move"; axis: number; sign: -1 | 0 | 1 }
  | { type: "click"; x: number; y: number }
  | { type: "click"; tile_id: number }
  | { type: "slider"; name: string; value: number }
  | { type: "mode"; world: string; d?: number }
  | { type: "reset"; seed: number }
  | { type: "quit" };

export function serializeCommand(cmd: Command): string {
  return JSON.stringify(cmd);
}

export function isProtocolError(msg: unknown): msg is ProtocolError {
  return typeof msg === "object" && msg !== null && "error" in msg;
}

/** Structural check on an incoming line; throws on malformed frames. */
export function parseFrame(line: string): FrameMessage | ProtocolError {
  const data: unknown = JSON.parse(line);
  if (typeof data !== "object" || data === null) {
    throw new Error("frame is not an object");
  }
  if (isProtocolError(data)) {
    return data;
  }
  const frame = data as Partial<FrameMessage>;
  if (
    typeof frame.frame_seq !== "number" ||
    typeof frame.world !== "string" ||
    typeof frame.settled !== "boolean" ||
    !Array.isArray(frame.polys) ||
    !Array.isArray(frame.events)
  ) {
    throw new Error("frame is missing required members");
  }
  for (const poly of frame.polys) {
    if (!Array.isArray(poly.boundary) || poly.boundary.length < 3) {
      throw new Error(`polygon ${poly.tile_id} has no usable boundary`);
    }
  }
  return frame as FrameMessage;
}

/** Accumulates raw chunks and yields complete newline-terminated lines. */
export class LineBuffer {
  private pending = "";

  push(chunk: string): string[] {
    this.pending += chunk;
    const parts = this.pending.split("\n");
    this.pending = parts.pop() ?? "";
    return parts.filter((p) => p.length > 0);
  }
}
