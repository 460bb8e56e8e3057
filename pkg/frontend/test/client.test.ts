import { describe, expect, it } from "vitest";

import { ClientSession, Transport } from "../src/client.js";
import { FrameMessage, LineBuffer } from "../src/protocol.js";

function frameLine(seq: number, settled = true, events: unknown[] = []): string {
  return JSON.stringify({
    frame_seq: seq,
    world: "colorpicker",
    status: "playing",
    hud: {},
    settled,
    polys: [
      { tile_id: 0, coord: [0, 0, 0], boundary: [[0, 0], [0.1, 0], [0, 0.1]],
        fill: [1, 2, 3], labels: [] },
    ],
    events,
  }) + "\n";
}

class FakeTransport implements Transport {
  sent: string[] = [];
  send(line: string): void {
    this.sent.push(line);
  }
  close(): void {}
}

describe("LineBuffer", () => {
  it("reassembles lines across chunk boundaries", () => {
    const buf = new LineBuffer();
    expect(buf.push('{"a"')).toEqual([]);
    expect(buf.push(':1}\n{"b":2}\n{"c"')).toEqual(['{"a":1}', '{"b":2}']);
    expect(buf.push(":3}\n")).toEqual(['{"c":3}']);
  });
});

describe("ClientSession", () => {
  it("delivers frames in order and drops stale replays", () => {
    const seen: number[] = [];
    const session = new ClientSession(new FakeTransport(), {
      onFrame(frame: FrameMessage) {
        seen.push(frame.frame_seq);
      },
    });
    session.receive(frameLine(1));
    session.receive(frameLine(2));
    session.receive(frameLine(1)); // stale replay after reconnect
    session.receive(frameLine(2));
    session.receive(frameLine(3));
    expect(seen).toEqual([1, 2, 3]);
  });

  it("keeps one command in flight until the settled frame", () => {
    const transport = new FakeTransport();
    const session = new ClientSession(transport, { onFrame() {} });
    session.send({ type: "move", axis: 0, sign: 1 });
    session.send({ type: "move", axis: 1, sign: 1 });
    expect(transport.sent).toHaveLength(1);
    session.receive(frameLine(1, false));
    expect(transport.sent).toHaveLength(1);
    session.receive(frameLine(2, true));
    expect(transport.sent).toHaveLength(2);
  });

  it("surfaces events and protocol errors", () => {
    const events: string[] = [];
    const errors: string[] = [];
    const session = new ClientSession(new FakeTransport(), {
      onFrame() {},
      onEvent(e) {
        events.push(e.kind);
      },
      onError(e) {
        errors.push("error" in e ? e.error : String(e));
      },
    });
    session.receive(frameLine(1, true, [{ kind: "sound", payload: { freq: 392 } }]));
    session.receive('{"error":"unknown command","pointer":"/type"}\n');
    expect(events).toEqual(["sound"]);
    expect(errors).toEqual(["unknown command"]);
  });

  it("unblocks the queue after a protocol error", () => {
    const transport = new FakeTransport();
    const session = new ClientSession(transport, { onFrame() {} });
    session.send({ type: "move", axis: 0, sign: 1 });
    session.send({ type: "move", axis: 1, sign: 1 });
    session.receive('{"error":"bad","pointer":""}\n');
    expect(transport.sent).toHaveLength(2);
  });
});
