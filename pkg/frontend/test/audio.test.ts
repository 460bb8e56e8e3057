import { describe, expect, it } from "vitest";

import { createTonePlayer, playSoundEvent } from "../src/audio.js";

class FakeParam {
  value = 0;
  ramps: [string, number, number][] = [];
  setValueAtTime(v: number, t: number) {
    this.ramps.push(["set", v, t]);
  }
  linearRampToValueAtTime(v: number, t: number) {
    this.ramps.push(["ramp", v, t]);
  }
}

class FakeOscillator {
  type = "";
  frequency = new FakeParam();
  started: number | null = null;
  stopped: number | null = null;
  connected: unknown = null;
  connect(node: unknown) {
    this.connected = node;
  }
  start(t: number) {
    this.started = t;
  }
  stop(t: number) {
    this.stopped = t;
  }
}

class FakeGain {
  gain = new FakeParam();
  connect(_node: unknown) {}
}

class FakeAudioContext {
  currentTime = 0;
  destination = {};
  oscillators: FakeOscillator[] = [];
  gains: FakeGain[] = [];
  createOscillator() {
    const osc = new FakeOscillator();
    this.oscillators.push(osc);
    return osc as unknown as OscillatorNode;
  }
  createGain() {
    const gain = new FakeGain();
    this.gains.push(gain);
    return gain as unknown as GainNode;
  }
}

function playerWith(ctx: FakeAudioContext) {
  return createTonePlayer(() => ctx as unknown as AudioContext);
}

describe("tone playback", () => {
  it("plays the 3/2 sound event at base * 1.5", () => {
    const ctx = new FakeAudioContext();
    const player = playerWith(ctx);
    playSoundEvent(player, { freq: 261.63 * 1.5, ms: 300, ratio: "3/2" });
    expect(ctx.oscillators).toHaveLength(1);
    const osc = ctx.oscillators[0]!;
    expect(Math.abs(osc.frequency.value - 392.445)).toBeLessThan(0.1);
    expect(osc.type).toBe("sine");
    expect(osc.started).toBe(0);
    expect(osc.stopped).toBeCloseTo(0.3, 9);
  });

  it("ratio one is the base frequency", () => {
    const ctx = new FakeAudioContext();
    playerWith(ctx).play(261.63, 200);
    expect(ctx.oscillators[0]!.frequency.value).toBeCloseTo(261.63, 9);
  });

  it("overlapping events mix on separate oscillators", () => {
    const ctx = new FakeAudioContext();
    const player = playerWith(ctx);
    player.play(300, 400);
    player.play(450, 400);
    expect(ctx.oscillators).toHaveLength(2);
    expect(ctx.oscillators[0]!.started).toBe(ctx.oscillators[1]!.started);
  });

  it("degrades to a silent no-op without audio", () => {
    const notes: string[] = [];
    const player = createTonePlayer(() => {
      throw new Error("denied");
    }, (text) => notes.push(text));
    expect(player.play(440, 100)).toBeNull();
    expect(player.play(440, 100)).toBeNull();
    expect(notes).toHaveLength(1); // warned exactly once
  });

  it("applies 10ms fade in and out", () => {
    const ctx = new FakeAudioContext();
    playerWith(ctx).play(440, 500);
    const ramps = ctx.gains[0]!.gain.ramps;
    expect(ramps).toEqual([
      ["set", 0, 0],
      ["ramp", 0.3, 0.01],
      ["set", 0.3, 0.49],
      ["ramp", 0, 0.5],
    ]);
  });
});
