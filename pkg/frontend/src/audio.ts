/**
 * Tone playback for sound events: a sine oscillator with 10 ms fades.
 *
 * Overlapping events each get their own oscillator/gain pair, so tones mix
 * rather than queue.  When no audio backend exists the player degrades to a
 * silent no-op and reports once through the note callback.
 */

export const FADE_SECONDS = 0.01;

export interface TonePlayer {
  play(freq: number, ms: number): OscillatorNode | null;
}

type ContextFactory = () => AudioContext;

export function createTonePlayer(
  contextFactory?: ContextFactory,
  onNote?: (text: string) => void,
): TonePlayer {
  let context: AudioContext | null = null;
  let warned = false;

  function ensureContext(): AudioContext | null {
    if (context) return context;
    try {
      const make =
        contextFactory ??
        (typeof AudioContext !== "undefined"
          ? () => new AudioContext()
          : null);
      if (!make) throw new Error("no AudioContext");
      context = make();
      return context;
    } catch {
      if (!warned) {
        warned = true;
        onNote?.("audio unavailable; tones are muted");
      }
      return null;
    }
  }

  return {
    play(freq: number, ms: number): OscillatorNode | null {
      const ctx = ensureContext();
      if (!ctx) return null;
      const osc = ctx.createOscillator();
      osc.type = "sine";
      osc.frequency.value = freq;
      const gain = ctx.createGain();
      const now = ctx.currentTime;
      const dur = Math.max(ms / 1000, 2 * FADE_SECONDS);
      gain.gain.setValueAtTime(0, now);
      gain.gain.linearRampToValueAtTime(0.3, now + FADE_SECONDS);
      gain.gain.setValueAtTime(0.3, now + dur - FADE_SECONDS);
      gain.gain.linearRampToValueAtTime(0, now + dur);
      osc.connect(gain);
      gain.connect(ctx.destination);
      osc.start(now);
      osc.stop(now + dur);
      return osc;
    },
  };
}

export interface SoundPayload {
  freq: number;
  ms?: number;
  ratio?: string;
}

export function playSoundEvent(
  player: TonePlayer,
  payload: SoundPayload,
): OscillatorNode | null {
  return player.play(payload.freq, payload.ms ?? 300);
}
