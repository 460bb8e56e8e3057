/**
 * Browser entry: wires canvas, keyboard, sliders and audio to a session.
 *
 * The engine listens on a plain TCP socket, which browsers cannot open
 * directly; point a WebSocket-to-TCP bridge (for example `websockify
 * 8081 127.0.0.1:<engine port>`) at the engine and open index.html with
 * ?ws=ws://localhost:8081.
 */

import { createTonePlayer, playSoundEvent, SoundPayload } from "./audio.js";
import { ClientSession, Transport } from "./client.js";
import { clickToCommand, keyToCommand, sliderToCommand } from "./input.js";
import { drawFrame, hudText } from "./renderer.js";

function websocketTransport(url: string, onData: (chunk: string) => void): Transport {
  const ws = new WebSocket(url);
  ws.onmessage = (ev) => onData(String(ev.data));
  return {
    send(line: string) {
      ws.send(line);
    },
    close() {
      ws.close();
    },
  };
}

export function start(): void {
  const canvas = document.getElementById("view") as HTMLCanvasElement;
  const hud = document.getElementById("hud") as HTMLElement;
  const note = document.getElementById("note") as HTMLElement;
  const stepSlider = document.getElementById("step") as HTMLInputElement | null;
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2D context unavailable");

  const url = new URL(window.location.href).searchParams.get("ws")
    ?? "ws://localhost:8081";
  const player = createTonePlayer(undefined, (text) => { note.textContent = text; });
  let worldDim = 3;

  const session = new ClientSession(
    websocketTransport(url, (chunk) => session.receive(chunk)),
    {
      onFrame(frame) {
        drawFrame(ctx, canvas.width, canvas.height, frame);
        hud.textContent = hudText(frame);
        const d = frame.hud["d"];
        if (typeof d === "number") worldDim = d;
      },
      onEvent(event) {
        if (event.kind === "sound") {
          playSoundEvent(player, event.payload as SoundPayload);
        } else if (event.kind === "info") {
          note.textContent = String(event.payload);
        } else {
          note.textContent = `${event.kind}: ${String(event.payload)}`;
        }
      },
      onError(err) {
        note.textContent = "error" in err ? err.error : String(err);
      },
    },
  );

  window.addEventListener("keydown", (ev) => {
    const cmd = keyToCommand(ev.key, worldDim);
    if (cmd) {
      ev.preventDefault();
      session.send(cmd);
    }
  });
  canvas.addEventListener("pointerdown", (ev) => {
    const rect = canvas.getBoundingClientRect();
    const cmd = clickToCommand(
      ev.clientX - rect.left,
      ev.clientY - rect.top,
      rect.width,
      rect.height,
    );
    if (cmd) session.send(cmd);
  });
  stepSlider?.addEventListener("change", () => {
    session.send(sliderToCommand("step", stepSlider.value));
  });
}
