/**
 * Canvas renderer: draws one frame onto a 2D context.
 *
 * The unit disk maps to the largest centered square of the canvas; polygons
 * are filled from their sampled boundaries with straight segments, labels are
 * drawn at the positions the server computed, and the disk boundary circle
 * is stroked last.  Rendering depends only on the frame content.
 */

import type { FrameMessage, FramePoly, Rgb } from "./protocol.js";

export interface DiskViewport {
  cx: number;
  cy: number;
  scale: number;
}

export function viewport(width: number, height: number): DiskViewport {
  return { cx: width / 2, cy: height / 2, scale: Math.min(width, height) / 2 };
}

export function diskToCanvas(
  vp: DiskViewport,
  x: number,
  y: number,
): [number, number] {
  return [vp.cx + x * vp.scale, vp.cy - y * vp.scale];
}

export function canvasToDisk(
  vp: DiskViewport,
  px: number,
  py: number,
): [number, number] {
  return [(px - vp.cx) / vp.scale, (vp.cy - py) / vp.scale];
}

function cssColor(rgb: Rgb): string {
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

const BACKGROUND = "rgb(18,18,24)";
const RING = "rgb(140,140,155)";

function tracePoly(
  ctx: CanvasRenderingContext2D,
  vp: DiskViewport,
  poly: FramePoly,
): void {
  ctx.beginPath();
  const first = poly.boundary[0];
  if (!first) return;
  ctx.moveTo(...diskToCanvas(vp, first[0], first[1]));
  for (let i = 1; i < poly.boundary.length; i++) {
    const pt = poly.boundary[i];
    if (pt) ctx.lineTo(...diskToCanvas(vp, pt[0], pt[1]));
  }
  ctx.closePath();
}

export function drawFrame(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  frame: FrameMessage,
): void {
  const vp = viewport(width, height);
  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, width, height);
  for (const poly of frame.polys) {
    tracePoly(ctx, vp, poly);
    ctx.fillStyle = cssColor(poly.fill);
    ctx.fill();
  }
  for (const poly of frame.polys) {
    for (const label of poly.labels) {
      const [px, py] = diskToCanvas(vp, label.pos[0], label.pos[1]);
      ctx.fillStyle = cssColor(label.color);
      ctx.font = `${Math.max(10, Math.round(vp.scale / 18))}px sans-serif`;
      ctx.textAlign = "center";
      ctx.textBaseline = "middle";
      ctx.fillText(label.text, px, py);
    }
  }
  ctx.beginPath();
  ctx.arc(vp.cx, vp.cy, vp.scale, 0, 2 * Math.PI);
  ctx.strokeStyle = RING;
  ctx.lineWidth = Math.max(1, vp.scale / 256);
  ctx.stroke();
}

export function hudText(frame: FrameMessage): string {
  const bits: string[] = [`${frame.world} · ${frame.status}`];
  for (const [key, value] of Object.entries(frame.hud)) {
    bits.push(`${key}: ${String(value)}`);
  }
  return bits.join("  ");
}
