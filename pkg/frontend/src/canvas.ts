/** Scale-true 2D rendering of a workspace scene onto a canvas context.
 * Takes the minimal drawing surface below rather than CanvasRenderingContext2D
 * so the renderer is testable without a browser. */

import type { Point, Scene } from "./playback.js";
import type { Workspace } from "./types.js";

export interface DrawingSurface {
  fillStyle: unknown;
  strokeStyle: unknown;
  lineWidth: number;
  font: string;
  textAlign: unknown;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  rect(x: number, y: number, w: number, h: number): void;
  fill(): void;
  stroke(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
}

export interface Viewport {
  widthPx: number;
  heightPx: number;
}

const COLORS = {
  background: "#fafafa",
  bounds: "#444444",
  obstacle: "#9e9e9e",
  location: "#c8e6c9",
  object: "#1976d2",
  gripper: "#e65100",
  label: "#212121",
};

export function makeTransform(workspace: Workspace, view: Viewport) {
  const [xmin, ymin, xmax, ymax] = workspace.bounds;
  const scale = Math.min(view.widthPx / (xmax - xmin), view.heightPx / (ymax - ymin));
  // y grows upward in the workspace, downward on canvas
  return {
    scale,
    toPx([x, y]: Point): Point {
      return [(x - xmin) * scale, view.heightPx - (y - ymin) * scale];
    },
  };
}

function disc(ctx: DrawingSurface, center: Point, rPx: number, fill: string): void {
  ctx.beginPath();
  ctx.arc(center[0], center[1], rPx, 0, 2 * Math.PI);
  ctx.fillStyle = fill;
  ctx.fill();
}

function label(ctx: DrawingSurface, text: string, at: Point): void {
  ctx.fillStyle = COLORS.label;
  ctx.font = "12px sans-serif";
  ctx.textAlign = "center";
  ctx.fillText(text, at[0], at[1] - 6);
}

export function renderScene(
  ctx: DrawingSurface,
  workspace: Workspace,
  scene: Scene,
  view: Viewport,
  caption = "",
): void {
  const { scale, toPx } = makeTransform(workspace, view);
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, view.widthPx, view.heightPx);

  for (const [name, point] of Object.entries(workspace.locations)) {
    disc(ctx, toPx(point), 0.04 * scale, COLORS.location);
    label(ctx, name, toPx(point));
  }
  for (const [x, y, r] of workspace.obstacles) {
    disc(ctx, toPx([x, y]), r * scale, COLORS.obstacle);
  }
  for (const [name, point] of Object.entries(scene.objects)) {
    disc(ctx, toPx(point), workspace.objects[name].radius * scale, COLORS.object);
    label(ctx, name, toPx(point));
  }
  for (const [name, point] of Object.entries(scene.grippers)) {
    disc(ctx, toPx(point), workspace.grippers[name].radius * scale, COLORS.gripper);
    label(ctx, name, toPx(point));
  }
  if (caption) {
    ctx.fillStyle = COLORS.label;
    ctx.font = "14px sans-serif";
    ctx.textAlign = "left";
    ctx.fillText(caption, 8, 18);
  }
}
