import { describe, expect, it } from "vitest";

import { makeTransform, renderScene, type DrawingSurface } from "../src/canvas.js";
import { PlaybackState } from "../src/playback.js";
import { jobDone, problemP1 } from "./helpers.js";

function recordingSurface() {
  const calls: { op: string; args: unknown[] }[] = [];
  const ctx: DrawingSurface = {
    fillStyle: "",
    strokeStyle: "",
    lineWidth: 1,
    font: "",
    textAlign: "",
    beginPath: () => calls.push({ op: "beginPath", args: [] }),
    arc: (...args) => calls.push({ op: "arc", args }),
    rect: (...args) => calls.push({ op: "rect", args }),
    fill: () => calls.push({ op: "fill", args: [] }),
    stroke: () => calls.push({ op: "stroke", args: [] }),
    fillRect: (...args) => calls.push({ op: "fillRect", args }),
    fillText: (...args) => calls.push({ op: "fillText", args }),
  };
  return { ctx, calls };
}

const view = { widthPx: 640, heightPx: 480 };

describe("makeTransform", () => {
  it("maps workspace coordinates to pixels, flipping y", () => {
    const ws = problemP1().workspace;
    const { scale, toPx } = makeTransform(ws, view);
    const [xmin, ymin, xmax, ymax] = ws.bounds;
    expect(scale).toBeCloseTo(Math.min(640 / (xmax - xmin), 480 / (ymax - ymin)), 9);
    expect(toPx([xmin, ymin])).toEqual([0, 480]);
    const [, topY] = toPx([xmin, ymax]);
    expect(topY).toBeLessThan(480);
  });
});

describe("renderScene", () => {
  it("draws every location, obstacle, object, and gripper to scale", () => {
    const ws = problemP1().workspace;
    const playback = new PlaybackState(jobDone().trace!, ws);
    const { ctx, calls } = recordingSurface();
    renderScene(ctx, ws, playback.scene(), view, "pick up b1 with the left gripper");
    const discs = calls.filter((c) => c.op === "arc").length;
    const expected =
      Object.keys(ws.locations).length +
      ws.obstacles.length +
      Object.keys(ws.objects).length +
      Object.keys(ws.grippers).length;
    expect(discs).toBe(expected);
    const texts = calls.filter((c) => c.op === "fillText").map((c) => c.args[0]);
    expect(texts).toContain("b1");
    expect(texts).toContain("gl");
    expect(texts).toContain("pick up b1 with the left gripper");
  });
});
