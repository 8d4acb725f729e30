import { describe, expect, it } from "vitest";

import { PlaybackState, renderActionCaption } from "../src/playback.js";
import { domainTabletop, jobDone, problemP1 } from "./helpers.js";

function playback(): PlaybackState {
  return new PlaybackState(jobDone().trace!, problemP1().workspace);
}

describe("PlaybackState", () => {
  it("derives the duration from the last timestamp", () => {
    const p = playback();
    const trace = jobDone().trace!;
    const last = trace.segments.at(-1)!.waypoints.at(-1)!;
    expect(p.duration).toBeCloseTo(last.t, 6);
  });

  it("clamps the cursor to [0, duration]", () => {
    const p = playback();
    p.seek(-5);
    expect(p.cursor).toBe(0);
    p.seek(p.duration + 100);
    expect(p.cursor).toBe(p.duration);
    expect(p.finished).toBe(true);
  });

  it("advances by scaled wall-clock time", () => {
    const p = playback();
    p.speed = 2;
    p.advance(0.5);
    expect(p.cursor).toBeCloseTo(1.0, 9);
  });

  it("highlights the plan step of the segment under the cursor", () => {
    const p = playback();
    p.seek(0);
    expect(p.highlightedStep).toBe(0);
    p.seek(p.duration);
    expect(p.highlightedStep).toBe(1);
  });

  it("starts the scene at the bound workspace positions", () => {
    const p = playback();
    p.seek(0);
    const scene = p.scene();
    expect(scene.objects.b1).toEqual([0.4, 0.6]);
    expect(scene.grippers.gl).toEqual([0.2, 1.0]);
    expect(scene.grippers.gr).toEqual([1.8, 1.0]);
  });

  it("moves the attached object with its gripper", () => {
    const p = playback();
    const trace = jobDone().trace!;
    const carrying = trace.segments[1];
    const mid = (carrying.waypoints[0].t + carrying.waypoints.at(-1)!.t) / 2;
    p.seek(mid);
    const scene = p.scene();
    expect(scene.objects.b1).toEqual(scene.grippers.gl);
  });

  it("interpolates linearly between waypoints", () => {
    const p = playback();
    const [w0, w1] = jobDone().trace!.segments[0].waypoints;
    p.seek((w0.t + w1.t) / 2);
    const scene = p.scene();
    expect(scene.grippers.gl[0]).toBeCloseTo((w0.x + w1.x) / 2, 6);
    expect(scene.grippers.gl[1]).toBeCloseTo((w0.y + w1.y) / 2, 6);
  });

  it("ends with the carried object at the goal location's point", () => {
    const p = playback();
    p.seek(p.duration);
    const scene = p.scene();
    const l3 = problemP1().workspace.locations.l3;
    expect(scene.objects.b1[0]).toBeCloseTo(l3[0], 6);
    expect(scene.objects.b1[1]).toBeCloseTo(l3[1], 6);
  });
});

describe("renderActionCaption", () => {
  it("uses the same display templates and aliases as the explanations", () => {
    const caption = renderActionCaption("(place b1 gl l3)", domainTabletop());
    expect(caption).toBe("put b1 at l3 with the left gripper");
  });

  it("falls back for untemplated actions", () => {
    const caption = renderActionCaption("(mystery a b)", domainTabletop());
    expect(caption).toBe("do mystery with (a, b)");
  });
});
