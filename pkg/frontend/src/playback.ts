/** Trajectory playback: a clamped time cursor over a served trace, and the
 * interpolated scene (gripper and object positions) at any instant.  The
 * trace's own timestamps drive the motion; nothing is recomputed. */

import type { DomainDetail, Trace, TraceSegment, Workspace } from "./types.js";

export type Point = [number, number];

export interface Scene {
  grippers: Record<string, Point>;
  objects: Record<string, Point>;
  /** Index into trace.segments of the segment containing the cursor. */
  segmentIndex: number;
  /** Plan step index (0-based) to highlight in the block workspace. */
  highlightedStep: number;
}

function segmentStart(seg: TraceSegment): number {
  return seg.waypoints[0]?.t ?? 0;
}

function segmentEnd(seg: TraceSegment): number {
  return seg.waypoints[seg.waypoints.length - 1]?.t ?? 0;
}

function interpolate(seg: TraceSegment, t: number): Point {
  const points = seg.waypoints;
  if (t <= points[0].t) return [points[0].x, points[0].y];
  for (let i = 0; i + 1 < points.length; i++) {
    const a = points[i];
    const b = points[i + 1];
    if (t <= b.t) {
      const span = b.t - a.t;
      const f = span <= 0 ? 1 : (t - a.t) / span;
      return [a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)];
    }
  }
  const last = points[points.length - 1];
  return [last.x, last.y];
}

export class PlaybackState {
  readonly duration: number;
  private cursorSeconds = 0;
  speed = 1;

  constructor(
    readonly trace: Trace,
    readonly workspace: Workspace,
  ) {
    const segments = trace.segments;
    this.duration = segments.length ? segmentEnd(segments[segments.length - 1]) : 0;
  }

  get cursor(): number {
    return this.cursorSeconds;
  }

  get finished(): boolean {
    return this.cursorSeconds >= this.duration;
  }

  seek(t: number): void {
    this.cursorSeconds = Math.min(Math.max(t, 0), this.duration);
  }

  /** Advance by wall-clock seconds, scaled by the speed multiplier. */
  advance(dt: number): void {
    this.seek(this.cursorSeconds + dt * this.speed);
  }

  segmentIndexAt(t: number): number {
    const segments = this.trace.segments;
    if (!segments.length) return -1;
    for (let i = 0; i < segments.length; i++) {
      if (t <= segmentEnd(segments[i]) || i === segments.length - 1) return i;
    }
    return segments.length - 1;
  }

  get highlightedStep(): number {
    const i = this.segmentIndexAt(this.cursorSeconds);
    return i < 0 ? -1 : this.trace.segments[i].step;
  }

  /** Positions of every gripper and object at the cursor. */
  scene(): Scene {
    const grippers: Record<string, Point> = {};
    const objects: Record<string, Point> = {};
    for (const [name, g] of Object.entries(this.workspace.grippers)) {
      grippers[name] = [g.position[0], g.position[1]];
    }
    for (const [name, o] of Object.entries(this.workspace.objects)) {
      if (o.position) objects[name] = [o.position[0], o.position[1]];
    }
    const t = this.cursorSeconds;
    const index = this.segmentIndexAt(t);
    for (let i = 0; i <= index; i++) {
      const seg = this.trace.segments[i];
      const pos = i === index && t < segmentEnd(seg) ? interpolate(seg, t) : interpolate(seg, segmentEnd(seg));
      grippers[seg.mover] = pos;
      if (seg.attached && t >= segmentStart(seg)) objects[seg.attached] = pos;
    }
    return {
      grippers,
      objects,
      segmentIndex: index,
      highlightedStep: index < 0 ? -1 : this.trace.segments[index].step,
    };
  }
}

/** Caption a trace segment's "(action arg ...)" with the domain's display
 * templates and object aliases — the same vocabulary the explanations use. */
export function renderActionCaption(actionText: string, domain: DomainDetail): string {
  const inner = actionText.replace(/^\(|\)$/g, "").trim();
  const [name, ...args] = inner.split(/\s+/);
  const aliased = args.map((a) => domain.aliases[a] ?? a);
  const schema = domain.actions.find((a) => a.name === name);
  if (!schema) {
    return aliased.length ? `do ${name} with (${aliased.join(", ")})` : `do ${name}`;
  }
  return schema.display.replace(/\{(\d+)\}/g, (_, i) => aliased[Number(i)] ?? `{${i}}`);
}
