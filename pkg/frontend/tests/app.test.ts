/** The full tutoring loop against canned service responses: a flawed plan
 * shows the explanation with the failing block highlighted; the good plan
 * plays back until the object sits at the goal location. */

import { describe, expect, it } from "vitest";

import { submitAndDisplay, type View } from "../src/app.js";
import { buildPalette, planTextToBlocks } from "../src/palette.js";
import type { PlaybackState } from "../src/playback.js";
import {
  domainTabletop,
  fakeServer,
  jobDone,
  problemP1,
  submitBad,
  submitGood,
} from "./helpers.js";

interface RecordedView extends View {
  notices: string[];
  explanations: { paragraph: string; stepIndex: number | null; repeat: boolean }[];
  errors: string[];
  playbacks: PlaybackState[];
  busy: boolean[];
}

function recordedView(): RecordedView {
  const view: RecordedView = {
    notices: [],
    explanations: [],
    errors: [],
    playbacks: [],
    busy: [],
    showNotice: (m) => view.notices.push(m),
    showExplanation: (paragraph, stepIndex, repeat) =>
      view.explanations.push({ paragraph, stepIndex, repeat }),
    startPlayback: (p) => view.playbacks.push(p),
    showError: (m) => view.errors.push(m),
    setBusy: (b) => view.busy.push(b),
  };
  return view;
}

const SUBMIT = "POST /api/sessions/s1/problems/p1/plans";
const workspace = () => problemP1().workspace;

describe("submitAndDisplay", () => {
  it("refuses to submit an empty workspace", async () => {
    const { client, requests } = fakeServer({});
    const view = recordedView();
    await submitAndDisplay(client, view, "s1", "tabletop", "p1", [], workspace());
    expect(view.notices).toEqual(["plan is empty — add at least one block"]);
    expect(requests).toHaveLength(0);
  });

  it("shows the explanation and highlights the failing block for a bad plan", async () => {
    const { client, requests } = fakeServer({ [SUBMIT]: submitBad() });
    const view = recordedView();
    const blocks = planTextToBlocks("(place b1 gl l3)", buildPalette(domainTabletop(), "p1"));
    await submitAndDisplay(client, view, "s1", "tabletop", "p1", blocks, workspace());
    expect(view.explanations).toHaveLength(1);
    expect(view.explanations[0].paragraph).toContain("requires that");
    expect(view.explanations[0].stepIndex).toBe(0);
    expect(view.playbacks).toHaveLength(0);
    expect(JSON.parse(requests[0].body!).plan).toBe("(place b1 gl l3)");
    expect(view.busy).toEqual([true, false]);
  });

  it("plays back a good plan to the goal location", async () => {
    const { client } = fakeServer({
      [SUBMIT]: submitGood(),
      "GET /api/jobs/j-fixture": jobDone(),
    });
    const view = recordedView();
    const blocks = planTextToBlocks(
      "(pickup b1 gl l1)\n(place b1 gl l3)",
      buildPalette(domainTabletop(), "p1"),
    );
    await submitAndDisplay(client, view, "s1", "tabletop", "p1", blocks, workspace());
    expect(view.explanations).toHaveLength(0);
    expect(view.playbacks).toHaveLength(1);
    const playback = view.playbacks[0];
    playback.seek(playback.duration);
    const scene = playback.scene();
    const l3 = workspace().locations.l3;
    expect(scene.objects.b1[0]).toBeCloseTo(l3[0], 6);
    expect(scene.objects.b1[1]).toBeCloseTo(l3[1], 6);
  });

  it("surfaces a failed refinement without clearing anything", async () => {
    const { client } = fakeServer({
      [SUBMIT]: submitGood(),
      "GET /api/jobs/j-fixture": {
        id: "j-fixture",
        state: "failed",
        trace: { status: "failed", speed: 0.5, segments: [], failed_step: 1, reason: "no-path" },
        message: "Step 2 (put b1 at l3 with the left gripper) could not be turned into a motion: no-path.",
      },
    });
    const view = recordedView();
    const blocks = planTextToBlocks(
      "(pickup b1 gl l1)\n(place b1 gl l3)",
      buildPalette(domainTabletop(), "p1"),
    );
    await submitAndDisplay(client, view, "s1", "tabletop", "p1", blocks, workspace());
    expect(view.errors).toHaveLength(1);
    expect(view.errors[0]).toContain("could not be turned into a motion");
    expect(view.playbacks).toHaveLength(0);
  });

  it("surfaces transport errors non-destructively", async () => {
    const { client } = fakeServer({});
    const view = recordedView();
    const blocks = planTextToBlocks("(place b1 gl l3)", buildPalette(domainTabletop(), "p1"));
    await submitAndDisplay(client, view, "s1", "tabletop", "p1", blocks, workspace());
    expect(view.errors).toHaveLength(1);
    expect(view.busy).toEqual([true, false]);
  });

  it("marks repeated mistakes", async () => {
    const repeat = { ...submitBad(), repeat: true };
    const { client } = fakeServer({ [SUBMIT]: repeat });
    const view = recordedView();
    const blocks = planTextToBlocks("(place b1 gl l3)", buildPalette(domainTabletop(), "p1"));
    await submitAndDisplay(client, view, "s1", "tabletop", "p1", blocks, workspace());
    expect(view.explanations[0].repeat).toBe(true);
  });
});
