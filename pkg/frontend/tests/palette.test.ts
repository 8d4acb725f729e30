import { describe, expect, it } from "vitest";

import {
  blocksToPlanText,
  buildPalette,
  planTextToBlocks,
  renderBlockLabel,
  type BlockInstance,
} from "../src/palette.js";
import { domainTabletop } from "./helpers.js";

const palette = () => buildPalette(domainTabletop(), "p1");

describe("buildPalette", () => {
  it("creates one block kind per action schema", () => {
    const p = palette();
    expect(p.blocks.map((b) => b.action)).toEqual(["pickup", "place"]);
  });

  it("populates dropdowns exactly from the served choice lists", () => {
    const pickup = palette().blocks[0];
    expect(pickup.params).toHaveLength(3);
    expect(pickup.params[0].choices).toEqual(["b1", "b2"]);
    expect(pickup.params[1].choices).toEqual(["gl", "gr"]);
    expect(pickup.params[2].choices).toEqual(["l1", "l2", "l3"]);
    expect(pickup.disabled).toBe(false);
  });

  it("disables a block whose parameter has no admissible objects", () => {
    const domain = domainTabletop();
    domain.problems[0].choices.pickup[1] = [];
    const pickup = buildPalette(domain, "p1").blocks[0];
    expect(pickup.disabled).toBe(true);
    expect(pickup.disabledReason).toContain("no objects of type");
  });

  it("rejects an unknown problem id", () => {
    expect(() => buildPalette(domainTabletop(), "p99")).toThrow(/no problem/);
  });
});

describe("block labels", () => {
  it("fills the display template slots", () => {
    const pickup = palette().blocks[0];
    expect(renderBlockLabel(pickup, ["b1", "gl", "l1"])).toBe("pick up b1 with gl");
  });
});

describe("plan serialization", () => {
  const blocks: BlockInstance[] = [
    { action: "pickup", args: ["b1", "gl", "l1"] },
    { action: "place", args: ["b1", "gl", "l3"] },
  ];

  it("serializes blocks to the plan wire format", () => {
    expect(blocksToPlanText(blocks)).toBe("(pickup b1 gl l1)\n(place b1 gl l3)");
  });

  it("round-trips blocks -> text -> blocks as the identity", () => {
    expect(planTextToBlocks(blocksToPlanText(blocks), palette())).toEqual(blocks);
  });

  it("ignores blank lines and comments when parsing", () => {
    const parsed = planTextToBlocks("\n; note\n(pickup b1 gl l1) ; grab\n", palette());
    expect(parsed).toEqual([{ action: "pickup", args: ["b1", "gl", "l1"] }]);
  });

  it("refuses an argument outside the dropdown choices", () => {
    expect(() => planTextToBlocks("(pickup l1 gl l1)", palette())).toThrow(
      /not a legal/,
    );
  });

  it("refuses unknown actions and wrong arity", () => {
    expect(() => planTextToBlocks("(teleport b1)", palette())).toThrow(/unknown action/);
    expect(() => planTextToBlocks("(pickup b1 gl)", palette())).toThrow(/3 arguments/);
  });
});
