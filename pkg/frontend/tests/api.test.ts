import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { domainTabletop, fakeServer, jobDone, submitBad } from "./helpers.js";

describe("ApiClient", () => {
  it("fetches and types domain detail", async () => {
    const { client } = fakeServer({ "GET /api/domains/tabletop": domainTabletop() });
    const domain = await client.getDomain("tabletop");
    expect(domain.id).toBe("tabletop");
    expect(domain.actions.map((a) => a.name)).toEqual(["pickup", "place"]);
    expect(domain.aliases.gl).toBe("the left gripper");
  });

  it("raises structured errors from {code, message, details} bodies", async () => {
    const { client } = fakeServer({});
    const err = await client.getDomain("narnia").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(404);
    expect(err.code).toBe("not-found");
  });

  it("posts plans with a JSON body", async () => {
    const { client, requests } = fakeServer({
      "POST /api/sessions/s1/problems/p1/plans": submitBad(),
    });
    const result = await client.submitPlan("s1", "p1", "tabletop", "(place b1 gl l3)");
    expect(result.verdict).toBe("precondition-failure");
    expect(JSON.parse(requests[0].body!)).toEqual({
      domain: "tabletop",
      plan: "(place b1 gl l3)",
    });
  });

  it("polls a job until it is done", async () => {
    let calls = 0;
    const { client } = fakeServer({
      "GET /api/jobs/j-fixture": () => {
        calls += 1;
        return calls < 3 ? { id: "j-fixture", state: "running", trace: null, message: null } : jobDone();
      },
    });
    const job = await client.pollJob("j-fixture", 1);
    expect(job.state).toBe("done");
    expect(calls).toBe(3);
  });

  it("times out a job that never finishes", async () => {
    const { client } = fakeServer({
      "GET /api/jobs/stuck": { id: "stuck", state: "running", trace: null, message: null },
    });
    const err = await client.pollJob("stuck", 1, 10).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("timeout");
  });
});
