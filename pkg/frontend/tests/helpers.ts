/** Shared test scaffolding: fixture loading and a canned in-memory transport
 * that mimics the service's routes. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ApiClient, type FetchLike } from "../src/api.js";
import type { DomainDetail, JobOut, ProblemDetail, SubmissionOut } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", `${name}.json`), "utf8")) as T;
}

export const domainTabletop = () => fixture<DomainDetail>("domain_tabletop");
export const problemP1 = () => fixture<ProblemDetail>("problem_p1");
export const submitBad = () => fixture<SubmissionOut>("submit_bad");
export const submitGood = () => fixture<SubmissionOut>("submit_good");
export const jobDone = () => fixture<JobOut>("job_done");

export interface FakeServer {
  client: ApiClient;
  requests: { method: string; url: string; body?: string }[];
}

/** Routes requests to canned responses; unmatched paths get a 404 body. */
export function fakeServer(routes: Record<string, unknown>): FakeServer {
  const requests: FakeServer["requests"] = [];
  const fetchFn: FetchLike = async (url, init) => {
    requests.push({ method: init?.method ?? "GET", url, body: init?.body });
    const key = `${init?.method ?? "GET"} ${url}`;
    if (key in routes) {
      const canned = routes[key];
      const payload = typeof canned === "function" ? (canned as () => unknown)() : canned;
      return { status: 200, json: async () => payload };
    }
    return {
      status: 404,
      json: async () => ({ code: "not-found", message: `no route ${key}`, details: {} }),
    };
  };
  return { client: new ApiClient("", fetchFn), requests };
}
