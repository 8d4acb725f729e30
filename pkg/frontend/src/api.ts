/** Thin typed client over the service's JSON endpoints. */

import type {
  DomainDetail,
  DomainSummary,
  ErrorBody,
  JobOut,
  ProblemDetail,
  SessionOut,
  SubmissionOut,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

/** Structured error mirroring the service's {code, message, details} bodies. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly details: Record<string, unknown> = {},
  ) {
    super(message);
    this.name = "ApiError";
  }
}

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) =>
      fetch(url, init) as unknown as ReturnType<FetchLike>,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = (await response.json()) as Record<string, unknown>;
    if (response.status >= 400) {
      const err = payload as unknown as ErrorBody;
      throw new ApiError(
        response.status,
        err.code ?? "error",
        err.message ?? `request failed with status ${response.status}`,
        err.details ?? {},
      );
    }
    return payload as T;
  }

  listDomains(): Promise<DomainSummary[]> {
    return this.request("GET", "/api/domains");
  }

  getDomain(domainId: string): Promise<DomainDetail> {
    return this.request("GET", `/api/domains/${domainId}`);
  }

  getProblem(domainId: string, problemId: string): Promise<ProblemDetail> {
    return this.request("GET", `/api/domains/${domainId}/problems/${problemId}`);
  }

  createSession(): Promise<SessionOut> {
    return this.request("POST", "/api/sessions");
  }

  submitPlan(
    sessionId: string,
    problemId: string,
    domainId: string,
    planText: string,
  ): Promise<SubmissionOut> {
    return this.request("POST", `/api/sessions/${sessionId}/problems/${problemId}/plans`, {
      domain: domainId,
      plan: planText,
    });
  }

  getJob(jobId: string): Promise<JobOut> {
    return this.request("GET", `/api/jobs/${jobId}`);
  }

  /** Poll a refinement job until it reaches a terminal state. */
  async pollJob(jobId: string, intervalMs = 100, timeoutMs = 30_000): Promise<JobOut> {
    const deadline = Date.now() + timeoutMs;
    for (;;) {
      const job = await this.getJob(jobId);
      if (job.state === "done" || job.state === "failed") return job;
      if (Date.now() >= deadline) {
        throw new ApiError(0, "timeout", `job ${jobId} did not finish in ${timeoutMs} ms`);
      }
      await sleep(intervalMs);
    }
  }
}
