import type { AnalyzeRequest, AnalyzeResponse, ApiError, HealthResponse } from "./types";

/** Thrown for non-2xx responses, carrying the service's JSON error body. */
export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiError,
  ) {
    super(body.detail ? `${body.error}: ${body.detail}` : body.error);
    this.name = "ServiceError";
  }
}

/**
 * Client for the span service. At most one analyze request is in flight:
 * starting a new one aborts the previous (latest wins).
 */
export class AnalyzeClient {
  private inflight: AbortController | null = null;

  constructor(private readonly baseUrl: string = "") {}

  async health(): Promise<HealthResponse> {
    const res = await fetch(`${this.baseUrl}/health`);
    return (await res.json()) as HealthResponse;
  }

  async analyze(req: AnalyzeRequest): Promise<AnalyzeResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const res = await fetch(`${this.baseUrl}/analyze`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(req),
        signal: controller.signal,
      });
      if (!res.ok) {
        let body: ApiError;
        try {
          body = (await res.json()) as ApiError;
        } catch {
          body = { error: `http_${res.status}` };
        }
        throw new ServiceError(res.status, body);
      }
      return (await res.json()) as AnalyzeResponse;
    } finally {
      if (this.inflight === controller) {
        this.inflight = null;
      }
    }
  }
}

export function isAbortError(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}
