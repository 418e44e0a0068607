import {
  AuthResponse,
  EnrollmentProgress,
  FeatureSummary,
  FinalizeResponse,
  SubmitSampleResponse,
  WireEvent,
} from "./types";

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

type FetchLike = typeof fetch;

/** Thin client for the /v1 enrollment and authentication endpoints. */
export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await res.json().catch(() => ({}));
    if (!res.ok) {
      const detail = typeof payload?.detail === "string"
        ? payload.detail
        : `HTTP ${res.status}`;
      throw new ApiError(res.status, detail);
    }
    return payload as T;
  }

  createUser(userId: string, secret: string): Promise<{ user_id: string }> {
    return this.request("POST", "/v1/users", { user_id: userId, secret });
  }

  enrollmentProgress(userId: string): Promise<EnrollmentProgress> {
    return this.request("GET", `/v1/users/${encodeURIComponent(userId)}/enrollment`);
  }

  submitSample(
    userId: string,
    session: number,
    secret: string,
    events: WireEvent[],
  ): Promise<SubmitSampleResponse> {
    return this.request("POST", `/v1/users/${encodeURIComponent(userId)}/samples`, {
      session,
      secret_text: secret,
      events,
    });
  }

  finalize(userId: string): Promise<FinalizeResponse> {
    return this.request("POST", `/v1/users/${encodeURIComponent(userId)}/finalize`);
  }

  authenticate(userId: string, secret: string, events: WireEvent[]): Promise<AuthResponse> {
    return this.request("POST", `/v1/users/${encodeURIComponent(userId)}/authenticate`, {
      secret,
      events,
    });
  }

  featureSummary(userId: string): Promise<FeatureSummary> {
    return this.request("GET", `/v1/users/${encodeURIComponent(userId)}/feature`);
  }
}
