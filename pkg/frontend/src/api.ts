// Typed client for the recommendation service. Every number the UI shows
// comes back through these calls; the client never computes scores.

import type {
  AlternativesJson,
  AssessPayload,
  AssessmentJson,
  EmbeddingJson,
  HealthJson,
  HistoryJson,
  ProductJson,
  ProductListJson,
  RecommendPayload,
  RoutineJson,
  SessionCreatedJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, "network_error", `service unreachable: ${String(err)}`);
    }
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const code = typeof body.code === "string" ? body.code : "error";
      const message = typeof body.message === "string" ? body.message : response.statusText;
      throw new ApiError(response.status, code, message);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  health(): Promise<HealthJson> {
    return this.request("/health");
  }

  products(filters: {
    category?: string;
    skin_type?: string;
    issue?: string;
    brand?: string;
  } = {}): Promise<ProductListJson> {
    const params = new URLSearchParams();
    for (const [key, value] of Object.entries(filters)) {
      if (value) params.set(key, value);
    }
    const query = params.toString();
    return this.request(`/products${query ? `?${query}` : ""}`);
  }

  product(id: number): Promise<ProductJson> {
    return this.request(`/products/${id}`);
  }

  embedding(scope: string): Promise<EmbeddingJson> {
    return this.request(`/embedding?scope=${encodeURIComponent(scope)}`);
  }

  assess(payload: AssessPayload): Promise<AssessmentJson> {
    return this.post("/assess", payload);
  }

  createSession(): Promise<SessionCreatedJson> {
    return this.post("/sessions", {});
  }

  recommend(sessionId: string, payload: RecommendPayload): Promise<RoutineJson> {
    return this.post(`/sessions/${sessionId}/recommend`, payload);
  }

  alternatives(sessionId: string, category: string, brand: string): Promise<AlternativesJson> {
    return this.post(`/sessions/${sessionId}/alternatives`, { category, brand });
  }

  history(sessionId: string): Promise<HistoryJson> {
    return this.request(`/sessions/${sessionId}/history`);
  }
}
