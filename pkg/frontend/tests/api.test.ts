import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

interface Recorded {
  url: string;
  method: string;
  body: unknown;
}

function recordingFetch(status: number, payload: unknown) {
  const calls: Recorded[] = [];
  const fetchImpl = async (url: string, init?: RequestInit) => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : null,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { calls, fetchImpl };
}

describe("ApiClient", () => {
  it("builds filtered product queries", async () => {
    const { calls, fetchImpl } = recordingFetch(200, { count: 0, products: [] });
    const api = new ApiClient("http://h", fetchImpl);
    await api.products({ category: "Moisturizer", skin_type: "Dry" });
    expect(calls[0].url).toBe("http://h/products?category=Moisturizer&skin_type=Dry");
    expect(calls[0].method).toBe("GET");
  });

  it("posts recommend payloads to the session endpoint", async () => {
    const { calls, fetchImpl } = recordingFetch(200, {});
    const api = new ApiClient("", fetchImpl);
    await api.recommend("s1", {
      assessment: { skin_type: "Dry", concern: "Acne" },
      anchor: 3,
      alpha: 0.25,
    });
    expect(calls[0].url).toBe("/sessions/s1/recommend");
    expect(calls[0].method).toBe("POST");
    expect(calls[0].body).toEqual({
      assessment: { skin_type: "Dry", concern: "Acne" },
      anchor: 3,
      alpha: 0.25,
    });
  });

  it("encodes embedding scope", async () => {
    const { calls, fetchImpl } = recordingFetch(200, { scope: "", count: 0, points: [] });
    await new ApiClient("", fetchImpl).embedding("category:Moisturizer");
    expect(calls[0].url).toBe("/embedding?scope=category%3AMoisturizer");
  });

  it("surfaces machine-readable error codes", async () => {
    const { fetchImpl } = recordingFetch(404, { code: "unknown_brand", message: "no brand" });
    const api = new ApiClient("", fetchImpl);
    await expect(api.alternatives("s1", "Mask", "NOPE")).rejects.toMatchObject({
      status: 404,
      code: "unknown_brand",
    });
  });

  it("maps network failures to status 0", async () => {
    const api = new ApiClient("", async () => {
      throw new Error("connection refused");
    });
    await expect(api.health()).rejects.toMatchObject({ status: 0, code: "network_error" });
    await expect(api.health()).rejects.toBeInstanceOf(ApiError);
  });
});
