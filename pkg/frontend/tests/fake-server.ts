// Stateful in-memory stand-in for the recommendation service, faithful to
// its wire format. Used by the scripted flow tests; the live test talks to
// the real thing.

import type {
  CategoryEntryJson,
  RoutineJson,
  ScoredProductJson,
} from "../src/types.js";

export interface RequestLogEntry {
  method: string;
  path: string;
  body: unknown;
}

const CATEGORIES = ["Cleanser", "Moisturizer", "Treatment", "Mask", "Sunscreen"];

function scored(id: number, final: number, cos: number, mf: number, brand: string): ScoredProductJson {
  return {
    product_id: id,
    final_score: final,
    cosine_part: cos,
    mf_part: mf,
    brand,
    name: `Product ${id}`,
  };
}

/** Deterministic fake ranking: order flips between alpha=1 and alpha=0. */
function fakeCategories(alpha: number, anchor: number | null): CategoryEntryJson[] {
  return CATEGORIES.map((category, c) => {
    const base = c * 10;
    const byCosine = [
      scored(base + 1, 0.91, 0.91, 0.2, "ALPHABRAND"),
      scored(base + 2, 0.72, 0.72, 0.5, "BETABRAND"),
      scored(base + 3, 0.43, 0.43, 0.9, "GAMMABRAND"),
    ];
    const byMf = [...byCosine]
      .sort((a, b) => b.mf_part - a.mf_part)
      .map((p) => ({ ...p, final_score: p.mf_part }));
    const blended = alpha >= 0.5 ? byCosine : byMf;
    const products = blended
      .filter((p) => p.product_id !== anchor)
      .map((p) => ({ ...p, final_score: alpha * p.cosine_part + (1 - alpha) * p.mf_part }));
    return { category, products };
  });
}

export class FakeServer {
  log: RequestLogEntry[] = [];
  responses: unknown[] = [];
  down = false;
  private sessions = new Map<string, RoutineJson[]>();
  private counter = 0;

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    if (this.down) throw new Error("connection refused");
    const method = init?.method ?? "GET";
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    this.log.push({ method, path, body });
    const payload = this.route(method, path, body);
    this.responses.push(payload.body);
    return new Response(JSON.stringify(payload.body), {
      status: payload.status,
      headers: { "content-type": "application/json" },
    });
  };

  private route(method: string, path: string, body: any): { status: number; body: unknown } {
    if (path === "/health") {
      return { status: 200, body: { status: "ok", products: 50, fingerprint: "f" } };
    }
    if (path === "/sessions" && method === "POST") {
      const id = `session-${++this.counter}`;
      this.sessions.set(id, []);
      return { status: 200, body: { session_id: id, created_at: "2026-01-01T00:00:00+00:00" } };
    }
    if (path === "/assess" && method === "POST") {
      if (body.questionnaire) {
        const q = body.questionnaire;
        const skin =
          q.reacts_to_new_products ? "Sensitive"
          : q.tightness_after_wash === "always" && q.midday_shine === "none" ? "Dry"
          : q.tightness_after_wash === "never" && q.midday_shine === "allover" ? "Oily"
          : q.midday_shine === "tzone" ? "Combination"
          : "Normal";
        return {
          status: 200,
          body: {
            skin_type: skin,
            concern: q.primary_goal,
            concern_probs: [0, 0, 0, 1],
            source: "questionnaire",
          },
        };
      }
      if (body.confidences) {
        return {
          status: 200,
          body: {
            skin_type: body.skin_type,
            concern: "Acne",
            concern_probs: [0.9, 0.05, 0.03, 0.02],
            source: "classifier",
          },
        };
      }
      return {
        status: 200,
        body: {
          skin_type: body.skin_type,
          concern: body.concern,
          concern_probs: [1, 0, 0, 0],
          source: "direct",
        },
      };
    }
    const recommend = path.match(/^\/sessions\/([^/]+)\/recommend$/);
    if (recommend && method === "POST") {
      const history = this.sessions.get(recommend[1]);
      if (!history) return { status: 404, body: { code: "unknown_session", message: "no session" } };
      const alpha = body.alpha ?? 0.5;
      const anchor = body.anchor ?? null;
      const routine: RoutineJson = {
        session_id: recommend[1],
        created_at: `2026-01-01T00:0${history.length}:00+00:00`,
        alpha,
        anchor,
        assessment: {
          skin_type: body.assessment.skin_type ?? "Dry",
          concern: body.assessment.concern ?? "Acne",
          concern_probs: [1, 0, 0, 0],
          source: "direct",
        },
        categories: fakeCategories(alpha, anchor),
      };
      history.push(routine);
      return { status: 200, body: routine };
    }
    const alternatives = path.match(/^\/sessions\/([^/]+)\/alternatives$/);
    if (alternatives && method === "POST") {
      if (!this.sessions.has(alternatives[1])) {
        return { status: 404, body: { code: "unknown_session", message: "no session" } };
      }
      if (body.brand === "EMPTYBRAND") {
        return {
          status: 200,
          body: { session_id: alternatives[1], category: body.category, brand: body.brand, products: [] },
        };
      }
      if (body.brand === "NOBRAND") {
        return { status: 404, body: { code: "unknown_brand", message: "brand not in catalog" } };
      }
      return {
        status: 200,
        body: {
          session_id: alternatives[1],
          category: body.category,
          brand: body.brand,
          products: [scored(77, 0.66, 0.66, 0, body.brand), scored(78, 0.31, 0.31, 0, body.brand)],
        },
      };
    }
    const history = path.match(/^\/sessions\/([^/]+)\/history$/);
    if (history && method === "GET") {
      const routines = this.sessions.get(history[1]);
      if (!routines) return { status: 404, body: { code: "unknown_session", message: "no session" } };
      return {
        status: 200,
        body: { session_id: history[1], created_at: "2026-01-01T00:00:00+00:00", routines },
      };
    }
    if (path.startsWith("/embedding")) {
      const scope = decodeURIComponent(path.split("scope=")[1] ?? "global");
      const categories = scope === "global" ? CATEGORIES : [scope.split(":")[1]];
      const points = categories.flatMap((category, c) =>
        [0, 1, 2].map((i) => ({
          product_id: c * 10 + i + 1,
          x: c + i * 0.1,
          y: c - i * 0.2,
          category,
          issue: i === 0 ? "Acne" : null,
          brand: "ALPHABRAND",
          name: `Product ${c * 10 + i + 1}`,
        })),
      );
      return { status: 200, body: { scope, count: points.length, points } };
    }
    return { status: 404, body: { code: "not_found", message: `no route ${method} ${path}` } };
  }
}

/** Every numeric value in every recorded response body. */
export function numbersInResponses(server: FakeServer): Set<number> {
  const out = new Set<number>();
  const walk = (value: unknown): void => {
    if (typeof value === "number") out.add(value);
    else if (Array.isArray(value)) value.forEach(walk);
    else if (value && typeof value === "object") Object.values(value).forEach(walk);
  };
  server.responses.forEach(walk);
  return out;
}
