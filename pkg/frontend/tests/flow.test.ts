// Scripted user session over the controller + pure renderer, with every
// response served by the stateful fake. Verifies the full loop (assess ->
// recommend -> alternatives -> history), that the client does no score
// math (every rendered score value appears verbatim in a recorded server
// response), and the anchor-click wiring.

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AppController } from "../src/controller.js";
import { render } from "../src/render.js";
import { Store } from "../src/store.js";
import { FakeServer, numbersInResponses } from "./fake-server.js";

let server: FakeServer;
let store: Store;
let controller: AppController;

beforeEach(() => {
  server = new FakeServer();
  store = new Store();
  controller = new AppController(new ApiClient("", server.fetch), store);
});

function renderedScores(html: string): number[] {
  return [...html.matchAll(/data-raw="([^"]+)"/g)].map((m) => Number(m[1]));
}

function cardSection(html: string, category: string): string {
  const match = html.match(
    new RegExp(`<article class="card" data-category="${category}">[\\s\\S]*?</article>`),
  );
  return match ? match[0] : "";
}

describe("profile flow", () => {
  it("renders the derived assessment for a questionnaire", async () => {
    await controller.init();
    controller.updateField("tightness_after_wash", "always");
    controller.updateField("midday_shine", "none");
    controller.updateField("primary_goal", "Wrinkles");
    await controller.submitProfile();
    const html = render(store.get());
    expect(html).toContain("<strong>Dry</strong>");
    expect(html).toContain("<strong>Wrinkles</strong>");
    expect(html).toContain("source: questionnaire");
  });

  it("rejects an all-zero confidence vector inline without any request", async () => {
    await controller.init();
    const requestsBefore = server.log.length;
    controller.setFormMode("confidences");
    controller.updateField("confidences", "0, 0, 0, 0");
    await controller.submitProfile();
    expect(server.log.length).toBe(requestsBefore);
    expect(store.get().assessment).toBeNull();
    const html = render(store.get());
    expect(html).toContain('data-field-error="confidences"');
    // the typed values survive
    expect(html).toContain('value="0, 0, 0, 0"');
  });

  it("shows a retryable banner and preserves form values when the service is down", async () => {
    controller.setFormMode("direct");
    controller.updateField("skinType", "Oily");
    controller.updateField("concern", "Pigmentation");
    server.down = true;
    await controller.submitProfile();
    const state = store.get();
    expect(state.banner).toMatch(/unreachable/);
    expect(state.skinType).toBe("Oily");
    expect(state.concern).toBe("Pigmentation");
    const html = render(store.get());
    expect(html).toContain('class="banner"');
  });
});

describe("routine flow", () => {
  async function assessAndRecommend(alpha: number) {
    controller.setFormMode("direct");
    controller.updateField("skinType", "Dry");
    controller.updateField("concern", "Acne");
    await controller.submitProfile();
    controller.updateField("alpha", String(alpha));
    await controller.recommend();
  }

  it("renders at most five products per category card", async () => {
    await controller.init();
    await assessAndRecommend(0.5);
    const html = render(store.get());
    for (const category of ["Cleanser", "Moisturizer", "Treatment", "Mask", "Sunscreen"]) {
      const card = cardSection(html, category);
      expect(card).not.toBe("");
      const rows = card.match(/<li class="product"/g) ?? [];
      expect(rows.length).toBeLessThanOrEqual(5);
    }
  });

  it("shows different orderings at the two blend extremes", async () => {
    await controller.init();
    await assessAndRecommend(1.0);
    const cosineOrder = [...cardSection(render(store.get()), "Cleanser").matchAll(
      /data-product-id="(\d+)"/g,
    )].map((m) => m[1]);
    await controller.recommend; // no-op reference to satisfy lint-ish style
    controller.updateField("alpha", "0");
    await controller.recommend();
    const mfOrder = [...cardSection(render(store.get()), "Cleanser").matchAll(
      /data-product-id="(\d+)"/g,
    )].map((m) => m[1]);
    expect(cosineOrder).not.toEqual(mfOrder);
  });

  it("never invents numbers: every rendered score came from the server", async () => {
    await controller.init();
    await assessAndRecommend(0.3);
    await controller.refreshHistory();
    const html = render(store.get());
    const shown = renderedScores(html);
    expect(shown.length).toBeGreaterThan(0);
    const fromServer = numbersInResponses(server);
    for (const value of shown) {
      expect(fromServer.has(value)).toBe(true);
    }
  });

  it("queues overlapping recommend calls instead of interleaving", async () => {
    await controller.init();
    controller.setFormMode("direct");
    await controller.submitProfile();
    const first = controller.recommend();
    const second = controller.recommend();
    const third = controller.recommend();
    await Promise.all([first, second, third]);
    // wait for the queued follow-up triggered by the in-flight completion
    await new Promise((resolve) => setTimeout(resolve, 0));
    const recommends = server.log.filter((e) => e.path.endsWith("/recommend"));
    expect(recommends.length).toBe(2); // first + one queued (latest wins)
  });
});

describe("alternatives flow", () => {
  async function prepare() {
    await controller.init();
    controller.setFormMode("direct");
    await controller.submitProfile();
    await controller.recommend();
  }

  it("replaces only the selected category card", async () => {
    await prepare();
    const before = render(store.get());
    controller.updateField("brand-for:Moisturizer", "BETABRAND");
    await controller.chooseAlternatives("Moisturizer");
    const after = render(store.get());
    expect(cardSection(after, "Moisturizer")).toContain("BETABRAND alternatives");
    expect(cardSection(after, "Moisturizer")).toContain('data-product-id="77"');
    for (const untouched of ["Cleanser", "Treatment", "Mask", "Sunscreen"]) {
      expect(cardSection(after, untouched)).toBe(cardSection(before, untouched));
    }
    const call = server.log.find((e) => e.path.endsWith("/alternatives"));
    expect(call?.body).toEqual({ category: "Moisturizer", brand: "BETABRAND" });
  });

  it("renders an explicit empty state when the brand has no matches", async () => {
    await prepare();
    controller.updateField("brand-for:Mask", "EMPTYBRAND");
    await controller.chooseAlternatives("Mask");
    const card = cardSection(render(store.get()), "Mask");
    expect(card).toContain("no matching products");
  });

  it("surfaces unknown brands in the banner", async () => {
    await prepare();
    controller.updateField("brand-for:Mask", "NOBRAND");
    await controller.chooseAlternatives("Mask");
    expect(store.get().banner).toContain("unknown_brand");
  });
});

describe("map view and history", () => {
  it("renders one point per embedding row and scope filters server-side", async () => {
    await controller.init();
    const html = render(store.get());
    const circles = html.match(/<circle/g) ?? [];
    expect(circles.length).toBe(store.get().embedding!.count);

    await controller.setScope("category:Moisturizer");
    const scoped = store.get().embedding!;
    expect(scoped.points.every((p) => p.category === "Moisturizer")).toBe(true);
    const embeddingCalls = server.log.filter((e) => e.path.startsWith("/embedding"));
    expect(embeddingCalls.at(-1)?.path).toContain("category%3AMoisturizer");
  });

  it("clicking a point anchors the next recommendation", async () => {
    await controller.init();
    controller.setFormMode("direct");
    await controller.submitProfile();
    const point = store.get().embedding!.points[4];
    controller.pickAnchor(point.product_id); // what the circle click handler does
    await controller.recommend();
    const call = server.log.filter((e) => e.path.endsWith("/recommend")).at(-1);
    expect((call?.body as { anchor: number }).anchor).toBe(point.product_id);
    expect(render(store.get())).toContain(`#${point.product_id}`);
  });

  it("lists history newest first after two recommendations", async () => {
    await controller.init();
    controller.setFormMode("direct");
    await controller.submitProfile();
    await controller.recommend();
    controller.updateField("alpha", "0.9");
    await controller.recommend();
    await controller.refreshHistory();
    const state = store.get();
    expect(state.history.length).toBe(2);
    const html = render(state);
    const stamps = [...html.matchAll(/<strong>(2026-[^<]+)<\/strong>/g)].map((m) => m[1]);
    expect(stamps.length).toBe(2);
    expect([...stamps].sort().reverse()).toEqual(stamps); // newest first
  });
});
