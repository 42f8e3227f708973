// Application flows. The controller owns all service calls and state
// transitions; rendering stays pure and the DOM layer stays a thin shim,
// so every flow is testable without a browser.

import { ApiClient, ApiError } from "./api.js";
import type { Store } from "./store.js";
import type { AssessPayload, RecommendPayload } from "./types.js";

export function parseConfidences(raw: string): number[] {
  const parts = raw.split(/[\s,;]+/).filter((p) => p.length > 0);
  if (parts.length !== 4) {
    throw new Error("enter exactly four confidence values");
  }
  const values = parts.map((p) => Number(p));
  if (values.some((v) => !Number.isFinite(v) || v < 0)) {
    throw new Error("confidences must be non-negative numbers");
  }
  if (values.every((v) => v === 0)) {
    throw new Error("confidences must not be all zero");
  }
  return values;
}

export class AppController {
  private lastAssessPayload: AssessPayload | null = null;
  private recommendInFlight = false;
  private pendingRecommend: RecommendPayload | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly store: Store,
  ) {}

  /** Open a session and load the default embedding. */
  async init(): Promise<void> {
    try {
      const session = await this.api.createSession();
      this.store.set({ sessionId: session.session_id, banner: null });
    } catch (err) {
      this.fail(err);
      return;
    }
    await this.loadEmbedding();
  }

  private fail(err: unknown): void {
    if (err instanceof ApiError && err.status === 0) {
      this.store.set({ banner: "service unreachable; check the server and retry" });
    } else if (err instanceof ApiError) {
      this.store.set({ banner: `${err.code}: ${err.message}` });
    } else {
      this.store.set({ banner: String(err) });
    }
  }

  dismissBanner(): void {
    this.store.set({ banner: null });
  }

  setFormMode(mode: "questionnaire" | "confidences" | "direct"): void {
    this.store.set({ formMode: mode, fieldErrors: {} });
  }

  updateField(field: string, value: string | boolean): void {
    const state = this.store.get();
    if (field in state.questionnaire) {
      this.store.set({ questionnaire: { ...state.questionnaire, [field]: value } });
    } else if (field === "confidences") {
      this.store.set({ confidences: String(value) });
    } else if (field === "skinType") {
      this.store.set({ skinType: String(value) });
    } else if (field === "concern") {
      this.store.set({ concern: String(value) });
    } else if (field === "alpha") {
      this.store.set({ alpha: Number(value) });
    } else if (field === "scope") {
      void this.setScope(String(value));
    } else if (field === "colorBy") {
      const viewport = { ...state.viewport, colorBy: value as "category" | "issue" };
      this.store.set({ viewport });
    } else if (field.startsWith("brand-for:")) {
      this.store.set({
        alternativeBrand: String(value),
        selectedCategory: field.slice("brand-for:".length),
      });
    }
  }

  private buildAssessPayload(): AssessPayload {
    const state = this.store.get();
    if (state.formMode === "questionnaire") {
      return { questionnaire: { ...state.questionnaire } };
    }
    if (state.formMode === "confidences") {
      return { skin_type: state.skinType, confidences: parseConfidences(state.confidences) };
    }
    return { skin_type: state.skinType, concern: state.concern };
  }

  async submitProfile(): Promise<void> {
    let payload: AssessPayload;
    try {
      payload = this.buildAssessPayload();
    } catch (err) {
      // client-side validation: inline error, nothing sent, state untouched
      this.store.set({ fieldErrors: { confidences: (err as Error).message } });
      return;
    }
    this.store.set({ fieldErrors: {}, busy: true });
    try {
      const assessment = await this.api.assess(payload);
      this.lastAssessPayload = payload;
      this.store.set({ assessment, banner: null, busy: false });
    } catch (err) {
      this.store.set({ busy: false });
      this.fail(err);
    }
  }

  /** Request a routine. Later calls queue behind an in-flight one (keeping
      only the newest) so responses never interleave. */
  async recommend(): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId || !state.assessment || !this.lastAssessPayload) {
      this.store.set({ banner: "assess your skin before building a routine" });
      return;
    }
    const payload: RecommendPayload = {
      assessment: this.lastAssessPayload,
      anchor: state.anchor,
      alpha: state.alpha,
    };
    if (this.recommendInFlight) {
      this.pendingRecommend = payload;
      return;
    }
    await this.runRecommend(payload);
  }

  private async runRecommend(payload: RecommendPayload): Promise<void> {
    const sessionId = this.store.get().sessionId;
    if (!sessionId) return;
    this.recommendInFlight = true;
    this.store.set({ busy: true });
    try {
      const routine = await this.api.recommend(sessionId, payload);
      this.store.set({
        routine,
        alternatives: null,
        history: [...this.store.get().history, routine],
        banner: null,
        busy: false,
      });
    } catch (err) {
      this.store.set({ busy: false });
      this.fail(err);
    } finally {
      this.recommendInFlight = false;
      if (this.pendingRecommend) {
        const next = this.pendingRecommend;
        this.pendingRecommend = null;
        await this.runRecommend(next);
      }
    }
  }

  async chooseAlternatives(category: string): Promise<void> {
    const state = this.store.get();
    if (!state.sessionId || !state.routine) return;
    const brand = state.selectedCategory === category ? state.alternativeBrand.trim() : "";
    if (!brand) {
      this.store.set({ banner: "enter a brand name first" });
      return;
    }
    try {
      const alternatives = await this.api.alternatives(state.sessionId, category, brand);
      this.store.set({ alternatives, banner: null });
    } catch (err) {
      this.fail(err);
    }
  }

  clearAlternatives(): void {
    this.store.set({ alternatives: null });
  }

  pickAnchor(productId: number): void {
    this.store.set({ anchor: productId });
  }

  clearAnchor(): void {
    this.store.set({ anchor: null });
  }

  async loadEmbedding(): Promise<void> {
    const scope = this.store.get().viewport.scope;
    try {
      const embedding = await this.api.embedding(scope);
      this.store.set({ embedding, banner: null });
    } catch (err) {
      this.fail(err);
    }
  }

  async setScope(scope: string): Promise<void> {
    const viewport = { ...this.store.get().viewport, scope, zoom: 1, panX: 0, panY: 0 };
    this.store.set({ viewport });
    await this.loadEmbedding();
  }

  zoom(factor: number): void {
    const viewport = { ...this.store.get().viewport };
    viewport.zoom = Math.min(16, Math.max(0.25, viewport.zoom * factor));
    this.store.set({ viewport });
  }

  resetView(): void {
    const viewport = { ...this.store.get().viewport, zoom: 1, panX: 0, panY: 0 };
    this.store.set({ viewport });
  }

  async refreshHistory(): Promise<void> {
    const sessionId = this.store.get().sessionId;
    if (!sessionId) return;
    try {
      const history = await this.api.history(sessionId);
      this.store.set({ history: history.routines, banner: null });
    } catch (err) {
      this.fail(err);
    }
  }
}
