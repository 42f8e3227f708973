// Minimal observable store holding the whole UI state.

import type {
  AlternativesJson,
  AssessmentJson,
  EmbeddingJson,
  RoutineJson,
} from "./types.js";

export type FormMode = "questionnaire" | "confidences" | "direct";

export interface QuestionnaireForm {
  tightness_after_wash: string;
  midday_shine: string;
  reacts_to_new_products: boolean;
  primary_goal: string;
}

export interface Viewport {
  scope: string;
  zoom: number;
  panX: number;
  panY: number;
  colorBy: "category" | "issue";
}

export interface UiState {
  sessionId: string | null;
  formMode: FormMode;
  questionnaire: QuestionnaireForm;
  confidences: string; // raw comma-separated user input
  skinType: string;
  concern: string;
  fieldErrors: Record<string, string>;
  banner: string | null;
  assessment: AssessmentJson | null;
  anchor: number | null;
  alpha: number;
  routine: RoutineJson | null;
  alternatives: AlternativesJson | null;
  alternativeBrand: string;
  selectedCategory: string;
  embedding: EmbeddingJson | null;
  viewport: Viewport;
  history: RoutineJson[];
  busy: boolean;
}

export function initialState(): UiState {
  return {
    sessionId: null,
    formMode: "questionnaire",
    questionnaire: {
      tightness_after_wash: "sometimes",
      midday_shine: "none",
      reacts_to_new_products: false,
      primary_goal: "Acne",
    },
    confidences: "0.25, 0.25, 0.25, 0.25",
    skinType: "Normal",
    concern: "Acne",
    fieldErrors: {},
    banner: null,
    assessment: null,
    anchor: null,
    alpha: 0.5,
    routine: null,
    alternatives: null,
    alternativeBrand: "",
    selectedCategory: "Moisturizer",
    embedding: null,
    viewport: { scope: "global", zoom: 1, panX: 0, panY: 0, colorBy: "category" },
    history: [],
    busy: false,
  };
}

export type Listener = (state: UiState) => void;

export class Store {
  private state: UiState;
  private listeners: Listener[] = [];

  constructor(state: UiState = initialState()) {
    this.state = state;
  }

  get(): UiState {
    return this.state;
  }

  set(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
