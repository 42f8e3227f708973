// JSON shapes returned by the recommendation service. Field names mirror
// the wire format exactly (lowercase snake_case).

export interface AssessmentJson {
  skin_type: string;
  concern: string;
  concern_probs: number[];
  source: string;
}

export interface ScoredProductJson {
  product_id: number;
  final_score: number;
  cosine_part: number;
  mf_part: number;
  brand?: string;
  name?: string;
}

export interface CategoryEntryJson {
  category: string;
  products: ScoredProductJson[];
}

export interface RoutineJson {
  session_id?: string;
  created_at: string;
  alpha: number;
  anchor: number | null;
  assessment: AssessmentJson;
  categories: CategoryEntryJson[];
}

export interface AlternativesJson {
  session_id: string;
  category: string;
  brand: string;
  products: ScoredProductJson[];
}

export interface EmbeddingPointJson {
  product_id: number;
  x: number;
  y: number;
  category?: string;
  issue?: string | null;
  brand?: string;
  name?: string;
}

export interface EmbeddingJson {
  scope: string;
  count: number;
  points: EmbeddingPointJson[];
}

export interface ProductJson {
  id: number;
  category: string;
  issue: string | null;
  brand: string;
  name: string;
  ingredients: string[];
  suitable_for: string[];
  price: number | null;
  rank: number | null;
}

export interface ProductListJson {
  count: number;
  products: ProductJson[];
}

export interface SessionCreatedJson {
  session_id: string;
  created_at: string;
}

export interface HistoryJson {
  session_id: string;
  created_at: string;
  routines: RoutineJson[];
}

export interface HealthJson {
  status: string;
  products: number;
  fingerprint: string;
}

export interface QuestionnaireJson {
  tightness_after_wash: string;
  midday_shine: string;
  reacts_to_new_products: boolean;
  primary_goal: string;
}

export type AssessPayload =
  | { skin_type: string; concern: string }
  | { skin_type: string; confidences: number[] }
  | { questionnaire: QuestionnaireJson };

export interface RecommendPayload {
  assessment: AssessPayload;
  anchor?: number | null;
  alpha?: number;
}

export const CATEGORIES = ["Cleanser", "Moisturizer", "Treatment", "Mask", "Sunscreen"] as const;
export const SKIN_TYPES = ["Combination", "Dry", "Normal", "Oily", "Sensitive"] as const;
export const CONCERNS = ["Acne", "ClearSkin", "Pigmentation", "Wrinkles"] as const;
