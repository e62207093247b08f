/** Wire types for the span service's /analyze and /health endpoints. */

export type Span = [number, number];

export interface ClassifierVerdict {
  label: string;
  score: number;
}

export interface RoleSpans {
  target: Span[];
  argument: Span[];
}

export interface PhaseTimings {
  span_prediction: number;
  attention_map: number;
  role_visuals: number;
  total: number;
}

export interface AnalyzeResponse {
  schema_version: number;
  record_id: string;
  classifier: ClassifierVerdict;
  word_scores: [number, number][];
  selected_words: number[];
  char_spans: Span[];
  roles: RoleSpans | null;
  heatmap_html: string;
  roles_html: string;
  elapsed: PhaseTimings;
}

export interface AnalyzeRequest {
  text: string;
  language: string;
  threshold: number;
  mode: "relative" | "absolute";
}

export interface ApiError {
  error: string;
  detail?: string;
}

export interface HealthResponse {
  status: string;
  schema_version: number;
}
