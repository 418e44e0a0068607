export type EventKind = "press" | "release";

export interface WireEvent {
  key: string;
  kind: EventKind;
  timestamp_ms: number;
}

export interface SubmitSampleResponse {
  session: number;
  count: number;
  reps_per_session: number;
  latencies: number[];
}

export interface FinalizeResponse {
  user_id: string;
  user_threshold: number;
  rep_length: number;
  rep_latencies: number[];
}

export interface AuthResponse {
  accepted: boolean;
  dissimilarity: number | null;
  threshold: number;
  reason: "accepted" | "timing_mismatch" | "secret_mismatch" | "length_reject";
}

export interface EnrollmentProgress {
  user_id: string;
  status: string;
  sessions: Record<string, number>;
  reps_per_session: number;
}

export interface FeatureSummary {
  user_id: string;
  feature_kind: string;
  user_threshold: number;
  rep_length: number;
  rep_latencies: number[];
  created_at: number;
}
