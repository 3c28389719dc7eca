// Wire types mirroring the service JSON contracts.

export type SessionState = "running" | "awaiting_feedback" | "finished" | "aborted";

export interface SessionStatus {
  id: string;
  state: SessionState;
  generation: number;
  total_generations: number;
  evaluations_used: number;
  stop_index: number;
  archive_size: number;
}

export interface ComponentView {
  classes: string[];
  frozen: boolean;
}

export interface InterfaceView {
  provider: number;
  exposed_classes: string[];
  operations: [string, string][];
  consumers: number[];
}

export interface Phenotype {
  components: ComponentView[];
  interfaces: InterfaceView[];
  feasibility: {
    feasible: boolean;
    interfaceless_component: number;
    mutual_provision_pair: number;
  };
}

export interface MetricValues {
  icd: number;
  erp: number;
  gcr: number;
}

export interface CandidateView {
  token: string;
  phenotype: Phenotype;
  metrics: MetricValues;
  objectives: [number, number, number];
  f_obj: number | null;
  f_sub: number | null;
}

export interface CandidateSet {
  stop_index: number;
  candidates: CandidateView[];
}

export type PreferenceKind =
  | "best_component"
  | "worst_component"
  | "best_interface"
  | "worst_interface"
  | "number_of_components"
  | "metric_in_range"
  | "aspiration_levels";

export const PREFERENCE_KINDS: PreferenceKind[] = [
  "best_component",
  "worst_component",
  "best_interface",
  "worst_interface",
  "number_of_components",
  "metric_in_range",
  "aspiration_levels",
];

export const METRIC_IDS = ["icd", "erp", "gcr"] as const;
export type MetricId = (typeof METRIC_IDS)[number];

export interface Preference {
  kind: PreferenceKind;
  payload: Record<string, unknown>;
  confidence: number; // Likert 1..5
}

export interface Actions {
  add_to_archive: boolean;
  remove_from_population: boolean;
  freeze_components: number[];
  stop_search: boolean;
}

export interface FeedbackEntry {
  candidate: string;
  preference: Preference | null;
  actions: Actions;
}

export interface FeedbackBundle {
  stop_index: number;
  entries: FeedbackEntry[];
}

export interface ArchiveEntry {
  phenotype: Phenotype;
  metrics: MetricValues;
  objectives: [number, number, number];
  f_obj: number | null;
  f_sub: number | null;
  preserved: boolean;
  region: number;
}

export interface EventRecord {
  ts: number;
  kind: string;
  payload: Record<string, unknown>;
}

export function emptyActions(): Actions {
  return {
    add_to_archive: false,
    remove_from_population: false,
    freeze_components: [],
    stop_search: false,
  };
}
