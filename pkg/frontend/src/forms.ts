// Preference form model: kind-specific sub-form markup and the mapping
// from raw input values to wire payloads. Pure string/data functions.

import { CandidateView, MetricId, Preference, PreferenceKind } from "./types";

export const KIND_LABELS: Record<PreferenceKind | "none", string> = {
  none: "no preference",
  best_component: "best component",
  worst_component: "worst component",
  best_interface: "best provided interface",
  worst_interface: "worst provided interface",
  number_of_components: "preferred number of components",
  metric_in_range: "metric in range",
  aspiration_levels: "aspiration levels",
};

export interface FormInputs {
  componentIndex?: number;
  interfaceIndex?: number;
  n?: number;
  metric?: MetricId;
  min?: number;
  max?: number;
  levels?: [number, number, number];
  weights?: [number, number, number];
}

/**
 * Build the wire payload for a kind from form inputs against one candidate.
 * Component/interface pickers translate a rendered index into the exact
 * class-id / operation set shown to the user.
 */
export function buildPayload(
  kind: PreferenceKind,
  candidate: CandidateView,
  inputs: FormInputs,
): Record<string, unknown> {
  switch (kind) {
    case "best_component":
    case "worst_component": {
      const comp = candidate.phenotype.components[inputs.componentIndex ?? 0];
      return { classes: [...comp.classes] };
    }
    case "best_interface":
    case "worst_interface": {
      const itf = candidate.phenotype.interfaces[inputs.interfaceIndex ?? 0];
      return { operations: itf.operations.map((op) => [...op]) };
    }
    case "number_of_components":
      return { n: inputs.n ?? candidate.phenotype.components.length };
    case "metric_in_range":
      return { metric: inputs.metric ?? "icd", min: inputs.min ?? 0, max: inputs.max ?? 1 };
    case "aspiration_levels":
      return {
        levels: inputs.levels ?? candidate.objectives,
        weights: inputs.weights ?? [1, 1, 1],
      };
  }
}

export function buildPreference(
  kind: PreferenceKind | "none",
  candidate: CandidateView,
  inputs: FormInputs,
  confidence: number,
): Preference | null {
  if (kind === "none") return null;
  return { kind, payload: buildPayload(kind, candidate, inputs), confidence };
}

export function renderKindPicker(selected: PreferenceKind | "none"): string {
  const options = (Object.keys(KIND_LABELS) as (PreferenceKind | "none")[])
    .map(
      (k) =>
        `<option value="${k}"${k === selected ? " selected" : ""}>${KIND_LABELS[k]}</option>`,
    )
    .join("");
  return `<select name="kind">${options}</select>`;
}

export function renderSubForm(
  kind: PreferenceKind | "none",
  candidate: CandidateView,
  bounds: { nMin: number; nMax: number },
): string {
  switch (kind) {
    case "none":
      return "";
    case "best_component":
    case "worst_component": {
      const options = candidate.phenotype.components
        .map((c, i) => `<option value="${i}">C${i} (${c.classes.length} classes)</option>`)
        .join("");
      return `<label>reference component <select name="componentIndex">${options}</select></label>`;
    }
    case "best_interface":
    case "worst_interface": {
      if (candidate.phenotype.interfaces.length === 0) {
        return `<p class="form-warning">this candidate derives no interfaces</p>`;
      }
      const options = candidate.phenotype.interfaces
        .map(
          (itf, i) =>
            `<option value="${i}">C${itf.provider}: ${itf.operations.length} operations</option>`,
        )
        .join("");
      return `<label>reference interface <select name="interfaceIndex">${options}</select></label>`;
    }
    case "number_of_components":
      return `<label>components <input type="number" name="n"
        min="${bounds.nMin}" max="${bounds.nMax}"
        value="${candidate.phenotype.components.length}"></label>`;
    case "metric_in_range":
      return `<label>metric <select name="metric">
          <option value="icd">ICD</option><option value="erp">ERP</option>
          <option value="gcr">GCR</option></select></label>
        <label>min <input type="range" name="min" min="0" max="1" step="0.01" value="0"></label>
        <label>max <input type="range" name="max" min="0" max="1" step="0.01" value="1"></label>`;
    case "aspiration_levels":
      return ["ICD", "ERP", "GCR"]
        .map(
          (name, k) => `<label>${name} target
            <input type="number" name="level${k}" min="0" max="1" step="0.01"
             value="${candidate.objectives[k].toFixed(2)}"></label>
          <label>weight <input type="number" name="weight${k}" min="0" step="0.1" value="1"></label>`,
        )
        .join("");
  }
}

export function renderLikert(selected = 3): string {
  const buttons = [1, 2, 3, 4, 5]
    .map(
      (v) => `<label class="likert-option"><input type="radio" name="confidence"
        value="${v}"${v === selected ? " checked" : ""}>${v}</label>`,
    )
    .join("");
  return `<fieldset class="likert"><legend>confidence</legend>${buttons}</fieldset>`;
}

export function renderActions(candidate: CandidateView): string {
  const freezeBoxes = candidate.phenotype.components
    .map(
      (_, i) => `<label><input type="checkbox" name="freeze" value="${i}">C${i}</label>`,
    )
    .join("");
  return `<fieldset class="actions"><legend>actions</legend>
    <label><input type="checkbox" name="add_to_archive">keep in archive</label>
    <label><input type="checkbox" name="remove_from_population">discard</label>
    <details><summary>freeze components</summary>${freezeBoxes}</details>
    <label><input type="checkbox" name="stop_search">stop the search</label>
  </fieldset>`;
}
