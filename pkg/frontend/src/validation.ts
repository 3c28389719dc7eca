// Client-side preference validation mirroring the server rules, so the UI
// never builds a payload the service would reject with a 422.

import { METRIC_IDS, Preference, PREFERENCE_KINDS } from "./types";

export function validatePreference(pref: Preference): string | null {
  if (!PREFERENCE_KINDS.includes(pref.kind)) {
    return `unknown preference kind "${pref.kind}"`;
  }
  if (!Number.isInteger(pref.confidence) || pref.confidence < 1 || pref.confidence > 5) {
    return "confidence must be an integer between 1 and 5";
  }
  const p = pref.payload;
  switch (pref.kind) {
    case "best_component":
    case "worst_component": {
      const classes = p.classes;
      if (!Array.isArray(classes) || classes.length === 0) {
        return "pick at least one class for the reference component";
      }
      return null;
    }
    case "best_interface":
    case "worst_interface": {
      const ops = p.operations;
      if (!Array.isArray(ops) || ops.length === 0) {
        return "pick at least one operation for the reference interface";
      }
      return null;
    }
    case "number_of_components": {
      if (!Number.isInteger(p.n)) return "component count must be an integer";
      return null;
    }
    case "metric_in_range": {
      if (!METRIC_IDS.includes(p.metric as never)) {
        return `unknown metric "${String(p.metric)}"`;
      }
      const lo = p.min as number;
      const hi = p.max as number;
      if (typeof lo !== "number" || typeof hi !== "number" ||
          !(lo >= 0 && lo < hi && hi <= 1)) {
        return "range needs 0 <= min < max <= 1";
      }
      return null;
    }
    case "aspiration_levels": {
      const levels = p.levels;
      if (!Array.isArray(levels) || levels.length !== 3 ||
          levels.some((z) => typeof z !== "number" || z < 0 || z > 1)) {
        return "aspiration levels need 3 values in [0,1]";
      }
      const weights = (p.weights ?? [1, 1, 1]) as unknown;
      if (!Array.isArray(weights) || weights.length !== 3 ||
          weights.some((w) => typeof w !== "number" || w < 0)) {
        return "weights need 3 non-negative values";
      }
      return null;
    }
  }
}

export function validateComponentBounds(n: number, nMin: number, nMax: number): string | null {
  if (n < nMin || n > nMax) {
    return `component count must stay within [${nMin}, ${nMax}]`;
  }
  return null;
}

export function validateFreezeTargets(targets: number[], componentCount: number): string | null {
  for (const idx of targets) {
    if (!Number.isInteger(idx) || idx < 0 || idx >= componentCount) {
      return `freeze target ${idx} is not a component of this candidate`;
    }
  }
  return null;
}
