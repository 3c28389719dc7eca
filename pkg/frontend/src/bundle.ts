// Per-stop feedback assembly: one draft per candidate, at most one
// preference each, with an optimistic-lock stop index to prevent double
// submission against a stale stop.

import {
  Actions,
  CandidateSet,
  emptyActions,
  FeedbackBundle,
  FeedbackEntry,
  Preference,
} from "./types";
import { validateFreezeTargets, validatePreference } from "./validation";

export interface CandidateDraft {
  token: string;
  preference: Preference | null;
  actions: Actions;
  evaluationMs: number;
}

export class StopDraft {
  readonly stopIndex: number;
  readonly drafts: CandidateDraft[];
  private submitted = false;

  constructor(candidateSet: CandidateSet) {
    this.stopIndex = candidateSet.stop_index;
    this.drafts = candidateSet.candidates.map((c) => ({
      token: c.token,
      preference: null,
      actions: emptyActions(),
      evaluationMs: 0,
    }));
  }

  draftFor(token: string): CandidateDraft {
    const draft = this.drafts.find((d) => d.token === token);
    if (!draft) throw new Error(`no candidate ${token} at this stop`);
    return draft;
  }

  setPreference(token: string, pref: Preference | null): string | null {
    if (pref) {
      const problem = validatePreference(pref);
      if (problem) return problem;
    }
    this.draftFor(token).preference = pref;
    return null;
  }

  setFreeze(token: string, targets: number[], componentCount: number): string | null {
    const problem = validateFreezeTargets(targets, componentCount);
    if (problem) return problem;
    this.draftFor(token).actions.freeze_components = targets;
    return null;
  }

  /** Build the wire bundle; returns null if this stop was already submitted. */
  build(): FeedbackBundle | null {
    if (this.submitted) return null;
    this.submitted = true;
    const entries: FeedbackEntry[] = this.drafts.map((d) => ({
      candidate: d.token,
      preference: d.preference,
      actions: d.actions,
    }));
    return { stop_index: this.stopIndex, entries };
  }

  get isSubmitted(): boolean {
    return this.submitted;
  }
}
