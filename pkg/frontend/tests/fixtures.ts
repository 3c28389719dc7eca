import { CandidateSet, CandidateView } from "../src/types";

export function makeCandidate(token: string, overrides: Partial<CandidateView> = {}): CandidateView {
  return {
    token,
    phenotype: {
      components: [
        { classes: ["Book", "Author"], frozen: false },
        { classes: ["Loan", "Member", "Notifier"], frozen: true },
      ],
      interfaces: [
        {
          provider: 1,
          exposed_classes: ["Loan"],
          operations: [["Loan", "open"], ["Loan", "close"]],
          consumers: [0],
        },
      ],
      feasibility: { feasible: true, interfaceless_component: 0, mutual_provision_pair: 0 },
    },
    metrics: { icd: 0.37, erp: 2, gcr: 1.5 },
    objectives: [0.63, 0.118, 0.071],
    f_obj: 0.41,
    f_sub: null,
    ...overrides,
  };
}

export function makeCandidateSet(stopIndex = 0, tokens = ["s0", "s1", "s2"]): CandidateSet {
  return { stop_index: stopIndex, candidates: tokens.map((t) => makeCandidate(t)) };
}
