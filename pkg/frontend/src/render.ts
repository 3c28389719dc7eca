// HTML string rendering for candidates, metrics and the archive gallery.
// Pure functions over the wire types so they are testable without a DOM.

import {
  ArchiveEntry,
  CandidateView,
  MetricValues,
  Phenotype,
  SessionStatus,
} from "./types";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function pct(x: number): string {
  return `${Math.round(x * 100)}%`;
}

export function renderProgress(status: SessionStatus): string {
  const frac = status.total_generations
    ? status.generation / status.total_generations
    : 0;
  return `
    <div class="progress">
      <div class="progress-bar"><div class="progress-fill" style="width:${pct(frac)}"></div></div>
      <span>generation ${status.generation} / ${status.total_generations},
        ${status.evaluations_used} evaluations, archive ${status.archive_size}</span>
    </div>`;
}

export function renderMetrics(metrics: MetricValues, objectives: [number, number, number]): string {
  const rows: [string, number, number][] = [
    ["ICD", metrics.icd, objectives[0]],
    ["ERP", metrics.erp, objectives[1]],
    ["GCR", metrics.gcr, objectives[2]],
  ];
  const cells = rows
    .map(
      ([name, raw, norm]) =>
        `<div class="metric"><span class="metric-name">${name}</span>
         <span class="metric-raw">${raw.toFixed(3)}</span>
         <span class="metric-norm">(norm ${norm.toFixed(3)})</span></div>`,
    )
    .join("");
  return `<div class="metrics">${cells}</div>`;
}

export function renderComponents(phenotype: Phenotype, options: { collapsed?: boolean } = {}): string {
  const boxes = phenotype.components
    .map((comp, i) => {
      const badge = comp.frozen ? `<span class="lock-badge" title="frozen">&#128274; frozen</span>` : "";
      const classes = options.collapsed
        ? `<span class="class-count">${comp.classes.length} classes</span>`
        : `<ul class="class-list">${comp.classes
            .map((c) => `<li>${escapeHtml(c)}</li>`)
            .join("")}</ul>`;
      return `<div class="component-box${comp.frozen ? " frozen" : ""}" data-component="${i}">
        <header>C${i} ${badge}</header>${classes}</div>`;
    })
    .join("");
  return `<div class="components">${boxes}</div>`;
}

export function renderInterfaces(phenotype: Phenotype): string {
  if (phenotype.interfaces.length === 0) {
    return `<p class="no-interfaces">no derived interfaces</p>`;
  }
  const rows = phenotype.interfaces
    .map((itf, i) => {
      const ops = itf.operations
        .map(([cls, op]) => `${escapeHtml(cls)}.${escapeHtml(op)}`)
        .join(", ");
      const consumers = itf.consumers.map((c) => `C${c}`).join(", ");
      return `<li class="interface" data-interface="${i}">
        <span class="lollipop">&#9675;</span> C${itf.provider} provides {${ops}}
        <span class="socket">&#8835;</span> required by ${consumers}</li>`;
    })
    .join("");
  return `<ul class="interfaces">${rows}</ul>`;
}

export function renderCandidate(candidate: CandidateView): string {
  const feasibility = candidate.phenotype.feasibility.feasible
    ? ""
    : `<p class="infeasible">infeasible solution</p>`;
  const fSub = candidate.f_sub === null ? "n/a" : candidate.f_sub.toFixed(3);
  return `<article class="candidate" data-token="${escapeHtml(candidate.token)}">
    ${feasibility}
    ${renderComponents(candidate.phenotype)}
    ${renderInterfaces(candidate.phenotype)}
    ${renderMetrics(candidate.metrics, candidate.objectives)}
    <p class="fitness">objective fitness ${candidate.f_obj?.toFixed(3) ?? "n/a"},
      preference fitness ${fSub}</p>
  </article>`;
}

export function renderRecapStrip(evaluated: CandidateView[]): string {
  if (evaluated.length === 0) return "";
  const chips = evaluated
    .map(
      (c) =>
        `<span class="recap-chip">${escapeHtml(c.token)}:
         ${c.phenotype.components.length} components</span>`,
    )
    .join("");
  return `<div class="recap-strip">already evaluated: ${chips}</div>`;
}

export function renderArchiveGallery(entries: ArchiveEntry[]): string {
  const cards = entries
    .map(
      (e, i) => `<section class="archive-card${e.preserved ? " preserved" : ""}">
      <header>solution ${i + 1}${e.preserved ? " &#9733; kept by you" : ""}</header>
      ${renderComponents(e.phenotype, { collapsed: true })}
      ${renderMetrics(e.metrics, e.objectives)}
      <button class="export" data-entry="${i}">export phenotype</button>
    </section>`,
    )
    .join("");
  return `<div class="archive-gallery">${cards}</div>`;
}
