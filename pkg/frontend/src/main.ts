// Single-page session client: create/attach, progress view, sequential
// candidate evaluation at each stop, archive gallery at the end.

import { ApiClient, ApiError } from "./api";
import { StopDraft } from "./bundle";
import {
  buildPreference,
  FormInputs,
  renderActions,
  renderKindPicker,
  renderLikert,
  renderSubForm,
} from "./forms";
import { SessionPoller } from "./poll";
import {
  renderArchiveGallery,
  renderCandidate,
  renderProgress,
  renderRecapStrip,
} from "./render";
import {
  ArchiveEntry,
  CandidateSet,
  MetricId,
  PreferenceKind,
  SessionStatus,
} from "./types";

const api = new ApiClient("");
const root = document.getElementById("app") as HTMLElement;
const bounds = { nMin: 2, nMax: 6 };

let sessionId = "";
let poller: SessionPoller | null = null;
let currentSet: CandidateSet | null = null;
let currentDraft: StopDraft | null = null;
let candidateCursor = 0;
let candidateShownAt = 0;
let archiveEntries: ArchiveEntry[] = [];

function setError(message: string): void {
  const box = document.getElementById("error");
  if (box) box.textContent = message;
}

function renderStartScreen(): void {
  root.innerHTML = `
    <h1>archevolve</h1>
    <p>Paste a class model (JSON) to start a discovery session, or attach to
       a running one by id.</p>
    <textarea id="model-input" rows="12" placeholder='{"classes": [...], "relationships": [...]}'></textarea>
    <div class="row">
      <button id="start">start session</button>
      <input id="attach-id" placeholder="session id">
      <button id="attach">attach</button>
    </div>
    <p id="error" class="error"></p>`;
  document.getElementById("start")!.addEventListener("click", () => void startSession());
  document.getElementById("attach")!.addEventListener("click", () => {
    const id = (document.getElementById("attach-id") as HTMLInputElement).value.trim();
    if (id) attach(id);
  });
}

async function startSession(): Promise<void> {
  const text = (document.getElementById("model-input") as HTMLTextAreaElement).value;
  let model: unknown;
  try {
    model = JSON.parse(text);
  } catch {
    setError("model is not valid JSON");
    return;
  }
  try {
    const { id } = await api.createSession(model);
    attach(id);
  } catch (err) {
    setError(err instanceof Error ? err.message : String(err));
  }
}

function attach(id: string): void {
  sessionId = id;
  poller?.stop();
  poller = new SessionPoller(api, id, {
    onStatus: renderRunning,
    onAwaitingFeedback: beginStop,
    onFinished: (status) => void renderFinished(status),
    onError: setError,
  });
  poller.start();
}

function renderRunning(status: SessionStatus): void {
  if (status.state !== "running" || currentSet) return;
  root.innerHTML = `
    <h1>session ${status.id}</h1>
    ${renderProgress(status)}
    <div class="row"><button id="stop-btn">stop now</button></div>
    <p id="error" class="error"></p>`;
  document.getElementById("stop-btn")!.addEventListener("click", () => void stopSession());
}

async function stopSession(): Promise<void> {
  try {
    const status = await api.stop(sessionId);
    await renderFinished(status);
  } catch (err) {
    setError(err instanceof Error ? err.message : String(err));
  }
}

function beginStop(candidateSet: CandidateSet): void {
  currentSet = candidateSet;
  currentDraft = new StopDraft(candidateSet);
  candidateCursor = 0;
  renderCurrentCandidate();
}

function renderCurrentCandidate(): void {
  if (!currentSet || !currentDraft) return;
  const candidate = currentSet.candidates[candidateCursor];
  const evaluated = currentSet.candidates.slice(0, candidateCursor);
  candidateShownAt = Date.now();
  root.innerHTML = `
    <h1>stop ${currentSet.stop_index + 1}: candidate
      ${candidateCursor + 1} of ${currentSet.candidates.length}</h1>
    ${renderRecapStrip(evaluated)}
    ${renderCandidate(candidate)}
    <form id="feedback-form">
      <fieldset><legend>preference</legend>
        ${renderKindPicker("none")}
        <div id="sub-form"></div>
        ${renderLikert()}
      </fieldset>
      ${renderActions(candidate)}
      <button type="submit">${
        candidateCursor + 1 < currentSet.candidates.length
          ? "next candidate"
          : "submit feedback"
      }</button>
    </form>
    <p id="error" class="error"></p>`;

  const form = document.getElementById("feedback-form") as HTMLFormElement;
  const kindSelect = form.querySelector('select[name="kind"]') as HTMLSelectElement;
  kindSelect.addEventListener("change", () => {
    const sub = document.getElementById("sub-form")!;
    sub.innerHTML = renderSubForm(
      kindSelect.value as PreferenceKind | "none", candidate, bounds);
  });
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void commitCandidate(form);
  });
}

function readInputs(form: HTMLFormElement): FormInputs {
  const data = new FormData(form);
  const num = (name: string) => {
    const raw = data.get(name);
    return raw === null || raw === "" ? undefined : Number(raw);
  };
  const inputs: FormInputs = {
    componentIndex: num("componentIndex"),
    interfaceIndex: num("interfaceIndex"),
    n: num("n"),
    metric: (data.get("metric") as MetricId) ?? undefined,
    min: num("min"),
    max: num("max"),
  };
  if (num("level0") !== undefined) {
    inputs.levels = [num("level0")!, num("level1")!, num("level2")!];
    inputs.weights = [num("weight0") ?? 1, num("weight1") ?? 1, num("weight2") ?? 1];
  }
  return inputs;
}

async function commitCandidate(form: HTMLFormElement): Promise<void> {
  if (!currentSet || !currentDraft) return;
  const candidate = currentSet.candidates[candidateCursor];
  const data = new FormData(form);
  const kind = data.get("kind") as PreferenceKind | "none";
  const confidence = Number(data.get("confidence") ?? 3);
  const pref = buildPreference(kind, candidate, readInputs(form), confidence);
  const prefProblem = currentDraft.setPreference(candidate.token, pref);
  if (prefProblem) {
    setError(prefProblem);
    return;
  }
  const freeze = data.getAll("freeze").map((v) => Number(v));
  const freezeProblem = currentDraft.setFreeze(
    candidate.token, freeze, candidate.phenotype.components.length);
  if (freezeProblem) {
    setError(freezeProblem);
    return;
  }
  const draft = currentDraft.draftFor(candidate.token);
  draft.actions.add_to_archive = data.get("add_to_archive") !== null;
  draft.actions.remove_from_population = data.get("remove_from_population") !== null;
  draft.actions.stop_search = data.get("stop_search") !== null;
  draft.evaluationMs = Date.now() - candidateShownAt;

  candidateCursor += 1;
  if (candidateCursor < currentSet.candidates.length) {
    renderCurrentCandidate();
    return;
  }
  await submitStop();
}

async function submitStop(): Promise<void> {
  if (!currentDraft) return;
  const bundle = currentDraft.build();
  if (!bundle) return; // already submitted for this stop index
  try {
    await api.submitFeedback(sessionId, bundle);
  } catch (err) {
    if (err instanceof ApiError && (err.status === 409 || err.status === 422)) {
      setError(`stale stop, re-syncing: ${err.detail}`);
    } else {
      setError(err instanceof Error ? err.message : String(err));
      return;
    }
  }
  currentSet = null;
  currentDraft = null;
  poller?.resume();
}

async function renderFinished(status: SessionStatus): Promise<void> {
  const { archive } = await api.archive(sessionId);
  archiveEntries = archive;
  root.innerHTML = `
    <h1>session ${status.id} ${status.state}</h1>
    <p>${archive.length} solutions in the final archive.</p>
    ${renderArchiveGallery(archive)}
    <p id="error" class="error"></p>`;
  root.querySelectorAll("button.export").forEach((button) => {
    button.addEventListener("click", () => {
      const index = Number((button as HTMLElement).dataset.entry);
      const blob = new Blob(
        [JSON.stringify(archiveEntries[index].phenotype, null, 2)],
        { type: "application/json" });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = `solution-${index + 1}.json`;
      link.click();
    });
  });
}

renderStartScreen();
