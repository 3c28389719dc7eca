// Thin typed client over the session HTTP API.

import {
  ArchiveEntry,
  CandidateSet,
  EventRecord,
  FeedbackBundle,
  SessionStatus,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(`${base}${path}`, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = typeof body.detail === "string" ? body.detail : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  createSession(model: unknown, config: Record<string, unknown> = {}): Promise<{ id: string }> {
    return request(this.base, "/api/sessions", {
      method: "POST",
      body: JSON.stringify({ model, config }),
    });
  }

  status(id: string): Promise<SessionStatus> {
    return request(this.base, `/api/sessions/${id}`);
  }

  candidates(id: string): Promise<CandidateSet> {
    return request(this.base, `/api/sessions/${id}/candidates`);
  }

  submitFeedback(id: string, bundle: FeedbackBundle): Promise<{ status: string }> {
    return request(this.base, `/api/sessions/${id}/feedback`, {
      method: "POST",
      body: JSON.stringify(bundle),
    });
  }

  stop(id: string): Promise<SessionStatus> {
    return request(this.base, `/api/sessions/${id}/stop`, { method: "POST" });
  }

  archive(id: string): Promise<{ archive: ArchiveEntry[] }> {
    return request(this.base, `/api/sessions/${id}/archive`);
  }

  events(id: string, since = 0): Promise<{ events: EventRecord[]; next: number }> {
    return request(this.base, `/api/sessions/${id}/events?since=${since}`);
  }
}
