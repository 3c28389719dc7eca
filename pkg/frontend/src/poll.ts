// One poll loop per session: drives the running -> awaiting_feedback ->
// finished state machine and hands candidate sets to the caller.

import { ApiClient, ApiError } from "./api";
import { CandidateSet, SessionStatus } from "./types";

export interface PollHandlers {
  onStatus(status: SessionStatus): void;
  onAwaitingFeedback(candidateSet: CandidateSet): void;
  onFinished(status: SessionStatus): void;
  onError(message: string): void;
}

export class SessionPoller {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private seenStop = -1;
  private stopped = false;

  constructor(
    private readonly api: ApiClient,
    private readonly sessionId: string,
    private readonly handlers: PollHandlers,
    private readonly intervalMs = 500,
  ) {}

  start(): void {
    this.stopped = false;
    void this.tick();
  }

  stop(): void {
    this.stopped = true;
    if (this.timer) clearTimeout(this.timer);
  }

  /** Forget the current stop so the next poll re-fetches candidates. */
  resume(): void {
    void this.tick();
  }

  private schedule(): void {
    if (this.stopped) return;
    this.timer = setTimeout(() => void this.tick(), this.intervalMs);
  }

  private async tick(): Promise<void> {
    if (this.stopped) return;
    let status: SessionStatus;
    try {
      status = await this.api.status(this.sessionId);
    } catch (err) {
      this.handlers.onError(err instanceof Error ? err.message : String(err));
      this.schedule();
      return;
    }
    this.handlers.onStatus(status);
    if (status.state === "finished" || status.state === "aborted") {
      this.stopped = true;
      this.handlers.onFinished(status);
      return;
    }
    if (status.state === "awaiting_feedback" && status.stop_index > this.seenStop) {
      try {
        const candidateSet = await this.api.candidates(this.sessionId);
        if (candidateSet.stop_index > this.seenStop) {
          this.seenStop = candidateSet.stop_index;
          this.handlers.onAwaitingFeedback(candidateSet);
        }
      } catch (err) {
        // a 409 here means the engine resumed between the two calls
        if (!(err instanceof ApiError && err.status === 409)) {
          this.handlers.onError(err instanceof Error ? err.message : String(err));
        }
      }
    }
    this.schedule();
  }
}
