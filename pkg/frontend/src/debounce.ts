/** Keeps at most one request of a kind in flight. A new schedule() call
 * cancels the pending timer and aborts the previous request; a response
 * that comes back stale is dropped by the isCurrent check. */

export type Job = (
  signal: AbortSignal,
  isCurrent: () => boolean,
) => Promise<void>;

export class LatestOnly {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private generation = 0;

  constructor(private readonly waitMs: number) {}

  schedule(job: Job): void {
    if (this.timer !== null) clearTimeout(this.timer);
    const gen = ++this.generation;
    this.timer = setTimeout(() => {
      this.timer = null;
      if (gen !== this.generation) return;
      this.controller?.abort();
      const controller = new AbortController();
      this.controller = controller;
      void job(controller.signal, () => gen === this.generation).catch(() => {
        // the job owns its error reporting; never let a rejection escape
      });
    }, this.waitMs);
  }

  /** Run now, skipping the wait. Still aborts any in-flight predecessor. */
  flush(job: Job): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    const gen = ++this.generation;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    void job(controller.signal, () => gen === this.generation).catch(() => {
      // see schedule()
    });
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.generation++;
    this.controller?.abort();
    this.controller = null;
  }
}
