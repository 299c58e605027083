/**
 * Serializes action submissions: at most one POST in flight per project,
 * later submissions queued in order.  A failure rejects its own caller
 * and the queue moves on.
 */
export class ActionQueue<T, R> {
  // the tail never rejects: failures surface only through the enqueue
  // promise handed back to the caller
  private tail: Promise<void> = Promise.resolve();
  private pendingCount = 0;

  constructor(private readonly submit: (item: T) => Promise<R>) {}

  enqueue(item: T): Promise<R> {
    this.pendingCount += 1;
    const run = this.tail.then(() => this.submit(item));
    this.tail = run.then(
      () => undefined,
      () => undefined,
    ).finally(() => {
      this.pendingCount -= 1;
    });
    return run;
  }

  get depth(): number {
    return this.pendingCount;
  }

  /** Resolves once everything currently queued has settled. */
  async drain(): Promise<void> {
    // new work may be enqueued while draining; loop until quiet
    while (this.pendingCount > 0) {
      await this.tail;
    }
  }
}
