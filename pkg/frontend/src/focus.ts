/**
 * Debounced focus tracking: rapid focus movement emits only the final
 * target, and repeats of the same target are suppressed.
 */
export class FocusTracker {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private lastReported: string | null = null;

  constructor(
    private readonly emit: (focus: string) => void,
    private readonly delayMs = 400,
  ) {}

  report(focus: string): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      if (focus !== this.lastReported) {
        this.lastReported = focus;
        this.emit(focus);
      }
    }, this.delayMs);
  }

  /** Tab switches report immediately; the server tracks them anyway. */
  reset(current: string | null): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = null;
    this.lastReported = current;
  }
}
