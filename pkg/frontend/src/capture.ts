import { WireEvent } from "./types";

// Keys that modify characters without producing one; their events carry no
// latency information for the typed secret.
const MODIFIER_KEYS = new Set([
  "Shift", "Control", "Alt", "Meta", "AltGraph", "CapsLock", "Fn", "OS",
]);

export interface RawKey {
  key: string;
  kind: "press" | "release";
  // high-resolution monotonic clock (performance.now()), never wall time:
  // latencies must survive system clock adjustments
  timestamp: number;
}

/**
 * Accumulates key events for one password entry.  Backspace or paste
 * invalidates the entry: per-key timing no longer matches the final text,
 * so the user retypes.
 */
export class CaptureBuffer {
  private events: RawKey[] = [];
  private invalid = false;
  private armedFlag = false;

  arm(): void {
    this.events = [];
    this.invalid = false;
    this.armedFlag = true;
  }

  reset(): void {
    this.events = [];
    this.invalid = false;
    this.armedFlag = false;
  }

  get armed(): boolean {
    return this.armedFlag;
  }

  get invalidated(): boolean {
    return this.invalid;
  }

  record(ev: RawKey): void {
    if (!this.armedFlag || this.invalid) return;
    if (ev.key === "Backspace" || ev.key === "Delete") {
      this.invalid = true;
      return;
    }
    if (MODIFIER_KEYS.has(ev.key) || ev.key === "Enter" || ev.key === "Tab") {
      return;
    }
    const last = this.events[this.events.length - 1];
    if (last && ev.timestamp < last.timestamp) {
      // monotone clock should prevent this; drop the entry rather than
      // submit a stream the server will reject
      this.invalid = true;
      return;
    }
    this.events.push(ev);
  }

  invalidatePaste(): void {
    if (this.armedFlag) this.invalid = true;
  }

  /**
   * Events with timestamps re-based to the first press, ready for the wire.
   * Returns null when the entry was invalidated or holds no presses.
   */
  finish(): WireEvent[] | null {
    if (this.invalid) return null;
    const firstPress = this.events.find((e) => e.kind === "press");
    if (!firstPress) return null;
    const t0 = firstPress.timestamp;
    return this.events
      .filter((e) => e.timestamp >= t0)
      .map((e) => ({
        key: e.key,
        kind: e.kind,
        timestamp_ms: e.timestamp - t0,
      }));
  }
}

/** Wire a buffer to an input element; returns a detach function. */
export function attachCapture(input: HTMLInputElement, buffer: CaptureBuffer): () => void {
  const down = (e: KeyboardEvent) =>
    buffer.record({ key: e.key, kind: "press", timestamp: performance.now() });
  const up = (e: KeyboardEvent) =>
    buffer.record({ key: e.key, kind: "release", timestamp: performance.now() });
  const paste = () => buffer.invalidatePaste();
  input.addEventListener("keydown", down);
  input.addEventListener("keyup", up);
  input.addEventListener("paste", paste);
  return () => {
    input.removeEventListener("keydown", down);
    input.removeEventListener("keyup", up);
    input.removeEventListener("paste", paste);
  };
}
