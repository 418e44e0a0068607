import { WireEvent } from "./types";

/**
 * Client-side preview of the press-to-press latency trajectory.  The server's
 * extraction is the source of truth; this exists so the UI can plot an entry
 * immediately and so tests can check both sides agree.
 */
export function pressPressLatencies(events: WireEvent[]): number[] {
  const presses = events
    .filter((e) => e.kind === "press")
    .map((e) => e.timestamp_ms);
  const out: number[] = [];
  for (let i = 1; i < presses.length; i++) {
    out.push(presses[i] - presses[i - 1]);
  }
  return out;
}
