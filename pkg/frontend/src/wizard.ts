import { ApiClient, ApiError } from "./api";
import { pressPressLatencies } from "./extract";
import { FinalizeResponse, WireEvent } from "./types";

export interface WizardState {
  userId: string;
  session: number;
  repsDone: number;
  repsPerSession: number;
  sessionCount: number;
  previews: number[][]; // per-repetition latency previews for this session
  done: boolean;
  result: FinalizeResponse | null;
}

/**
 * Drives the three-session enrollment flow against the service.  The server's
 * extraction is authoritative; the preview latencies returned per repetition
 * come from the submit response.
 */
export class EnrollmentWizard {
  state: WizardState;

  constructor(
    private api: ApiClient,
    userId: string,
    private secret: string,
    sessionCount = 3,
    repsPerSession = 5,
  ) {
    this.state = {
      userId,
      session: 1,
      repsDone: 0,
      repsPerSession,
      sessionCount,
      previews: [],
      done: false,
      result: null,
    };
  }

  /** Create the user, or resume an enrollment left open earlier. */
  async start(): Promise<WizardState> {
    try {
      await this.api.createUser(this.state.userId, this.secret);
    } catch (e) {
      if (!(e instanceof ApiError && e.status === 409)) throw e;
    }
    const progress = await this.api.enrollmentProgress(this.state.userId);
    this.state.repsPerSession = progress.reps_per_session;
    const ordinals = Object.keys(progress.sessions)
      .map(Number)
      .sort((a, b) => a - b);
    this.state.sessionCount = ordinals.length;
    const open = ordinals.find(
      (s) => progress.sessions[String(s)] < progress.reps_per_session,
    );
    this.state.session = open ?? this.state.sessionCount;
    this.state.repsDone = progress.sessions[String(this.state.session)] ?? 0;
    return this.state;
  }

  get sessionComplete(): boolean {
    return this.state.repsDone >= this.state.repsPerSession;
  }

  get allSessionsComplete(): boolean {
    return (
      this.state.session >= this.state.sessionCount && this.sessionComplete
    );
  }

  /** Submit one captured repetition; returns the server-extracted preview. */
  async submitEntry(events: WireEvent[]): Promise<number[]> {
    if (this.state.done) throw new Error("enrollment already finalized");
    const clientPreview = pressPressLatencies(events);
    const res = await this.api.submitSample(
      this.state.userId,
      this.state.session,
      this.secret,
      events,
    );
    if (!latenciesEqual(clientPreview, res.latencies)) {
      // the server extraction is the truth; surface the disagreement loudly
      throw new Error(
        `preview mismatch: client ${JSON.stringify(clientPreview)} ` +
          `vs server ${JSON.stringify(res.latencies)}`,
      );
    }
    this.state.repsDone = res.count;
    this.state.previews.push(res.latencies);
    if (this.sessionComplete && this.state.session < this.state.sessionCount) {
      this.state.session += 1;
      this.state.repsDone = 0;
      this.state.previews = [];
    }
    return res.latencies;
  }

  async finalize(): Promise<FinalizeResponse> {
    const res = await this.api.finalize(this.state.userId);
    this.state.done = true;
    this.state.result = res;
    return res;
  }
}

function latenciesEqual(a: number[], b: number[]): boolean {
  return a.length === b.length && a.every((v, i) => v === b[i]);
}
