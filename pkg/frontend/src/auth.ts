import { ApiClient, ApiError } from "./api";
import { gaugeSvg, trajectoryChartSvg } from "./chart";
import { pressPressLatencies } from "./extract";
import { AuthResponse, WireEvent } from "./types";

export interface AuthView {
  accepted: boolean;
  reason: AuthResponse["reason"];
  message: string;
  gauge: string; // SVG
  chart: string | null; // SVG, absent on secret mismatch (no trajectory leak)
  needsEnrollment: boolean;
}

const MESSAGES: Record<AuthResponse["reason"], string> = {
  accepted: "Welcome back — typing rhythm matches.",
  timing_mismatch: "Password correct, but the typing rhythm does not match.",
  secret_mismatch: "Wrong password.",
  length_reject: "Entry too short to measure — please retype.",
};

/** Run one authentication attempt and build everything the panel renders. */
export async function runAuthAttempt(
  api: ApiClient,
  userId: string,
  secret: string,
  events: WireEvent[],
): Promise<AuthView> {
  let res: AuthResponse;
  try {
    res = await api.authenticate(userId, secret, events);
  } catch (e) {
    if (e instanceof ApiError && e.status === 404) {
      return {
        accepted: false,
        reason: "secret_mismatch",
        message: "No enrollment found for this user — enroll first.",
        gauge: gaugeSvg(null, 1),
        chart: null,
        needsEnrollment: true,
      };
    }
    throw e;
  }
  let chart: string | null = null;
  if (res.reason !== "secret_mismatch") {
    const feature = await api.featureSummary(userId);
    chart = trajectoryChartSvg([
      { label: "attempt", latencies: pressPressLatencies(events) },
      { label: "template", latencies: feature.rep_latencies, highlighted: true },
    ]);
  }
  return {
    accepted: res.accepted,
    reason: res.reason,
    message: MESSAGES[res.reason],
    gauge: gaugeSvg(res.dissimilarity, res.threshold),
    chart,
    needsEnrollment: false,
  };
}
