import { ApiClient } from "./api";
import { runAuthAttempt } from "./auth";
import { CaptureBuffer, attachCapture } from "./capture";
import { trajectoryChartSvg } from "./chart";
import { EnrollmentWizard } from "./wizard";

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8000");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function setStatus(id: string, text: string, isError = false): void {
  const node = el(id);
  node.textContent = text;
  node.className = isError ? "status error" : "status";
}

// --- enrollment -----------------------------------------------------------

let wizard: EnrollmentWizard | null = null;
const enrollBuffer = new CaptureBuffer();

async function startEnrollment(): Promise<void> {
  const userId = el<HTMLInputElement>("enroll-user").value.trim();
  const secret = el<HTMLInputElement>("enroll-secret").value;
  if (!userId || !secret) {
    setStatus("enroll-status", "User id and password are required.", true);
    return;
  }
  wizard = new EnrollmentWizard(api, userId, secret);
  try {
    const state = await wizard.start();
    setStatus(
      "enroll-status",
      `Session ${state.session}/${state.sessionCount}: type the password ` +
        `(${state.repsDone}/${state.repsPerSession} done). Use the field below.`,
    );
    el<HTMLInputElement>("enroll-entry").disabled = false;
  } catch (e) {
    setStatus("enroll-status", `Service error: ${(e as Error).message}. Retry.`, true);
  }
}

async function submitEnrollEntry(): Promise<void> {
  if (!wizard) return;
  const field = el<HTMLInputElement>("enroll-entry");
  const secret = el<HTMLInputElement>("enroll-secret").value;
  if (field.value !== secret) {
    setStatus("enroll-status", "Entry does not match the password — retype.", true);
    field.value = "";
    enrollBuffer.arm();
    return;
  }
  const events = enrollBuffer.finish();
  field.value = "";
  enrollBuffer.arm();
  if (!events) {
    setStatus("enroll-status", "Entry invalidated (backspace/paste) — retype.", true);
    return;
  }
  try {
    await wizard.submitEntry(events);
    const s = wizard.state;
    el("enroll-chart").innerHTML = trajectoryChartSvg(
      s.previews.map((lats, i) => ({ label: `rep ${i + 1}`, latencies: lats })),
    );
    if (wizard.allSessionsComplete) {
      const result = await wizard.finalize();
      setStatus(
        "enroll-status",
        `Enrolled. userThreshold = ${result.user_threshold.toFixed(2)} ms, ` +
          `template length ${result.rep_length}.`,
      );
      el("enroll-chart").innerHTML = trajectoryChartSvg([
        { label: "userRepTraj", latencies: result.rep_latencies, highlighted: true },
      ]);
      field.disabled = true;
    } else {
      setStatus(
        "enroll-status",
        `Session ${s.session}/${s.sessionCount}: ` +
          `${s.repsDone}/${s.repsPerSession} repetitions done.`,
      );
    }
  } catch (e) {
    setStatus("enroll-status", `Service error: ${(e as Error).message}. Retry.`, true);
  }
}

// --- authentication -------------------------------------------------------

const authBuffer = new CaptureBuffer();

async function submitAuthEntry(): Promise<void> {
  const userId = el<HTMLInputElement>("auth-user").value.trim();
  const field = el<HTMLInputElement>("auth-entry");
  const secret = field.value;
  const events = authBuffer.finish();
  field.value = "";
  authBuffer.arm();
  if (!events) {
    setStatus("auth-status", "Entry invalidated (backspace/paste) — retype.", true);
    return;
  }
  try {
    const view = await runAuthAttempt(api, userId, secret, events);
    setStatus("auth-status", view.message, !view.accepted);
    el("auth-gauge").innerHTML = view.gauge;
    el("auth-chart").innerHTML = view.chart ?? "";
  } catch (e) {
    setStatus("auth-status", `Service error: ${(e as Error).message}.`, true);
  }
}

window.addEventListener("DOMContentLoaded", () => {
  attachCapture(el<HTMLInputElement>("enroll-entry"), enrollBuffer);
  attachCapture(el<HTMLInputElement>("auth-entry"), authBuffer);
  el<HTMLInputElement>("enroll-entry").addEventListener("focus", () => enrollBuffer.arm());
  el<HTMLInputElement>("auth-entry").addEventListener("focus", () => authBuffer.arm());
  el("enroll-start").addEventListener("click", () => void startEnrollment());
  el<HTMLInputElement>("enroll-entry").addEventListener("keydown", (e) => {
    if (e.key === "Enter") void submitEnrollEntry();
  });
  el<HTMLInputElement>("auth-entry").addEventListener("keydown", (e) => {
    if (e.key === "Enter") void submitAuthEntry();
  });
});
