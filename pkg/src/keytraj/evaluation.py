"""FRR/FAR evaluation and synthetic keystroke populations.

The synthetic generator stands in for a live user study: each simulated user
gets a base latency profile, samples are the profile plus Gaussian jitter,
and novice mode (larger jitter plus a per-session shift) models typists who
are inconsistent between sessions.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

import numpy as np

from .enrollment import AuthPolicy, UserFeature, authenticate
from .errors import InvalidParams, UnknownUser
from .events import (EventKind, KeyEvent, KeystrokeSample,
                     sample_from_record, sample_to_record)


@dataclass(frozen=True)
class LabeledAttempt:
    claimed_user: str
    true_user: str
    sample: KeystrokeSample

    @property
    def genuine(self) -> bool:
        return self.claimed_user == self.true_user


@dataclass(frozen=True)
class UserStats:
    frr: Optional[float]
    far: Optional[float]
    mean_dissimilarity: Optional[float]


@dataclass(frozen=True)
class EvaluationReport:
    frr: Optional[float]
    far: Optional[float]
    genuine_count: int
    impostor_count: int
    per_user: Dict[str, UserStats]

    def to_record(self) -> dict:
        return {
            "frr": self.frr,
            "far": self.far,
            "genuine_count": self.genuine_count,
            "impostor_count": self.impostor_count,
            "per_user": {
                u: {"frr": s.frr, "far": s.far,
                    "mean_dissimilarity": s.mean_dissimilarity}
                for u, s in self.per_user.items()
            },
        }

    def to_table(self) -> str:
        def fmt(x):
            return "-" if x is None else f"{x:.4f}"
        lines = [f"overall\tfrr={fmt(self.frr)}\tfar={fmt(self.far)}"
                 f"\tgenuine={self.genuine_count}\timpostor={self.impostor_count}"]
        for u in sorted(self.per_user):
            s = self.per_user[u]
            lines.append(f"{u}\tfrr={fmt(s.frr)}\tfar={fmt(s.far)}"
                         f"\tmean_dissim={fmt(s.mean_dissimilarity)}")
        return "\n".join(lines)


def evaluate(features: Dict[str, UserFeature],
             attempts: Sequence[LabeledAttempt],
             policy: AuthPolicy = AuthPolicy()) -> EvaluationReport:
    """Run every attempt through authentication and aggregate error rates."""
    for a in attempts:
        if a.claimed_user not in features:
            raise UnknownUser(a.claimed_user)
    genuine_total = genuine_rejected = 0
    impostor_total = impostor_accepted = 0
    per_user_raw: Dict[str, dict] = {}
    for a in attempts:
        decision = authenticate(a.sample, features[a.claimed_user], policy)
        stats = per_user_raw.setdefault(
            a.claimed_user,
            {"g": 0, "gr": 0, "i": 0, "ia": 0, "dissims": []})
        if np.isfinite(decision.dissimilarity):
            stats["dissims"].append(decision.dissimilarity)
        if a.genuine:
            genuine_total += 1
            stats["g"] += 1
            if not decision.accepted:
                genuine_rejected += 1
                stats["gr"] += 1
        else:
            impostor_total += 1
            stats["i"] += 1
            if decision.accepted:
                impostor_accepted += 1
                stats["ia"] += 1
    per_user = {
        u: UserStats(
            frr=s["gr"] / s["g"] if s["g"] else None,
            far=s["ia"] / s["i"] if s["i"] else None,
            mean_dissimilarity=(sum(s["dissims"]) / len(s["dissims"])
                                if s["dissims"] else None))
        for u, s in per_user_raw.items()
    }
    return EvaluationReport(
        frr=genuine_rejected / genuine_total if genuine_total else None,
        far=impostor_accepted / impostor_total if impostor_total else None,
        genuine_count=genuine_total,
        impostor_count=impostor_total,
        per_user=per_user,
    )


def threshold_sweep(features: Dict[str, UserFeature],
                    attempts: Sequence[LabeledAttempt],
                    floors: Sequence[float]) -> List[Tuple[float, Optional[float], Optional[float]]]:
    """FRR/FAR at each policy floor; floors must be sorted ascending."""
    if list(floors) != sorted(floors):
        raise InvalidParams("floors must be sorted ascending")
    out = []
    for f in floors:
        report = evaluate(features, attempts, AuthPolicy(threshold_floor=f))
        out.append((f, report.frr, report.far))
    return out


# --- synthetic population --------------------------------------------------

@dataclass(frozen=True)
class SynthProfile:
    base_latencies: tuple[float, ...]
    jitter_sigma: float
    novice: bool = False


@dataclass(frozen=True)
class SynthParams:
    num_users: int
    sessions: int = 3
    reps_per_session: int = 5
    password_length: int = 8
    latency_low: float = 100.0
    latency_high: float = 350.0
    jitter_sigma: float = 10.0
    hold_mean: float = 80.0
    novice: bool = False
    novice_jitter_multiplier: float = 3.0
    # novices keep speeding up with practice: each successive session shifts
    # all latencies by the trend, plus a random per-session component; the
    # authentication session continues the trend past the enrolled range
    novice_session_trend: float = -40.0
    novice_session_drift_sigma: float = 10.0
    genuine_attempts: int = 3
    impostors_per_user: int = 2

    def validate(self) -> None:
        if self.num_users < 1 or self.sessions < 1 or self.reps_per_session < 1:
            raise InvalidParams("counts must be >= 1")
        if self.password_length < 2:
            raise InvalidParams("password_length must be >= 2")
        if not (0 < self.latency_low <= self.latency_high):
            raise InvalidParams("latency range must be positive and ordered")
        if self.jitter_sigma < 0:
            raise InvalidParams("jitter_sigma must be >= 0")


@dataclass
class SynthDataset:
    enrollment: Dict[str, List[List[KeystrokeSample]]]
    attempts: List[LabeledAttempt]
    profiles: Dict[str, SynthProfile]
    passwords: Dict[str, str]


MIN_LATENCY_MS = 1.0


def sample_from_latencies(latencies: Sequence[float], user_id: str,
                          session_id: str, secret: str,
                          hold_times: Sequence[float]) -> KeystrokeSample:
    """Build a press/release event stream whose press intervals equal
    `latencies`."""
    press_ts = [0.0]
    for lat in latencies:
        press_ts.append(press_ts[-1] + lat)
    events = []
    for i, (ch, pt) in enumerate(zip(secret, press_ts)):
        events.append(KeyEvent(ch, EventKind.PRESS, pt))
        events.append(KeyEvent(ch, EventKind.RELEASE, pt + hold_times[i]))
    events.sort(key=lambda e: e.timestamp)
    return KeystrokeSample(user_id, session_id, secret, events)


def _draw_sample(profile: SynthProfile, params: SynthParams, user_id: str,
                 session_id: str, secret: str, session_drift: float,
                 rng: np.random.Generator) -> KeystrokeSample:
    sigma = profile.jitter_sigma
    if profile.novice:
        sigma *= params.novice_jitter_multiplier
    base = np.asarray(profile.base_latencies)
    lats = base + session_drift + rng.normal(0.0, sigma, size=base.shape) \
        if sigma > 0 else base + session_drift
    lats = np.maximum(lats, MIN_LATENCY_MS)
    hold_sigma = 0.3 * sigma
    holds = np.full(len(secret), params.hold_mean)
    if hold_sigma > 0:
        holds = holds + rng.normal(0.0, hold_sigma, size=len(secret))
    holds = np.maximum(holds, MIN_LATENCY_MS)
    return sample_from_latencies(lats.tolist(), user_id, session_id, secret,
                                 holds.tolist())


def _session_drift(profile: SynthProfile, params: SynthParams,
                   session_ordinal: int, rng: np.random.Generator) -> float:
    if profile.novice:
        return (params.novice_session_trend * session_ordinal
                + float(rng.normal(0.0, params.novice_session_drift_sigma)))
    return 0.0


def synth_generate(params: SynthParams, seed: int) -> SynthDataset:
    """Deterministic synthetic population: enrollment sessions, genuine
    attempts, and cross-user impostor attempts (password-theft scenario, so
    impostors type the correct secret with their own timing)."""
    params.validate()
    rng = np.random.default_rng(seed)
    alphabet = string.ascii_lowercase
    users = [f"user{idx:03d}" for idx in range(params.num_users)]
    passwords: Dict[str, str] = {}
    profiles: Dict[str, SynthProfile] = {}
    enrollment: Dict[str, List[List[KeystrokeSample]]] = {}
    for u in users:
        passwords[u] = "".join(
            alphabet[i] for i in rng.integers(0, len(alphabet),
                                              size=params.password_length))
        base = rng.uniform(params.latency_low, params.latency_high,
                           size=params.password_length - 1)
        profiles[u] = SynthProfile(tuple(base.tolist()), params.jitter_sigma,
                                   params.novice)
        sessions = []
        for s in range(params.sessions):
            drift = _session_drift(profiles[u], params, s + 1, rng)
            sessions.append([
                _draw_sample(profiles[u], params, u, f"s{s + 1}",
                             passwords[u], drift, rng)
                for _ in range(params.reps_per_session)
            ])
        enrollment[u] = sessions
    attempts: List[LabeledAttempt] = []
    for u in users:
        drift = _session_drift(profiles[u], params, params.sessions + 1, rng)
        for k in range(params.genuine_attempts):
            sample = _draw_sample(profiles[u], params, u, f"auth{k}",
                                  passwords[u], drift, rng)
            attempts.append(LabeledAttempt(u, u, sample))
        for k in range(params.impostors_per_user):
            impostor = users[(users.index(u) + 1 + k) % len(users)]
            if impostor == u:
                continue
            base = profiles[impostor].base_latencies
            # impostor types the victim's password with their own rhythm,
            # resampled to the victim's password length
            lats = np.resize(np.asarray(base), params.password_length - 1)
            imp_profile = SynthProfile(tuple(lats.tolist()),
                                       params.jitter_sigma, params.novice)
            sample = _draw_sample(imp_profile, params, impostor, f"imp{k}",
                                  passwords[u], 0.0, rng)
            attempts.append(LabeledAttempt(u, impostor, sample))
    return SynthDataset(enrollment, attempts, profiles, passwords)


# --- dataset files ---------------------------------------------------------

def write_dataset(ds: SynthDataset, samples_fp: TextIO,
                  attempts_fp: TextIO) -> None:
    for u in ds.enrollment:
        for session in ds.enrollment[u]:
            for s in session:
                samples_fp.write(json.dumps(sample_to_record(s)) + "\n")
    for a in ds.attempts:
        attempts_fp.write(json.dumps({
            "claimed_user": a.claimed_user,
            "true_user": a.true_user,
            "sample": sample_to_record(a.sample),
        }) + "\n")


def read_attempts(fp: TextIO) -> List[LabeledAttempt]:
    out = []
    for line in fp:
        if not line.strip():
            continue
        rec = json.loads(line)
        out.append(LabeledAttempt(rec["claimed_user"], rec["true_user"],
                                  sample_from_record(rec["sample"])))
    return out
