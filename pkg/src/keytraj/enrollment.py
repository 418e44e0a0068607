"""Enrollment and authentication decisions.

A user enrolls by typing the password a few times in each of three sessions.
Each session is clustered into a single cluster (threshold = in-session
maximum pairwise distance) whose medoid is the session representative; the
medoid of the three session representatives becomes the stored template and
the mean pairwise distance between them becomes the acceptance threshold.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Sequence

from .clustering import ClusteringConfig, cluster_matrix
from .distance import dissimilarity_matrix, dist
from .errors import (EmptyTrajectory, KeytrajError, SecretInconsistent,
                     SessionCountMismatch, TooFewSamples)
from .events import FeatureKind, KeystrokeSample, Trajectory, extract_trajectory


@dataclass(frozen=True)
class SessionTemplate:
    session_id: str
    rep_traj: Trajectory
    session_threshold: float


@dataclass(frozen=True)
class UserFeature:
    user_id: str
    user_rep_traj: Trajectory
    user_threshold: float
    feature_kind: FeatureKind
    secret_verifier: str
    created_at: float


class Reason(str, Enum):
    ACCEPTED = "accepted"
    TIMING_MISMATCH = "timing_mismatch"
    SECRET_MISMATCH = "secret_mismatch"
    LENGTH_REJECT = "length_reject"


@dataclass(frozen=True)
class Decision:
    accepted: bool
    dissimilarity: float
    threshold: float
    reason: Reason


@dataclass(frozen=True)
class AuthPolicy:
    # Floor of 0 reproduces the reference behavior exactly; a positive floor
    # guards the degenerate case of a user whose enrollment threshold is 0.
    threshold_floor: float = 0.0


def hash_secret(user_id: str, secret: str) -> str:
    """Salted one-way verifier; deterministic per user so enrollment is
    reproducible."""
    salt = hashlib.sha256(f"keytraj|{user_id}".encode()).digest()
    return hashlib.pbkdf2_hmac("sha256", secret.encode(), salt, 50_000).hex()


def session_rep(samples: Sequence[KeystrokeSample],
                feature: FeatureKind = FeatureKind.PRESS_PRESS) -> SessionTemplate:
    """Representative trajectory of one session.

    Threshold is set to the session's maximum pairwise distance, which forces
    a single cluster; the session representative is that cluster's medoid.
    """
    if len(samples) < 2:
        raise TooFewSamples(f"need >= 2 samples, got {len(samples)}")
    secrets = {s.secret_text for s in samples}
    if len(secrets) != 1:
        raise SecretInconsistent("samples disagree on secret_text")
    trajs = [extract_trajectory(s, feature, ordinal=i)
             for i, s in enumerate(samples)]
    matrix = dissimilarity_matrix(trajs)
    threshold = max(matrix.values[i][j]
                    for i in range(len(trajs)) for j in range(len(trajs)))
    clustering = cluster_matrix(matrix, ClusteringConfig(threshold=threshold))
    assert len(clustering.clusters) == 1
    rep_tid = clustering.clusters[0].representative
    rep = next(t for t in trajs if t.tid == rep_tid)
    return SessionTemplate(samples[0].session_id, rep, threshold)


def user_threshold(reps: Sequence[Trajectory]) -> float:
    """Mean pairwise dissimilarity between the three session representatives."""
    _require_three(reps)
    pairs = list(combinations(reps, 2))
    return sum(dist(a, b) for a, b in pairs) / len(pairs)


def user_rep(reps: Sequence[Trajectory]) -> Trajectory:
    """Medoid of the three session representatives."""
    _require_three(reps)
    matrix = dissimilarity_matrix(reps)
    clustering = cluster_matrix(
        matrix,
        ClusteringConfig(threshold=max(max(row) for row in matrix.values)))
    assert len(clustering.clusters) == 1
    rep_tid = clustering.clusters[0].representative
    return next(t for t in reps if t.tid == rep_tid)


def _require_three(reps: Sequence[Trajectory]) -> None:
    if len(reps) != 3:
        raise SessionCountMismatch(f"need exactly 3 representatives, got {len(reps)}")
    for r in reps:
        if not r.latencies:
            raise EmptyTrajectory(r.tid)


def enroll(sessions: Sequence[Sequence[KeystrokeSample]],
           feature: FeatureKind = FeatureKind.PRESS_PRESS,
           created_at: float | None = None) -> UserFeature:
    """Build the stored user feature from three sessions of samples."""
    if len(sessions) != 3:
        raise SessionCountMismatch(f"need exactly 3 sessions, got {len(sessions)}")
    secrets = {s.secret_text for sess in sessions for s in sess}
    if len(secrets) != 1:
        raise SecretInconsistent("sessions disagree on secret_text")
    user_ids = {s.user_id for sess in sessions for s in sess}
    if len(user_ids) != 1:
        raise SecretInconsistent("sessions disagree on user_id")
    templates = [session_rep(sess, feature) for sess in sessions]
    reps = [t.rep_traj for t in templates]
    user_id = next(iter(user_ids))
    return UserFeature(
        user_id=user_id,
        user_rep_traj=user_rep(reps),
        user_threshold=user_threshold(reps),
        feature_kind=feature,
        secret_verifier=hash_secret(user_id, next(iter(secrets))),
        created_at=time.time() if created_at is None else created_at,
    )


def authenticate(attempt: KeystrokeSample, feature: UserFeature,
                 policy: AuthPolicy = AuthPolicy()) -> Decision:
    """Decide one login attempt against the stored feature.

    The secret gate runs before any timing comparison; timing is the second
    factor for the password-theft scenario.
    """
    effective = max(feature.user_threshold, policy.threshold_floor)
    if hash_secret(feature.user_id, attempt.secret_text) != feature.secret_verifier:
        return Decision(False, float("inf"), effective, Reason.SECRET_MISMATCH)
    try:
        traj = extract_trajectory(attempt, feature.feature_kind)
    except KeytrajError:
        return Decision(False, float("inf"), effective, Reason.LENGTH_REJECT)
    d = dist(traj, feature.user_rep_traj)
    if d <= effective:
        return Decision(True, d, effective, Reason.ACCEPTED)
    return Decision(False, d, effective, Reason.TIMING_MISMATCH)


# --- feature persistence ---------------------------------------------------

def feature_to_record(f: UserFeature) -> dict:
    return {
        "user_id": f.user_id,
        "feature_kind": f.feature_kind.value,
        "user_threshold": f.user_threshold,
        "user_rep_traj": {"tid": f.user_rep_traj.tid,
                          "latencies": list(f.user_rep_traj.latencies)},
        "secret_verifier": f.secret_verifier,
        "created_at": f.created_at,
    }


def feature_from_record(rec: dict) -> UserFeature:
    return UserFeature(
        user_id=rec["user_id"],
        user_rep_traj=Trajectory(rec["user_rep_traj"]["tid"],
                                 rec["user_rep_traj"]["latencies"]),
        user_threshold=float(rec["user_threshold"]),
        feature_kind=FeatureKind(rec["feature_kind"]),
        secret_verifier=rec["secret_verifier"],
        created_at=float(rec["created_at"]),
    )
