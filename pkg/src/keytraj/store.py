"""Directory-backed feature store with per-user locking.

Layout under the store directory:
  users/<user_id>.json        completed feature records
  pending/<user_id>.json      open enrollment state (sessions in progress)
  audit.log                   append-only authentication decisions
"""

from __future__ import annotations

import json
import os
import threading
import time
from pathlib import Path
from typing import Dict, List, Optional

from .enrollment import UserFeature, feature_from_record, feature_to_record
from .events import KeystrokeSample, sample_from_record, sample_to_record


def _atomic_write(path: Path, payload: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(payload)
    os.replace(tmp, path)


class FeatureStore:
    def __init__(self, directory: str | Path) -> None:
        self.root = Path(directory)
        (self.root / "users").mkdir(parents=True, exist_ok=True)
        (self.root / "pending").mkdir(parents=True, exist_ok=True)
        self._locks: Dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()
        self._audit_lock = threading.Lock()

    def lock(self, user_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(user_id, threading.Lock())

    # -- features --

    def _feature_path(self, user_id: str) -> Path:
        return self.root / "users" / f"{user_id}.json"

    def save_feature(self, feature: UserFeature) -> None:
        _atomic_write(self._feature_path(feature.user_id),
                      json.dumps(feature_to_record(feature)))

    def load_feature(self, user_id: str) -> Optional[UserFeature]:
        path = self._feature_path(user_id)
        if not path.exists():
            return None
        return feature_from_record(json.loads(path.read_text()))

    def list_users(self) -> List[str]:
        return sorted(p.stem for p in (self.root / "users").glob("*.json"))

    # -- pending enrollments --

    def _pending_path(self, user_id: str) -> Path:
        return self.root / "pending" / f"{user_id}.json"

    def save_pending(self, user_id: str, state: dict) -> None:
        _atomic_write(self._pending_path(user_id), json.dumps(state))

    def load_pending(self, user_id: str) -> Optional[dict]:
        path = self._pending_path(user_id)
        if not path.exists():
            return None
        return json.loads(path.read_text())

    def drop_pending(self, user_id: str) -> None:
        self._pending_path(user_id).unlink(missing_ok=True)

    # -- audit log --

    def audit(self, entry: dict) -> None:
        with self._audit_lock:
            with open(self.root / "audit.log", "a") as fp:
                fp.write(json.dumps({"ts": time.time(), **entry}) + "\n")


def pending_samples(state: dict) -> Dict[int, List[KeystrokeSample]]:
    """Decode the per-session sample lists of a pending enrollment."""
    return {int(k): [sample_from_record(r) for r in v]
            for k, v in state["sessions"].items()}


def encode_sample(sample: KeystrokeSample) -> dict:
    return sample_to_record(sample)
