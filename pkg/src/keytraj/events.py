"""Key event streams and latency trajectory extraction.

A password entry arrives as an ordered stream of timed press/release events.
This module turns such a stream into a latency trajectory: an ordered list of
millisecond intervals that captures *how* the password was typed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, TextIO

from .errors import MalformedStream, TooFewEvents


class EventKind(str, Enum):
    PRESS = "press"
    RELEASE = "release"
    # Accepted in the wire format but carries no latency information.
    TYPED = "typed"


class FeatureKind(str, Enum):
    """Which latency the trajectory measures.

    PRESS_PRESS is the press-to-press (digraph) interval and the default.
    HOLD_TIME is press-to-release of the same key.  RELEASE_PRESS is
    release-to-next-press and may be negative when keys overlap.
    """

    PRESS_PRESS = "press_press"
    HOLD_TIME = "hold_time"
    RELEASE_PRESS = "release_press"


#: Keys filtered out before extraction: they modify characters but do not
#: contribute one themselves, so they would break the press-count invariant.
MODIFIER_KEYS = frozenset(
    {"Shift", "Control", "Alt", "Meta", "AltGraph", "CapsLock", "Fn", "OS"}
)


@dataclass(frozen=True)
class KeyEvent:
    key: str
    kind: EventKind
    timestamp: float  # milliseconds

    def __post_init__(self) -> None:
        if self.timestamp < 0:
            raise MalformedStream(f"negative timestamp {self.timestamp}")


@dataclass(frozen=True)
class KeystrokeSample:
    """All events recorded for one entry of the password."""

    user_id: str
    session_id: str
    secret_text: str
    events: tuple[KeyEvent, ...]

    def __init__(self, user_id: str, session_id: str, secret_text: str,
                 events: Iterable[KeyEvent]) -> None:
        object.__setattr__(self, "user_id", user_id)
        object.__setattr__(self, "session_id", session_id)
        object.__setattr__(self, "secret_text", secret_text)
        object.__setattr__(self, "events", tuple(events))


@dataclass(frozen=True)
class Trajectory:
    tid: str
    latencies: tuple[float, ...]

    def __init__(self, tid: str, latencies: Iterable[float]) -> None:
        object.__setattr__(self, "tid", tid)
        object.__setattr__(self, "latencies", tuple(float(x) for x in latencies))

    def __len__(self) -> int:
        return len(self.latencies)


def _typing_events(sample: KeystrokeSample) -> List[KeyEvent]:
    """Press/release events that contribute characters, in timestamp order."""
    evs = [e for e in sample.events
           if e.kind is not EventKind.TYPED and e.key not in MODIFIER_KEYS]
    for prev, cur in zip(evs, evs[1:]):
        if cur.timestamp < prev.timestamp:
            raise MalformedStream(
                f"timestamps not sorted: {prev.timestamp} then {cur.timestamp}")
    return evs


def _hold_times(events: List[KeyEvent]) -> List[float]:
    holds: List[float] = []
    open_presses: dict[str, list[float]] = {}
    order: List[tuple[str, int]] = []  # (key, slot) in press order
    for e in events:
        if e.kind is EventKind.PRESS:
            open_presses.setdefault(e.key, []).append(e.timestamp)
            order.append((e.key, len(open_presses[e.key]) - 1))
            holds.append(-1.0)  # placeholder, filled when the release arrives
        else:
            stack = open_presses.get(e.key)
            if not stack:
                raise MalformedStream(f"release of '{e.key}' without a press")
            t_press = stack.pop(0)
            idx = next(i for i, (k, _) in enumerate(order)
                       if k == e.key and holds[i] < 0)
            holds[idx] = e.timestamp - t_press
    if any(h < 0 for h in holds):
        raise MalformedStream("press without a matching release")
    return holds


def extract_trajectory(sample: KeystrokeSample,
                       feature: FeatureKind = FeatureKind.PRESS_PRESS,
                       ordinal: int = 0) -> Trajectory:
    """Extract the latency trajectory of one sample.

    Raises TooFewEvents when the stream has too few presses for the chosen
    feature, MalformedStream when it violates ordering or press/release
    pairing.
    """
    events = _typing_events(sample)
    presses = [e for e in events if e.kind is EventKind.PRESS]
    for e in events:
        if e.kind is EventKind.RELEASE:
            if not any(p.kind is EventKind.PRESS and p.key == e.key
                       and p.timestamp <= e.timestamp for p in events):
                raise MalformedStream(f"release of '{e.key}' without a press")

    tid = f"{sample.user_id}/{sample.session_id}/{ordinal}"

    if feature is FeatureKind.PRESS_PRESS:
        if len(presses) < 2:
            raise TooFewEvents("press-press latency needs at least 2 presses")
        lats = [b.timestamp - a.timestamp for a, b in zip(presses, presses[1:])]
    elif feature is FeatureKind.HOLD_TIME:
        if len(presses) < 1:
            raise TooFewEvents("hold time needs at least 1 press")
        lats = _hold_times(events)
    elif feature is FeatureKind.RELEASE_PRESS:
        if len(presses) < 2:
            raise TooFewEvents("release-press latency needs at least 2 presses")
        releases = _release_per_press(events, presses)
        lats = [presses[i + 1].timestamp - releases[i]
                for i in range(len(presses) - 1)]
    else:  # pragma: no cover
        raise ValueError(f"unknown feature kind {feature}")
    return Trajectory(tid, lats)


def _release_per_press(events: List[KeyEvent],
                       presses: List[KeyEvent]) -> List[float]:
    """Release timestamp for each press, in press order."""
    holds = _hold_times(events)
    return [p.timestamp + h for p, h in zip(presses, holds)]


# --- event-log wire format (one JSON object per line) ---------------------

def sample_to_record(sample: KeystrokeSample) -> dict:
    return {
        "user_id": sample.user_id,
        "session_id": sample.session_id,
        "secret_text": sample.secret_text,
        "events": [[e.key, e.kind.value, e.timestamp] for e in sample.events],
    }


def sample_from_record(rec: dict) -> KeystrokeSample:
    events = [KeyEvent(k, EventKind(kind), float(ts))
              for k, kind, ts in rec["events"]]
    return KeystrokeSample(rec["user_id"], rec["session_id"],
                           rec["secret_text"], events)


def write_samples(samples: Iterable[KeystrokeSample], fp: TextIO) -> None:
    for s in samples:
        fp.write(json.dumps(sample_to_record(s)) + "\n")


def read_samples(fp: TextIO) -> List[KeystrokeSample]:
    out = []
    for lineno, line in enumerate(fp, start=1):
        if not line.strip():
            continue
        try:
            out.append(sample_from_record(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise MalformedStream(f"line {lineno}: {exc}") from exc
    return out
