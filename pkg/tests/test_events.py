import io

import pytest

from keytraj import EventKind, FeatureKind, KeyEvent, KeystrokeSample, extract_trajectory
from keytraj.errors import MalformedStream, TooFewEvents
from keytraj.events import read_samples, write_samples

from conftest import sample_with_latencies


def press(key, ts):
    return KeyEvent(key, EventKind.PRESS, ts)


def release(key, ts):
    return KeyEvent(key, EventKind.RELEASE, ts)


def test_press_press_fixture_row():
    # press timestamps are the cumulative sums of the first fixture row
    ts = [0, 206, 438, 630, 842, 1052, 1220, 1497]
    events = [press(ch, t) for ch, t in zip("password", ts)]
    sample = KeystrokeSample("u", "s1", "password", events)
    traj = extract_trajectory(sample, FeatureKind.PRESS_PRESS)
    assert list(traj.latencies) == [206, 232, 192, 212, 210, 168, 277]
    assert traj.tid == "u/s1/0"


def test_hold_time_single_key():
    sample = KeystrokeSample("u", "s1", "a", [press("a", 0), release("a", 85)])
    traj = extract_trajectory(sample, FeatureKind.HOLD_TIME)
    assert list(traj.latencies) == [85]


def test_release_press_can_be_negative():
    # second press lands before the first release (overlapping keys)
    events = [press("a", 0), press("b", 50), release("a", 70), release("b", 120)]
    sample = KeystrokeSample("u", "s1", "ab", events)
    traj = extract_trajectory(sample, FeatureKind.RELEASE_PRESS)
    assert traj.latencies == (-20.0,)


def test_single_press_too_few():
    sample = KeystrokeSample("u", "s1", "a", [press("a", 0)])
    with pytest.raises(TooFewEvents):
        extract_trajectory(sample, FeatureKind.PRESS_PRESS)


def test_release_without_press_rejected():
    sample = KeystrokeSample("u", "s1", "a", [release("a", 10), press("a", 20)])
    with pytest.raises(MalformedStream):
        extract_trajectory(sample, FeatureKind.HOLD_TIME)


def test_unsorted_timestamps_rejected():
    sample = KeystrokeSample("u", "s1", "ab", [press("a", 100), press("b", 20)])
    with pytest.raises(MalformedStream):
        extract_trajectory(sample)


def test_feature_lengths():
    sample = sample_with_latencies([200, 210, 190], secret="abcd")
    assert len(extract_trajectory(sample, FeatureKind.PRESS_PRESS)) == 3
    assert len(extract_trajectory(sample, FeatureKind.HOLD_TIME)) == 4
    assert len(extract_trajectory(sample, FeatureKind.RELEASE_PRESS)) == 3


def test_translation_invariance():
    ts = [0, 150, 330, 500]
    base = KeystrokeSample("u", "s1", "abcd", [press(c, t) for c, t in zip("abcd", ts)])
    shifted = KeystrokeSample("u", "s1", "abcd",
                              [press(c, t + 1234.5) for c, t in zip("abcd", ts)])
    assert extract_trajectory(base).latencies == extract_trajectory(shifted).latencies


def test_modifier_keys_filtered():
    events = [
        KeyEvent("Shift", EventKind.PRESS, 0),
        press("A", 10), press("b", 200),
        KeyEvent("Shift", EventKind.RELEASE, 250),
    ]
    sample = KeystrokeSample("u", "s1", "Ab", events)
    traj = extract_trajectory(sample)
    assert traj.latencies == (190.0,)


def test_typed_events_ignored():
    events = [press("a", 0), KeyEvent("a", EventKind.TYPED, 5), press("b", 100)]
    sample = KeystrokeSample("u", "s1", "ab", events)
    assert extract_trajectory(sample).latencies == (100.0,)


def test_event_log_round_trip():
    samples = [
        sample_with_latencies([206.5, 232.25], user_id="alice", secret="abc"),
        sample_with_latencies([150, 180, 175], user_id="bob", session_id="s2"),
    ]
    buf = io.StringIO()
    write_samples(samples, buf)
    buf.seek(0)
    assert read_samples(buf) == samples


def test_event_log_parse_error_reports_line():
    buf = io.StringIO('{"user_id": "u"}\n')
    with pytest.raises(MalformedStream, match="line 1"):
        read_samples(buf)
