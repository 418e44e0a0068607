import io

import numpy as np
import pytest

from keytraj import (AuthPolicy, FeatureKind, LabeledAttempt, SynthParams,
                     Trajectory, dist, enroll, evaluate, extract_trajectory,
                     synth_generate, threshold_sweep)
from keytraj.enrollment import UserFeature, hash_secret
from keytraj.errors import InvalidParams, UnknownUser
from keytraj.evaluation import read_attempts, write_dataset

from conftest import FIXTURE_ROWS, sample_with_latencies


def make_feature(user_id, latencies, threshold, secret="xxxxxxxx"):
    return UserFeature(user_id, Trajectory(f"{user_id}/rep", latencies),
                       threshold, FeatureKind.PRESS_PRESS,
                       hash_secret(user_id, secret), 0.0)


class TestEvaluate:
    def test_clean_split_zero_rates(self):
        features = {"u": make_feature("u", FIXTURE_ROWS["A"], 10.0)}
        attempts = [
            LabeledAttempt("u", "u", sample_with_latencies(FIXTURE_ROWS["A"], user_id="u")),
            LabeledAttempt("u", "imp", sample_with_latencies(FIXTURE_ROWS["D"], user_id="imp")),
        ]
        report = evaluate(features, attempts)
        assert report.frr == 0 and report.far == 0
        assert report.genuine_count == 1 and report.impostor_count == 1

    def test_partial_rejection_arithmetic(self):
        features = {"u": make_feature("u", FIXTURE_ROWS["A"], 10.0)}
        genuine = [FIXTURE_ROWS["A"]] * 3 + [FIXTURE_ROWS["C"]] + [FIXTURE_ROWS["D"]]
        attempts = [LabeledAttempt("u", "u", sample_with_latencies(lats))
                    for lats in genuine]
        report = evaluate(features, attempts)
        assert report.frr == pytest.approx(0.2)

    def test_impostor_replaying_rep_counts_as_far(self):
        features = {"u": make_feature("u", FIXTURE_ROWS["A"], 10.0)}
        attempts = [LabeledAttempt("u", "imp",
                                   sample_with_latencies(FIXTURE_ROWS["A"]))]
        report = evaluate(features, attempts)
        assert report.far == 1.0

    def test_undefined_rates_absent(self):
        features = {"u": make_feature("u", FIXTURE_ROWS["A"], 10.0)}
        attempts = [LabeledAttempt("u", "u", sample_with_latencies(FIXTURE_ROWS["A"]))]
        report = evaluate(features, attempts)
        assert report.far is None
        assert report.per_user["u"].far is None

    def test_unknown_claimed_user(self):
        with pytest.raises(UnknownUser):
            evaluate({}, [LabeledAttempt("ghost", "ghost",
                                         sample_with_latencies([100, 120]))])


class TestThresholdSweep:
    @pytest.fixture
    def setup(self):
        features = {"u": make_feature("u", FIXTURE_ROWS["A"], 0.0)}
        attempts = [LabeledAttempt("u", "u", sample_with_latencies(lats))
                    for lats in (FIXTURE_ROWS["A"], FIXTURE_ROWS["C"],
                                 FIXTURE_ROWS["E"], FIXTURE_ROWS["D"])]
        attempts.append(LabeledAttempt(
            "u", "imp", sample_with_latencies(FIXTURE_ROWS["D"])))
        return features, attempts

    def test_monotone(self, setup):
        features, attempts = setup
        rows = threshold_sweep(features, attempts, [0, 5, 9, 12, 30])
        frrs = [r[1] for r in rows]
        fars = [r[2] for r in rows]
        assert frrs == sorted(frrs, reverse=True)
        assert fars == sorted(fars)

    def test_dominating_floor(self, setup):
        features, attempts = setup
        (_, frr, far), = threshold_sweep(features, attempts, [1000.0])
        assert frr == 0
        assert far == 1.0  # the impostor typed the correct secret

    def test_unsorted_floors_rejected(self, setup):
        features, attempts = setup
        with pytest.raises(InvalidParams):
            threshold_sweep(features, attempts, [5, 1])


class TestSynth:
    def test_deterministic_under_seed(self):
        params = SynthParams(num_users=4)
        assert synth_generate(params, 42) == synth_generate(params, 42)

    def test_sigma_zero_identical_samples(self):
        params = SynthParams(num_users=2, jitter_sigma=0.0)
        ds = synth_generate(params, 1)
        for user, sessions in ds.enrollment.items():
            trajs = {extract_trajectory(s).latencies
                     for sess in sessions for s in sess}
            assert len(trajs) == 1

    def test_population_shape(self):
        params = SynthParams(num_users=5, sessions=3, reps_per_session=5)
        ds = synth_generate(params, 3)
        total = sum(len(s) for sess in ds.enrollment.values() for s in [sess])
        assert len(ds.enrollment) == 5
        assert all(len(sessions) == 3 for sessions in ds.enrollment.values())
        assert all(len(s) == 5 for sessions in ds.enrollment.values()
                   for s in sessions)

    def test_base_latencies_in_range(self):
        ds = synth_generate(SynthParams(num_users=3), 9)
        for p in ds.profiles.values():
            assert all(100 <= x <= 350 for x in p.base_latencies)

    def test_invalid_params(self):
        with pytest.raises(InvalidParams):
            synth_generate(SynthParams(num_users=0), 1)
        with pytest.raises(InvalidParams):
            synth_generate(SynthParams(num_users=1, jitter_sigma=-1), 1)

    def test_sigma_zero_population_frr_zero(self):
        params = SynthParams(num_users=3, jitter_sigma=0.0)
        ds = synth_generate(params, 5)
        features = {u: enroll(sessions) for u, sessions in ds.enrollment.items()}
        report = evaluate(features, ds.attempts)
        assert report.frr == 0

    def test_dataset_file_round_trip(self):
        ds = synth_generate(SynthParams(num_users=2), 11)
        sbuf, abuf = io.StringIO(), io.StringIO()
        write_dataset(ds, sbuf, abuf)
        abuf.seek(0)
        assert read_attempts(abuf) == ds.attempts


class TestImpostorSeparation:
    def test_far_zero_for_distant_impostors(self):
        params = SynthParams(num_users=4, jitter_sigma=2.0)
        ds = synth_generate(params, 8)
        features = {u: enroll(sessions) for u, sessions in ds.enrollment.items()}
        rng = np.random.default_rng(0)
        attempts = []
        for u, feature in features.items():
            effective = max(feature.user_threshold, 1.0)
            # impostor whose base profile is far beyond the threshold
            far_lats = [x + 20 * effective for x in feature.user_rep_traj.latencies]
            base = Trajectory("imp", far_lats)
            assert dist(base, feature.user_rep_traj) > 5 * effective
            attempts.append(LabeledAttempt(
                u, "imp", sample_with_latencies(
                    far_lats, user_id="imp",
                    secret=ds.passwords[u])))
        report = evaluate(features, attempts)
        assert report.far == 0
