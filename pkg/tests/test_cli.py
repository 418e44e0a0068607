import json

import pytest
from click.testing import CliRunner

from keytraj.cli import main
from keytraj.events import write_samples

from conftest import FIXTURE_ROWS, sample_with_latencies


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fixture_file(tmp_path):
    path = tmp_path / "trajs.csv"
    rows = [f"{n},{','.join(str(x) for x in lats)}"
            for n, lats in FIXTURE_ROWS.items()]
    path.write_text("\n".join(rows) + "\n")
    return str(path)


def write_enrollment_file(tmp_path, user_id="alice", rows=("A", "C", "D")):
    samples = []
    for i, n in enumerate(rows, start=1):
        for _ in range(5):
            samples.append(sample_with_latencies(
                FIXTURE_ROWS[n], user_id=user_id, session_id=f"s{i}"))
    path = tmp_path / "samples.jsonl"
    with open(path, "w") as fp:
        write_samples(samples, fp)
    return str(path)


class TestDist:
    def test_hausdorff_table(self, runner, fixture_file):
        result = runner.invoke(main, ["dist", fixture_file])
        assert result.exit_code == 0
        assert "8.22" in result.output
        assert "27.73" in result.output
        assert "28.56" in result.output

    def test_canberra_table(self, runner, fixture_file):
        result = runner.invoke(main, ["dist", fixture_file, "--metric", "canberra"])
        assert result.exit_code == 0
        assert "0.16" in result.output

    def test_machine_format_full_precision(self, runner, fixture_file):
        result = runner.invoke(main, ["dist", fixture_file, "--format", "machine"])
        rec = json.loads(result.output)
        assert rec["ids"] == list("ABCDE")
        assert rec["values"][0][2] == pytest.approx(8.2192, abs=1e-4)

    def test_empty_file_errors(self, runner, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        result = runner.invoke(main, ["dist", str(empty)])
        assert result.exit_code != 0

    def test_parse_error_reports_line(self, runner, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("A,100,200\nB,nope\n")
        result = runner.invoke(main, ["dist", str(bad)])
        assert result.exit_code != 0
        assert "line 2" in result.output


class TestEnrollAuth:
    def test_enroll_prints_threshold(self, runner, tmp_path):
        samples = write_enrollment_file(tmp_path)
        out = tmp_path / "feature.json"
        result = runner.invoke(main, ["enroll", samples, "--user", "alice",
                                      "--out", str(out)])
        assert result.exit_code == 0
        assert "threshold=21.50" in result.output
        assert out.exists()

    def test_enroll_identical_sessions_zero_threshold(self, runner, tmp_path):
        samples = write_enrollment_file(tmp_path, rows=("A", "A", "A"))
        out = tmp_path / "feature.json"
        result = runner.invoke(main, ["enroll", samples, "--user", "alice",
                                      "--out", str(out)])
        assert "threshold=0.0000" in result.output

    def test_enroll_missing_session(self, runner, tmp_path):
        samples = write_enrollment_file(tmp_path, rows=("A", "C"))
        result = runner.invoke(main, ["enroll", samples, "--user", "alice",
                                      "--out", str(tmp_path / "f.json")])
        assert result.exit_code != 0
        assert "SessionCountMismatch" in result.output

    @pytest.fixture
    def enrolled(self, runner, tmp_path):
        samples = write_enrollment_file(tmp_path)
        out = tmp_path / "feature.json"
        runner.invoke(main, ["enroll", samples, "--user", "alice",
                             "--out", str(out)])
        return out

    def write_attempt(self, tmp_path, lats, secret="xxxxxxxx"):
        path = tmp_path / "attempt.jsonl"
        with open(path, "w") as fp:
            write_samples([sample_with_latencies(lats, user_id="alice",
                                                 secret=secret)], fp)
        return str(path)

    def test_auth_accept_exit_zero(self, runner, tmp_path, enrolled):
        attempt = self.write_attempt(tmp_path, FIXTURE_ROWS["A"])
        result = runner.invoke(main, ["auth", attempt, str(enrolled)])
        assert result.exit_code == 0
        assert "accepted=True" in result.output

    def test_auth_reject_exit_one(self, runner, tmp_path, enrolled):
        attempt = self.write_attempt(tmp_path, [500, 600, 700, 800, 900, 1000, 1100])
        result = runner.invoke(main, ["auth", attempt, str(enrolled)])
        assert result.exit_code == 1

    def test_auth_corrupt_file_exit_two(self, runner, tmp_path, enrolled):
        bad = tmp_path / "bad.jsonl"
        bad.write_text("{not json\n")
        result = runner.invoke(main, ["auth", str(bad), str(enrolled)])
        assert result.exit_code == 2


class TestSynthEvaluate:
    def test_synth_deterministic(self, runner, tmp_path):
        args = ["synth", "--seed", "42", "--users", "3"]
        r1 = runner.invoke(main, args + ["--out", str(tmp_path / "d1")])
        r2 = runner.invoke(main, args + ["--out", str(tmp_path / "d2")])
        assert r1.exit_code == 0 and r2.exit_code == 0
        assert (tmp_path / "d1" / "samples.jsonl").read_text() == \
               (tmp_path / "d2" / "samples.jsonl").read_text()
        assert (tmp_path / "d1" / "attempts.jsonl").read_text() == \
               (tmp_path / "d2" / "attempts.jsonl").read_text()

    def test_evaluate_sigma_zero_frr_zero(self, runner, tmp_path):
        out = tmp_path / "ds"
        runner.invoke(main, ["synth", "--seed", "7", "--users", "3",
                             "--jitter-sigma", "0", "--out", str(out)])
        report_path = tmp_path / "report.json"
        result = runner.invoke(main, ["evaluate", str(out),
                                      "--report", str(report_path),
                                      "--format", "machine"])
        assert result.exit_code == 0
        report = json.loads(report_path.read_text())
        assert report["frr"] == 0
