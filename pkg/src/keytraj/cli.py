"""Command-line front door: distance tables, clustering, enrollment,
authentication, synthesis, evaluation, and serving."""

from __future__ import annotations

import json
import sys
from collections import OrderedDict
from pathlib import Path
from typing import Dict, List

import click

from . import evaluation
from .distance import Metric, dissimilarity_matrix
from .enrollment import (AuthPolicy, authenticate, enroll, feature_from_record,
                         feature_to_record)
from .errors import KeytrajError, MalformedStream
from .events import FeatureKind, KeystrokeSample, Trajectory, read_samples
from .evaluation import SynthParams, read_attempts, synth_generate


def read_trajectory_rows(path: str) -> List[Trajectory]:
    """Fixture format: one row per trajectory, label then comma-separated
    latencies."""
    trajs = []
    with open(path) as fp:
        for lineno, line in enumerate(fp, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) < 2:
                raise MalformedStream(f"line {lineno}: need label and latencies")
            try:
                lats = [float(p) for p in parts[1:]]
            except ValueError as exc:
                raise MalformedStream(f"line {lineno}: {exc}") from exc
            trajs.append(Trajectory(parts[0], lats))
    if not trajs:
        raise MalformedStream("no trajectories in file")
    return trajs


def group_sessions(samples: List[KeystrokeSample],
                   user_id: str) -> List[List[KeystrokeSample]]:
    """Group one user's samples into sessions, in order of first appearance."""
    sessions: "OrderedDict[str, List[KeystrokeSample]]" = OrderedDict()
    for s in samples:
        if s.user_id != user_id:
            continue
        sessions.setdefault(s.session_id, []).append(s)
    return list(sessions.values())


@click.group()
def main() -> None:
    """Keystroke-dynamics authentication via latency-trajectory clustering."""


@main.command("dist")
@click.argument("trajectory_file", type=click.Path(exists=True))
@click.option("--metric", type=click.Choice([m.value for m in Metric]),
              default=Metric.HAUSDORFF.value)
@click.option("--format", "fmt", type=click.Choice(["human", "machine"]),
              default="human")
def cmd_dist(trajectory_file: str, metric: str, fmt: str) -> None:
    """Pairwise dissimilarity table for a trajectory fixture file."""
    try:
        trajs = read_trajectory_rows(trajectory_file)
        matrix = dissimilarity_matrix(trajs, Metric(metric))
    except KeytrajError as exc:
        raise click.ClickException(str(exc))
    if fmt == "machine":
        click.echo(json.dumps(matrix.to_record()))
    else:
        click.echo(matrix.to_table())


@main.command("enroll")
@click.argument("samples_file", type=click.Path(exists=True))
@click.option("--user", "user_id", required=True)
@click.option("--out", "out_feature_file", required=True,
              type=click.Path(dir_okay=False))
@click.option("--feature", type=click.Choice([f.value for f in FeatureKind]),
              default=FeatureKind.PRESS_PRESS.value)
def cmd_enroll(samples_file: str, user_id: str, out_feature_file: str,
               feature: str) -> None:
    """Build and persist a user feature from an event-log file."""
    try:
        with open(samples_file) as fp:
            samples = read_samples(fp)
        sessions = group_sessions(samples, user_id)
        feat = enroll(sessions, FeatureKind(feature))
    except KeytrajError as exc:
        raise click.ClickException(f"{type(exc).__name__}: {exc}")
    Path(out_feature_file).write_text(json.dumps(feature_to_record(feat)))
    click.echo(f"user={feat.user_id} threshold={feat.user_threshold:.4f} "
               f"rep={feat.user_rep_traj.tid}")


@main.command("auth")
@click.argument("attempt_file", type=click.Path(exists=True))
@click.argument("feature_file", type=click.Path(exists=True))
@click.option("--threshold-floor", type=float, default=0.0)
def cmd_auth(attempt_file: str, feature_file: str,
             threshold_floor: float) -> None:
    """Authenticate one attempt; exit 0 accept, 1 reject, 2 error."""
    try:
        with open(attempt_file) as fp:
            attempts = read_samples(fp)
        if len(attempts) != 1:
            raise MalformedStream("attempt file must hold exactly one sample")
        feat = feature_from_record(json.loads(Path(feature_file).read_text()))
        decision = authenticate(attempts[0], feat,
                                AuthPolicy(threshold_floor=threshold_floor))
    except (KeytrajError, json.JSONDecodeError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(f"accepted={decision.accepted} "
               f"dissimilarity={decision.dissimilarity:.4f} "
               f"threshold={decision.threshold:.4f} "
               f"reason={decision.reason.value}")
    sys.exit(0 if decision.accepted else 1)


@main.command("synth")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--seed", type=int, required=True)
@click.option("--users", type=int, default=10)
@click.option("--sessions", type=int, default=3)
@click.option("--reps", type=int, default=5)
@click.option("--password-length", type=int, default=8)
@click.option("--jitter-sigma", type=float, default=10.0)
@click.option("--novice", is_flag=True)
@click.option("--genuine-attempts", type=int, default=3)
@click.option("--impostors-per-user", type=int, default=2)
def cmd_synth(out_dir: str, seed: int, users: int, sessions: int, reps: int,
              password_length: int, jitter_sigma: float, novice: bool,
              genuine_attempts: int, impostors_per_user: int) -> None:
    """Generate a deterministic synthetic dataset into a directory."""
    params = SynthParams(
        num_users=users, sessions=sessions, reps_per_session=reps,
        password_length=password_length, jitter_sigma=jitter_sigma,
        novice=novice, genuine_attempts=genuine_attempts,
        impostors_per_user=impostors_per_user)
    try:
        ds = synth_generate(params, seed)
    except KeytrajError as exc:
        raise click.ClickException(str(exc))
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "samples.jsonl", "w") as sf, \
            open(out / "attempts.jsonl", "w") as af:
        evaluation.write_dataset(ds, sf, af)
    (out / "meta.json").write_text(json.dumps(
        {"seed": seed, "users": users, "sessions": sessions, "reps": reps}))
    click.echo(f"wrote {out / 'samples.jsonl'} and {out / 'attempts.jsonl'}")


@main.command("evaluate")
@click.argument("dataset_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--report", "report_file", type=click.Path(dir_okay=False))
@click.option("--threshold-floor", type=float, default=0.0)
@click.option("--format", "fmt", type=click.Choice(["human", "machine"]),
              default="human")
def cmd_evaluate(dataset_dir: str, report_file: str | None,
                 threshold_floor: float, fmt: str) -> None:
    """Enroll every user in the dataset and report FRR/FAR over its
    attempts."""
    root = Path(dataset_dir)
    try:
        with open(root / "samples.jsonl") as fp:
            samples = read_samples(fp)
        with open(root / "attempts.jsonl") as fp:
            attempts = read_attempts(fp)
        users = sorted({s.user_id for s in samples})
        features = {}
        for u in users:
            features[u] = enroll(group_sessions(samples, u))
        report = evaluation.evaluate(
            features, attempts, AuthPolicy(threshold_floor=threshold_floor))
    except (KeytrajError, FileNotFoundError) as exc:
        raise click.ClickException(f"{type(exc).__name__}: {exc}")
    if report_file:
        Path(report_file).write_text(json.dumps(report.to_record()))
    if fmt == "machine":
        click.echo(json.dumps(report.to_record()))
    else:
        click.echo(report.to_table())


@main.command("serve")
@click.option("--bind", default="127.0.0.1:8000", show_default=True)
@click.option("--store-dir", required=True, type=click.Path(file_okay=False))
@click.option("--sessions", type=int, default=3)
@click.option("--reps", type=int, default=5)
@click.option("--threshold-floor", type=float, default=0.0)
def cmd_serve(bind: str, store_dir: str, sessions: int, reps: int,
              threshold_floor: float) -> None:
    """Run the enrollment/authentication HTTP service until interrupted."""
    import uvicorn

    from .service import create_app
    host, _, port = bind.partition(":")
    app = create_app(store_dir, session_count=sessions,
                     reps_per_session=reps, threshold_floor=threshold_floor)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


if __name__ == "__main__":
    main()
