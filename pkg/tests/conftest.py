import math

import pytest

from keytraj import Trajectory
from keytraj.evaluation import sample_from_latencies

# Sample trajectory fixture: five seven-point latency rows (A and B identical,
# C is A shifted by +10, D and E differ in shape).
FIXTURE_ROWS = {
    "A": [206, 232, 192, 212, 210, 168, 277],
    "B": [206, 232, 192, 212, 210, 168, 277],
    "C": [216, 242, 202, 222, 220, 178, 287],
    "D": [254, 285, 135, 120, 190, 228, 350],
    "E": [190, 220, 160, 175, 235, 248, 312],
}

# Published pairwise values for the fixture under the (index, latency)
# Euclidean embedding, rounded to the precision given in the source table.
FIXTURE_DISTANCES = {
    ("A", "B"): 0.0,
    ("A", "C"): 8.22,
    ("A", "D"): 27.73,
    ("A", "E"): 11.8,
    ("B", "C"): 8.22,
    ("B", "D"): 27.73,
    ("B", "E"): 11.8,
    ("C", "D"): 28.56,
    ("C", "E"): 10.95,
    ("D", "E"): 21.34,
}


@pytest.fixture
def fig_trajs():
    return {name: Trajectory(name, lats) for name, lats in FIXTURE_ROWS.items()}


@pytest.fixture
def fig_list(fig_trajs):
    return [fig_trajs[n] for n in "ABCDE"]


def oracle_point_min(i, u, lats):
    """Independent nearest-point computation: plain double loop, math module."""
    return min(math.sqrt((i - j) ** 2 + (u - v) ** 2)
               for j, v in enumerate(lats))


def oracle_owd(a, b):
    total = 0.0
    for i, u in enumerate(a):
        total += oracle_point_min(i, u, b)
    return total / len(a)


def oracle_dist(a, b):
    return max(oracle_owd(a, b), oracle_owd(b, a))


def oracle_canberra(a, b):
    assert len(a) == len(b)
    total = 0.0
    for x, y in zip(a, b):
        if abs(x) + abs(y) > 0:
            total += abs(x - y) / (abs(x) + abs(y))
    return total


def oracle_medoid(members, lookup):
    """Exhaustive argmin of cumulative dissimilarity, first-in-order ties."""
    best, best_sum = None, float("inf")
    for m in members:
        s = sum(lookup(m, other) for other in members)
        if s < best_sum:
            best, best_sum = m, s
    return best


def sample_with_latencies(latencies, user_id="u", session_id="s1",
                          secret=None, hold=80.0):
    """Press/release sample whose press-to-press intervals are `latencies`."""
    secret = secret or "x" * (len(latencies) + 1)
    return sample_from_latencies(latencies, user_id, session_id, secret,
                                 [hold] * len(secret))
