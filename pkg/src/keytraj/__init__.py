"""Keystroke-dynamics authentication via latency-trajectory clustering."""

from .clustering import (Cluster, Clustering, ClusteringConfig,
                         cluster_trajectories, initialize_clusters,
                         recompute, representative)
from .distance import (DissimilarityMatrix, Metric, canberra,
                       dissimilarity_matrix, dist, owd, point_to_trajectory)
from .enrollment import (AuthPolicy, Decision, Reason, SessionTemplate,
                         UserFeature, authenticate, enroll, session_rep,
                         user_rep, user_threshold)
from .events import (EventKind, FeatureKind, KeyEvent, KeystrokeSample,
                     Trajectory, extract_trajectory)
from .evaluation import (EvaluationReport, LabeledAttempt, SynthParams,
                         SynthProfile, evaluate, synth_generate,
                         threshold_sweep)

__all__ = [
    "AuthPolicy", "Cluster", "Clustering", "ClusteringConfig", "Decision",
    "DissimilarityMatrix", "EvaluationReport", "EventKind", "FeatureKind",
    "KeyEvent", "KeystrokeSample", "LabeledAttempt", "Metric", "Reason",
    "SessionTemplate", "SynthParams", "SynthProfile", "Trajectory",
    "UserFeature", "authenticate", "canberra", "cluster_trajectories",
    "dissimilarity_matrix", "dist", "enroll", "evaluate",
    "extract_trajectory", "initialize_clusters", "owd",
    "point_to_trajectory", "recompute", "representative", "session_rep",
    "synth_generate", "threshold_sweep", "user_rep", "user_threshold",
]
