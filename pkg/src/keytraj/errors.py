"""Exception hierarchy shared across the package."""


class KeytrajError(Exception):
    """Base class for all domain errors."""


class TooFewEvents(KeytrajError):
    """Not enough key presses for the chosen latency feature."""


class MalformedStream(KeytrajError):
    """Event stream violates ordering or press/release pairing."""


class EmptyTrajectory(KeytrajError):
    """A trajectory with no latency points was passed where one is required."""


class LengthMismatch(KeytrajError):
    """Canberra distance requires equal-length trajectories."""


class UnknownTid(KeytrajError):
    """A trajectory id is not present in the dissimilarity matrix."""


class TooFewSamples(KeytrajError):
    """A session needs at least two samples to produce a representative."""


class SecretInconsistent(KeytrajError):
    """Samples within one enrollment disagree on the typed secret."""


class SessionCountMismatch(KeytrajError):
    """Enrollment expects a fixed number of sessions."""


class InvalidParams(KeytrajError):
    """Synthetic generator parameters out of range."""


class UnknownUser(KeytrajError):
    """An attempt claims a user with no enrolled feature."""
