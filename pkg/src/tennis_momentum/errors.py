"""Exception types shared across the engine."""


class TennisMomentumError(Exception):
    """Base class for all engine errors."""


class MatchAlreadyOver(TennisMomentumError):
    """A point was applied to a finished match."""


class ServerMismatch(TennisMomentumError):
    """A point's server field disagrees with the scoring state."""

    def __init__(self, message, point_index=None):
        super().__init__(message)
        self.point_index = point_index


class NoHistory(TennisMomentumError):
    """A player profile has no usable historical data."""


class InvalidR(TennisMomentumError):
    """Efficiency decay base r must be > 1."""


class InvalidEPoints(TennisMomentumError):
    """Expected match points must be > 0."""


class UnknownTransform(TennisMomentumError):
    """Unrecognized short-term momentum transform identifier."""


class Unachievable(TennisMomentumError):
    """fit_r target lies outside the attainable mean-efficiency range."""


class DegenerateInput(TennisMomentumError):
    """fit_r input admits no calibration (all rally counts zero)."""


class ParseError(TennisMomentumError):
    """Malformed value in a points CSV."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class MissingColumn(TennisMomentumError):
    """Required CSV headers are absent."""

    def __init__(self, missing):
        super().__init__(f"missing required columns: {', '.join(sorted(missing))}")
        self.missing = sorted(missing)


class InconsistentServer(TennisMomentumError):
    """A row's server contradicts the rotation implied by prior points."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class PointsAfterMatchEnd(TennisMomentumError):
    """Rows continue past the point at which the match was decided."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class NonMonotonicOrder(TennisMomentumError):
    """Rows are not sorted by (set_no, game_no, point_no)."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class SimulationStall(TennisMomentumError):
    """A simulated match exceeded max_points without producing a winner."""

    def __init__(self, message, points_generated=None, replication=None):
        super().__init__(message)
        self.points_generated = points_generated
        self.replication = replication
