"""Point-by-point tennis momentum engine.

Replays or simulates matches one point at a time and computes per-point
momentum for both players: historical and in-match scoring probabilities,
rally-length efficiency, their long-term blend, and the combined momentum
value (tmm). Ships a CLI (analyze / simulate / profile / serve) and a live
websocket session service for courtside use.
"""

from .errors import (
    DegenerateInput,
    InconsistentServer,
    InvalidEPoints,
    InvalidR,
    MatchAlreadyOver,
    MissingColumn,
    NoHistory,
    NonMonotonicOrder,
    ParseError,
    PointsAfterMatchEnd,
    ServerMismatch,
    SimulationStall,
    TennisMomentumError,
    Unachievable,
    UnknownTransform,
)
from .ingest import (
    ProfileFile,
    PriorMatch,
    RawPointRow,
    derive_profile,
    parse_points_csv,
    parse_profile_file,
    profile_file_to_yaml,
    records_to_rows,
    rows_to_csv,
    to_point_records,
)
from .momentum import (
    ModelConfig,
    MomentumSample,
    MomentumState,
    PlayerProfile,
    PlayerSample,
    PointRecord,
    efficiency,
    expected_match_points,
    fit_r,
    historical_prob,
    instant_prob,
    long_term_prob,
    process_point,
    replay_match,
    scoring_prob_for,
    short_term_momentum,
    tmm,
)
from .scoring import (
    BEST_OF_FIVE,
    BEST_OF_THREE,
    MatchFormat,
    PlayerId,
    ScoreState,
    apply_point,
    initial_state,
    is_over,
)
from .simulate import (
    SimConfig,
    SimReport,
    final_score,
    replication_seeds,
    report_to_yaml,
    run_experiment,
    simulate_match,
)

__version__ = "0.1.0"

__all__ = [
    "BEST_OF_FIVE",
    "BEST_OF_THREE",
    "DegenerateInput",
    "InconsistentServer",
    "InvalidEPoints",
    "InvalidR",
    "MatchAlreadyOver",
    "MatchFormat",
    "MissingColumn",
    "ModelConfig",
    "MomentumSample",
    "MomentumState",
    "NoHistory",
    "NonMonotonicOrder",
    "ParseError",
    "PlayerId",
    "PlayerProfile",
    "PlayerSample",
    "PointRecord",
    "PointsAfterMatchEnd",
    "ProfileFile",
    "PriorMatch",
    "RawPointRow",
    "ScoreState",
    "ServerMismatch",
    "SimConfig",
    "SimReport",
    "SimulationStall",
    "TennisMomentumError",
    "Unachievable",
    "UnknownTransform",
    "apply_point",
    "derive_profile",
    "efficiency",
    "expected_match_points",
    "final_score",
    "fit_r",
    "historical_prob",
    "initial_state",
    "instant_prob",
    "is_over",
    "long_term_prob",
    "parse_points_csv",
    "parse_profile_file",
    "process_point",
    "profile_file_to_yaml",
    "records_to_rows",
    "replay_match",
    "replication_seeds",
    "report_to_yaml",
    "rows_to_csv",
    "run_experiment",
    "scoring_prob_for",
    "short_term_momentum",
    "simulate_match",
    "tmm",
    "to_point_records",
]
