"""Online search with turn cost: LP relaxations, duality certificates and game simulation."""

from .errors import AuditError, InputError, OracleNotApplicable, SolverError, TurnSearchError
from .game_sim import (
    GameOutcome,
    GuaranteeAudit,
    HiderPlacement,
    adversarial_hiders,
    audit_guarantee,
    opt_cost,
    simulate,
)
from .line_model import (
    DualSequence,
    LineInstance,
    build_line_lp,
    certify_line_optimality,
    closed_form_line_strategy,
    extrapolate_limit,
    lambda_sequence,
    line_dual_sequence,
    solve_line,
    tradeoff_curve,
)
from .lp_core import (
    FLOAT64,
    RATIONAL,
    ArithmeticMode,
    LinearProgram,
    LpSolution,
    Status,
    solve,
    solve_equality_oracle,
)
from .randomized import RandomizedRatio, randomized_additive_bound, solve_randomized_ratio
from .star_model import (
    StarDualSequence,
    StarInstance,
    build_star_lp,
    certify_star_optimality,
    closed_form_star_strategy,
    star_additive_term,
    star_dual_sequence,
    star_lambda,
    star_limit_table,
)
from .strategy import SearchStrategy
from .certificate import OptimalityCertificate, Verdict

__version__ = "0.1.0"
