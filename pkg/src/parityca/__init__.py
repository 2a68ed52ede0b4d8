"""Radius-4 cellular automaton for the parity problem.

A library and CLI around one rule family: build and inspect the rule
tables, evolve odd cyclic configurations, measure their structure
(boxes, switches, domains, ordered blocks) and verify the convergence
laws exhaustively at small sizes.
"""
from .engine import (
    BudgetExceeded,
    Converged,
    Cycle,
    Outcome,
    SpaceTimeDiagram,
    default_budget,
    evolve,
    render_pbm,
    render_text,
    space_time,
    step,
)
from .lattice import (
    Configuration,
    ConfigurationError,
    EmptyConfiguration,
    EvenLength,
    EvenPower,
    InvalidCharacter,
    concat_power,
    from_int,
    is_homogeneous,
    parity,
    parse,
    render,
    rotate,
)
from .metrics import (
    DomainHit,
    OrderedBlock,
    Switch,
    SwitchReport,
    annotate,
    find_boxes,
    find_domains,
    find_pattern,
    merge_events,
    ordered_blocks,
    switches,
)
from .rule import (
    CORRECTED,
    ORIGINAL,
    ActiveTransition,
    RuleTable,
    active_neighborhoods,
    build_rule_table,
    table_diff,
    table_string,
    transitions,
    wolfram_number,
)
from .verifier import (
    VerificationReport,
    Violation,
    check_plateau_structure,
    check_trajectory_invariants,
    plan_sweep,
    search_counterexamples,
    verify_size,
)

__version__ = "0.1.0"
