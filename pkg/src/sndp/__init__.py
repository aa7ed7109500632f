"""Survivable network design toolkit.

Find the minimum-cost set of arcs to build so that all demand can still be
routed after any disruption whose cumulative attack cost fits a budget.
Ships three exact solvers over a self-contained LP/MILP/max-flow core:

* extensive form -- one monolithic MILP with a recourse block per scenario,
* explicit Benders decomposition over the enumerated scenario list,
* delayed scenario generation -- Benders with an implicit separation oracle
  that searches the exponential scenario space as a MILP.
"""

from sndp.decomposition import (
    DesignSolution,
    solve_benders,
    solve_delayed,
    solve_exhaustive,
)
from sndp.extensive import solve_extensive
from sndp.instances import (
    AttackVector,
    DesignVector,
    Edge,
    GeneratorSpec,
    Instance,
    InstanceFormatError,
    Node,
    ValidationReport,
    attack_cost,
    generate_instance,
    parse_instance,
    serialize_instance,
    total_demand,
    validate,
)
from sndp.reporting import (
    TradeoffPoint,
    VerificationReport,
    bench,
    sweep_tradeoff,
    verify_design,
)

__version__ = "0.1.0"

__all__ = [
    "AttackVector",
    "DesignSolution",
    "DesignVector",
    "Edge",
    "GeneratorSpec",
    "Instance",
    "InstanceFormatError",
    "Node",
    "TradeoffPoint",
    "ValidationReport",
    "VerificationReport",
    "attack_cost",
    "bench",
    "generate_instance",
    "parse_instance",
    "serialize_instance",
    "solve_benders",
    "solve_delayed",
    "solve_exhaustive",
    "solve_extensive",
    "sweep_tradeoff",
    "total_demand",
    "validate",
    "verify_design",
    "__version__",
]
