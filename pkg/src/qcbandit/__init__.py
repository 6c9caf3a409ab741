"""Contextual-bandit simulations over quantum observables.

Contexts are real-weighted Pauli sums (negated Hamiltonians), actions are
stabilizer states measured term by term, and the learner is LinUCB running
on an incrementally orthonormalized subspace of everything it has seen.
"""

from .environments import (
    Action,
    Environment,
    optimal_action,
    sample_observable_reward,
    sample_observable_rewards,
    sample_pauli_reward,
    stabilizer_environment,
    suboptimality_gap,
)
from .errors import (
    CapabilityError,
    ConfigurationError,
    DimensionError,
    InvariantError,
    NumericalError,
    QcbError,
)
from .hamiltonians import (
    ClusterParams,
    ContextDistribution,
    IsingParams,
    cluster_actions,
    cluster_distribution,
    cluster_hamiltonian,
    ising_actions,
    ising_distribution,
    ising_hamiltonian,
    recommendation_context,
    sample_context,
)
from .hard_instances import (
    HardInstance,
    build_hard_instance,
    hard_context_at,
    hard_environment,
    hard_mean,
    hard_sample,
    uniform_policy_regret,
)
from .linucb import (
    AlphaSchedule,
    GramBasis,
    PlainLinUCB,
    PolicyState,
    alpha_value,
    gram_update,
    select_action,
    update,
)
from .paulis import (
    Observable,
    PauliString,
    PhasedPauli,
    all_pauli_strings,
    commutes,
    hs_inner,
    hs_norm,
    pauli_product,
)
from .runner import (
    ExperimentConfig,
    ExperimentResult,
    cli_main,
    run_equivalence_check,
    run_experiment,
    write_outputs,
)
from .stabilizer import (
    StabilizerState,
    all_minus,
    all_one,
    all_plus,
    cluster_state,
    dense_expectation,
    expectation,
    expectation_observable,
    neel_z,
    random_product_state,
    x_alternating,
)

__version__ = "0.1.0"
