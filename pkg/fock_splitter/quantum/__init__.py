from fock_splitter.quantum.feynman import (
    cell_count_approx_error,
    path_sum_terms,
    poisson_reference,
    single_input_distribution,
    streamlined_terms,
    total_variation_distance,
    two_input_distribution,
    two_input_distribution_streamlined,
)
from fock_splitter.quantum.models import FockPair, OutputDistribution, PoissonReference, TwoModeState
from fock_splitter.quantum.operators import (
    SparsePolynomial,
    annihilation_chain,
    apply_splitter,
    coherent_passthrough_fidelity,
    coherent_two_mode,
    expand_output_state,
    fock_state,
    post_select_port3,
)

__all__ = [
    "FockPair",
    "OutputDistribution",
    "PoissonReference",
    "SparsePolynomial",
    "TwoModeState",
    "annihilation_chain",
    "apply_splitter",
    "cell_count_approx_error",
    "coherent_passthrough_fidelity",
    "coherent_two_mode",
    "expand_output_state",
    "fock_state",
    "path_sum_terms",
    "poisson_reference",
    "post_select_port3",
    "single_input_distribution",
    "streamlined_terms",
    "total_variation_distance",
    "two_input_distribution",
    "two_input_distribution_streamlined",
]
