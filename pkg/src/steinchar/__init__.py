"""Normal-approximation error bounds for traces of random elements of the
compact classical groups, the sphere, and the circular ensembles, driven by
trace-square decomposition data, together with samplers and brute-force
oracles that verify every formula empirically."""

from .partitions import BoxStats, Signature, boxes, shift_to_partition
from .characters import (
    DecompositionTable,
    IrrepComponent,
    FAMILIES,
    class_eigenvalues,
    o_even_table,
    random_eigenvalues,
    schur_evaluate,
    so_odd_table,
    tensor_square_character_identity,
    u_table,
    usp_table,
)
from .spherical import (
    JackContext,
    coe_table,
    cse_table,
    gegenbauer,
    jack_dimension,
    jack_principal_specialization,
    m_from_p_expansion,
    sphere_table,
)
from .stein import (
    BoundReport,
    LimitReport,
    MomentReport,
    bound,
    builtin_table,
    complex_bound,
    exact_limit,
    kth_moment,
    limit_report,
    moments,
    paper_bound,
    real_bound,
)
from .sampling import (
    PairBatch,
    SampleBatch,
    coe_sample,
    cse_sample,
    exchangeable_pair,
    haar_orthogonal,
    haar_symplectic,
    haar_unitary,
    sample_pairs,
    sample_w,
    sphere_sample,
    weyl_mcmc,
)
from .stats import KolmogorovReport, dkw_epsilon, kolmogorov_distance, linearity_check, normal_cdf
from .oracle import (
    jack_gram_schmidt,
    monte_carlo_multiplicity,
    numeric_limit,
    pieri_least_squares,
)

__version__ = "0.1.0"
