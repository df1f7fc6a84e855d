"""Exact Fock-state boson sampling in a generalized-coherent-state basis."""
from .entanglement import (BipartitionContext, block_density_matrix, block_spectrum,
                           lambda_matrices, linear_entropy, partition_overlaps,
                           purity_closed_form, renyi_entropy, renyi_trace, renyi_trace_literal,
                           von_neumann_entropy)
from .exceptions import (ConfigError, DimensionError, GCSBosonError, NumericalError,
                         ParticleNumberError, PreconditionError, SizeGuardError)
from .experiments import (EntropyRecord, ExperimentConfig, curve, maximum_curve, run_alpha_sweep,
                          run_asymmetric, run_buildup, run_mode_saturation, run_page_curve)
from .fock import enumerate_basis, evolve_fock, oracle_entropies, reduced_density
from .gcs import (GCSEnsemble, evolve, fock_coefficient, gcs_overlap, kan_expand_general,
                  kan_expand_single_occupancy, reconstruct_amplitude, reconstruct_state)
from .permanent import (output_probability, permanent_glynn, permanent_naive, permanent_ryser,
                        permanent_via_gcs, submatrix, transition_amplitude)
from .unitary import fractional_power, haar_unitary, phase_matrix, unitarity_defect
from .validate import run_validate

__version__ = "0.1.0"
