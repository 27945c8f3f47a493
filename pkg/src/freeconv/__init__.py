"""Convolutions of compactly supported, infinitely divisible probability
measures in truncated cumulant coordinates: free additive and multiplicative
convolutions, the componentwise (Hadamard) convolution, their classical
analogues, logarithm/exponential morphisms between them, divisibility
certificates with canonical pair recovery, and the surrounding semiring of
endomorphisms and barycentric operations.
"""

from .convolve import (GermReport, GridSpec, STransform, TransformError,
                       GermCheckError, boxdot, boxplus, boxtimes,
                       classical_convolve, exp_map_circle, exp_map_rplus,
                       germ_check, log_map, moments_from_s, s_transform, star)
from .infdiv import (CERTIFIED, INCONCLUSIVE, REFUTED, IdCertificate,
                     InfdivError, bp_bijection, bp_inverse,
                     combine_pairs, cumulants_to_levy_pair,
                     decalage_well_defined, is_conditionally_pd,
                     pair_to_classical_cumulants, pair_to_free_cumulants_bp,
                     sigma_projection)
from .measures import (CLASSICAL, FREE, ClassicalNormal, ClassicalPoisson,
                       CumulantSeq, Dirac, FreePoisson, KindError, LevyPair,
                       LK, Semicircle, family_to_classical_cumulants,
                       family_to_free_cumulants, family_to_levy_pair,
                       measure_from_json_dict, measure_to_json_dict, moments,
                       rho_to_sigma, semicircle_moments_by_integral,
                       sigma_to_rho)
from .partitions import (MomentSeq, Partition, bell, catalan,
                         classical_cumulants_from_moments,
                         free_cumulants_from_moments,
                         moments_from_classical_cumulants,
                         moments_from_classical_cumulants_by_partitions,
                         moments_from_free_cumulants,
                         moments_from_free_cumulants_by_partitions,
                         nc_partitions, set_partitions)
from .series import (BACKENDS, COMPLEX, DEFAULT_ORDER, EXACT, MAX_ORDER, REAL,
                     SeriesError, TruncatedSeries, comp_inverse_recursive)
from .witt import (BOOLEANS, NONNEG_RATIONALS, AxiomReport, FormalDistribution,
                   Semiring, check_omega_e_axioms, decalage,
                   fold_as_nested_plus_q, frobenius, giry_algebra_fold,
                   giry_join, giry_map, giry_unit, mix_moments,
                   plus_alpha_beta, plus_q, scale_action, shift_action,
                   teichmueller)

__version__ = "0.1.0"
