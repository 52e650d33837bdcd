"""Distributional-chaos numerics for weighted translation operators on Z and Z x Z_m."""

__version__ = '0.1.0'

from .errors import (ChaosError, ConfigError, DomainError, GroupMismatchError,
                     InvariantViolationError, NumericRangeError, PreconditionError)
from .group import GroupElement, GroupSpec, compose, inverse, measure, power, translate_set
from .weights import (Constant, CubicRuns, MirrorProduct, Periodic, Table, TwoSided,
                      WeightSpec, inverse_weight, invertibility_check, run_length_profile)
from .numerics import LogValue
from .vector import SparseVector, chi
from .operator import WeightedTranslation, bilateral_shift, multiply
from .density import (DensityEstimate, DistributionalProfile, IndexSet, density_estimate,
                      distributional_function, pair_profile, scrambled_pair_verdict)
from .dccw import (SynthesisPlan, best_interval, build_synthesis_plan, condition_i_diagnostic,
                   condition_ii_diagnostic, dccw_check, synthesize_vector, verify_dcc)
from .div import (EquivalenceWitness, IrregularityEvidence, cone_combine, equivalence_member,
                  irregularity_evidence, mirror_two_component_check, modulus_check,
                  split_vector)
