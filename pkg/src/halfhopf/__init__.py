"""Half Dirichlet energy on the circle: inner variations, fractional Hopf
differentials, commutators and Moebius conservation laws."""

from .spectral import (AliasingError, CircleFunction, SchemaError, fit_samples, from_samples,
                       pointwise_dot, random_trig, to_samples)
from .operators import (DiskPoint, derivative, dz_extension_eval, fractional_laplacian,
                        freq_projection, harmonic_extension_eval, hilbert_transform,
                        radial_derivative_boundary)
from .energy import NormReport, energy_gagliardo, energy_spectral, sobolev_norm, wiener_norm
from .hopf import (HopfReport, conformality_defect, fractional_hopf_coeffs,
                   fractional_hopf_from_variation, hopf_differential_at)
from .variation import (ResidualReport, balancing_defect, directional_energy_derivative,
                        inner_variation, noether_residual, pair_with_field, pohozaev_residual,
                        variation_continuity_probe)
from .commutator import (EstimateProbe, commutator_apply, d_s, fractional_divergence_pairing,
                         kernel_coeffs, probe_lemma_A2, probe_lemma_A3)
from .mobius import MobiusMap, boundary_trace, compose, dilation_field, naturality_defect, trace_jacobian
from .flows import (FlowConfig, FlowTrajectory, blaschke_trace, run_flow, scaling_family,
                    sphere_project)

__version__ = "0.1.0"
