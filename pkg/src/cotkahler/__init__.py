"""Diagonal natural Kaehler structures on the cotangent bundle of a space form.

Numerical construction of (G, J) from two coefficient functions a1(t) and
lambda(t), with closed-form connection and curvature and finite-difference
oracles that check every identity pointwise.
"""
from .exceptions import DomainError, InvalidCaseParams, SingularProfile
from .spaceform import SpaceForm, BaseGeometry, base_geometry_at, base_geometry_fd_oracle
from .profiles import (Case, CoefficientProfile, DerivedCoefficients, coefficients_at,
                       custom_profile, flat_identity_profile, make_case_profile,
                       profile_from_config, validate_profile, with_b1_offset, with_mu_offset)
from .lifts import (AdaptedVector, CotangentPoint, StructureBlocks, apply_J, cotangent_point,
                    energy_density, inner_product, phi_value, structure_blocks_at)
from .integrability import (bracket_check, dphi_numeric, nijenhuis_delta_delta_closed,
                            nijenhuis_numeric)
from .curvature import (connection_blocks_at, curvature_blocks_at, cn_at, einstein_factor,
                        einstein_residual_at, holomorphic_residual_at, koszul_connection_oracle,
                        ricci_blocks_at)
from .harness import ScenarioConfig, default_scenarios, run_scenario, sample_points

__version__ = "0.1.0"
