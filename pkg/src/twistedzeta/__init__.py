"""Twisted Ruelle/Selberg zeta functions on hyperbolic surfaces: geodesic
length spectra, Fox-calculus group cohomology, and torsion predictions."""

from .cohomology import (CohomologyDims, TwistedCochainComplex, build_complex,
                         cohomology_dims, m_from_cohomology)
from .errors import (BudgetExceeded, ChainConditionViolated, ConstructionFailed,
                     EmptySpectrumWarning, IllConditioned, InputError, NotAcyclic,
                     NotApplicable, NotHyperbolic, OutsideConvergence,
                     TwistedZetaError)
from .exactfield import ExactReal
from .fuchsian import (EnumerationOptions, GeodesicClass, Isometry, LengthSpectrum,
                       SurfaceGroup, bolza_group, enumerate_spectrum,
                       surface_group_regular_polygon, translation_length)
from .predictions import (PredictionReport, adjoint_dims, consistency_audit,
                          generic_prediction, tau_jordan_dims, torsion,
                          torsion_of_fiber_image, trivial_rep_dims,
                          vanishing_order_from_dims)
from .representation import (RepClassification, Representation, adjoint_rep,
                             centralizer_dimension, classify, clock_shift_pair,
                             dual_rep, evaluate, geodesic_lift_holonomy, is_regular,
                             sl2_lift_rep, trivial_rep, unitary_generic_rep)
from .words import (GroupRingElement, Presentation, Word, cyclic_reduce,
                    fox_derivative, fox_identity_defect, free_reduce, invert,
                    multiply, project_to_sigma, surface_presentation,
                    unit_tangent_presentation, word_from_string, word_to_string)
from .zeta import (HolonomyAssignment, IdentityReport, ZetaValue,
                   dynamical_determinant, factoring_holonomy, ruelle_zeta,
                   selberg_zeta, sl2_lift_tensor_holonomy, verify_identities)

__version__ = "0.1.0"
