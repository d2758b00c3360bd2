"""rsuncert: position/wavevector uncertainty relation Dr*Dk >= 5/2 for
electromagnetic fields in the Riemann-Silberstein formulation.

Variance conventions, the c = 1 unit system and the symmetric Fourier
normalization are documented in rsuncert.kspace and rsuncert.moments.
"""

from .analytic_fields import (
    SaturatingFieldSpec,
    boost,
    light_cone_vars,
    photon_wavefunctions,
    rotate,
    saturating_field_t0,
    saturating_rs_field,
    scalar_generator,
    simplest_field,
)
from .eigensolver import (
    RadialProblem,
    RadialSpectrum,
    analytic_eigenfunction,
    rayleigh_quotient,
    solve_radial,
)
from .errors import (
    AxisSingularityError,
    DegenerateFieldError,
    GridMismatchError,
    ResolutionError,
    RsfFormatError,
    SingularAmplitudeError,
    TruncationError,
)
from .kspace import (
    FieldGrid,
    Grid3D,
    HelicityAmplitudePair,
    PolynomialGaussianAmplitude,
    RadialProfileAmplitude,
    SampledAmplitude,
    fourier_to_kspace,
    fourier_to_position,
    norm,
    polarization,
    saturating_amplitudes,
    simplest_field_amplitudes,
    synthesize_kspace,
)
from .moments import (
    BOUND_EM,
    CylindricalRule,
    VarianceReport,
    massless_bound,
    uncertainty_product,
    variance_kspace,
    variance_kspace_from_amplitudes,
    variance_position,
    variance_position_from_amplitudes,
)
from .propagator import Trajectory, evolve, spreading_trajectory
from .rsfio import read_rsf, write_rsf
from .specfun import dawson, erfi, laguerre_general

__version__ = "0.1.0"
