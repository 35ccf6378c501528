"""divfree: construction of (nearly) solenoidal velocity fields that satisfy
approximate immersed velocity boundary conditions.

A given velocity field is extended into a regular box through a
zero-velocity margin, its vorticity is taken, and the kinematic vector
Poisson problem laplacian(u) = -curl(vorticity) is re-solved with periodic
(Fourier-spectral) or homogeneous Dirichlet (PSOR) outer boundary
conditions.  The periodic route is an exact discrete projection onto
divergence-free fields; the Dirichlet route confines the remaining
divergence to the discarded margin.
"""

from .cases import (
    ChandrasekharReidParams,
    case_setup,
    chandrasekhar_reid_field,
    characteristic_phi,
    library_fields,
    moving_box_field,
    phi_prime,
)
from .diagnostics import (
    DivergenceReport,
    divergence_report,
    harmonicity_check,
    refinement_study,
)
from .diffops import StencilSpec, curl, curl_of_vorticity, divergence, laplacian
from .grid import (
    FLUID,
    GIVEN,
    MARGIN,
    SOLID,
    Box,
    ConfigurationError,
    GeometryError,
    GridSpec,
    RegionMask,
    ScalarField,
    VectorField,
    build_mask,
    embed,
    extract,
)
from .pipeline import (
    BcErrorRow,
    PipelineResult,
    SolveConfig,
    construct_solenoidal,
    immersed_bc_error,
)
from .sor import ConvergenceError, SorConfig, solve_poisson_dirichlet, solve_velocity_dirichlet
from .spectral import (
    BackendError,
    SpectralField,
    forward_dft,
    inverse_dft,
    solve_poisson_periodic,
    spectral_curl,
    spectral_divergence,
    wavenumbers,
)

__version__ = "0.1.0"

__all__ = [
    "Box",
    "BackendError",
    "BcErrorRow",
    "ChandrasekharReidParams",
    "ConfigurationError",
    "ConvergenceError",
    "DivergenceReport",
    "FLUID",
    "GIVEN",
    "GeometryError",
    "GridSpec",
    "MARGIN",
    "PipelineResult",
    "RegionMask",
    "SOLID",
    "ScalarField",
    "SolveConfig",
    "SorConfig",
    "SpectralField",
    "StencilSpec",
    "VectorField",
    "build_mask",
    "case_setup",
    "chandrasekhar_reid_field",
    "characteristic_phi",
    "construct_solenoidal",
    "curl",
    "curl_of_vorticity",
    "divergence",
    "divergence_report",
    "embed",
    "extract",
    "forward_dft",
    "harmonicity_check",
    "immersed_bc_error",
    "inverse_dft",
    "laplacian",
    "library_fields",
    "moving_box_field",
    "phi_prime",
    "refinement_study",
    "solve_poisson_dirichlet",
    "solve_poisson_periodic",
    "solve_velocity_dirichlet",
    "spectral_curl",
    "spectral_divergence",
    "wavenumbers",
]
