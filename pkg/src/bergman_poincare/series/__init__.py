"""Truncated Poincare series, averaged kernels, isotropic states and non-vanishing scans."""
from .engine import CHUNK, default_workers, map_chunks, set_default_workers
from .isotropic import (HOLONOMY_GATE, AveragedKernelOnAxis, BohrSommerfeldError, ConstantFit, InconsistencyError,
                        IsotropicState, check_bohr_sommerfeld, fit_constant, geodesic_norm_squared, geodesic_state,
                        isotropic_quadrature, isotropic_state_quadrature, katok_constant, point_density,
                        point_state)
from .poincare import (SignPolicy, averaged_kernel, fock_average, minus_identity_sign, point_series, sign_policy,
                       theta_basis, theta_basis_kernel)
from .relative import (CosetSet, PreconditionError, axis_reversing_element, coset_set, relative_series_hyperbolic,
                       relative_series_loxodromic, relative_series_torus, unit_eigenvector)
from .scan import (INCONCLUSIVE, NONVANISHING, ZERO, ScanReport, ScanRow, halfplane_grid, nonvanishing_scan,
                   point_factory, relative_factory, stability)
from .truncated import CANCELLED, UNCONVERGED, Shell, TruncatedSum, tail_from_shells

__all__ = [
    "CHUNK", "default_workers", "map_chunks", "set_default_workers", "HOLONOMY_GATE", "AveragedKernelOnAxis",
    "BohrSommerfeldError", "ConstantFit", "InconsistencyError", "IsotropicState", "check_bohr_sommerfeld",
    "fit_constant", "geodesic_norm_squared", "geodesic_state", "isotropic_quadrature",
    "isotropic_state_quadrature", "katok_constant", "point_density", "point_state", "SignPolicy",
    "averaged_kernel", "fock_average", "minus_identity_sign", "point_series", "sign_policy", "theta_basis",
    "theta_basis_kernel", "CosetSet", "PreconditionError", "axis_reversing_element", "coset_set",
    "relative_series_hyperbolic", "relative_series_loxodromic", "relative_series_torus", "unit_eigenvector",
    "INCONCLUSIVE", "NONVANISHING", "ZERO", "ScanReport", "ScanRow", "halfplane_grid", "nonvanishing_scan",
    "point_factory", "relative_factory", "stability", "CANCELLED", "UNCONVERGED", "Shell", "TruncatedSum",
    "tail_from_shells",
]
