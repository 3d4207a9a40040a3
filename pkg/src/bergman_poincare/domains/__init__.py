"""Model domains, their group actions, Bergman kernels, distances and transport."""
from .actions import Cocycle, SingularActionError, act, act_with_cocycle, cocycle
from .distance import hyperbolic_distance
from .kernels import (KernelValue, WeightError, ball_constant, bergman_kernel, check_weight, fock_kernel,
                      halfplane_constant, kernel_density, p_min, siegel_constant)
from .lattice import FockLattice, LatticeTranslation
from .points import (DomainMismatchError, DomainPoint, InvalidPointError, UnsupportedDomainError,
                     canonical_power, log_h)
from .transport import (Curve, TransportState, bundle_power, connection_form, constant_curve, holonomy,
                        parallel_transport)

__all__ = [
    "Cocycle", "Curve", "DomainMismatchError", "DomainPoint", "FockLattice", "InvalidPointError",
    "KernelValue", "LatticeTranslation", "SingularActionError", "TransportState", "UnsupportedDomainError",
    "WeightError", "act", "act_with_cocycle", "ball_constant", "bergman_kernel", "bundle_power",
    "canonical_power", "check_weight", "cocycle", "connection_form", "constant_curve", "fock_kernel",
    "halfplane_constant", "holonomy", "hyperbolic_distance", "kernel_density", "log_h", "p_min",
    "parallel_transport", "siegel_constant",
]
