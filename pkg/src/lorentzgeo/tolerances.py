"""Default tolerances, shared across modules and echoed into reports."""

DEFAULT_TOL_TAU = 1e-7     # relative: scaled by (1 + tau)
DEFAULT_TOL_ANGLE = 1e-6   # absolute, hyperbolic angles
DEFAULT_GEO_TOL = 1e-7     # relative: chains within this of tau are geodesics
DEFAULT_AXIOM_TOL = 1e-9   # relative: slack for the matrix axioms
DEFAULT_CERT_TOL = 1e-9    # relative: curvature-certification margin floor


def scaled(tol: float, value) -> float:
    """Tolerance scaled by the magnitude of the value compared."""
    return tol * (1.0 + abs(value))
