"""Exception types raised across the package."""


class ACLandauError(Exception):
    """Base class for all package errors."""


class DegenerateCoupling(ACLandauError):
    """mu * rho0 == 0: no cyclotron frequency, use the free configuration."""


class UnsupportedKind(ACLandauError):
    """Operation needs an electric field but the configuration has none."""


class NotHarmonic(ACLandauError):
    """Gauge function with a nonzero Laplacian."""


class BoundaryContamination(ACLandauError):
    """Test function support reaches the Dirichlet boundary."""


class ConvergenceFailure(ACLandauError):
    """Iterative eigensolver hit its iteration cap.

    ``residuals`` holds the best residual norms reached, ``eigenvalues`` the
    matching Ritz values.
    """

    def __init__(self, message, eigenvalues=None, residuals=None, iterations=0):
        super().__init__(message)
        self.eigenvalues = eigenvalues
        self.residuals = residuals
        self.iterations = iterations


class ClusteringAmbiguous(ACLandauError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ZeroField(ACLandauError):
    """Level/degeneracy analysis requested for a zero effective field."""


class NeedEigenvectors(ACLandauError):
    pass


class DegenerateArea(ACLandauError):
    pass
