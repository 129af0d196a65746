"""Exception hierarchy shared across the package."""


class KorobovError(Exception):
    """Base class for all package-specific failures."""


class SummationCapError(KorobovError):
    """A one-dimensional series could not be certified below the requested
    tolerance within the hard cap on summed terms.

    Raised instead of returning a silently inaccurate value; signals
    pathological parameters (omega very close to 1, tiny decay weights).
    """


class OracleInfeasibleError(KorobovError):
    """The dual-lattice enumeration region is too large for the oracle."""


class CapExceededError(KorobovError):
    """An explicit size cap was exceeded (search space, pair count, or a
    prime scan that found no feasible modulus below its cap)."""
