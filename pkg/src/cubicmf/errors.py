"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class RegimeError(RuntimeError):
    """The couplings are in the wrong phase regime for the requested quantity."""


class DegenerateMaximizerError(RegimeError):
    """A maximizer with vanishing curvature was passed where a nondegenerate
    one is required (asymptotic expansions and sensitivities are invalid there)."""


class EmptyRestrictionError(ValueError):
    """An interval restriction contains no magnetization support points."""


class ResourceError(RuntimeError):
    """A requested computation exceeds the memory/time budget."""


class FitError(RuntimeError):
    """A regression cannot be performed on the supplied data."""
