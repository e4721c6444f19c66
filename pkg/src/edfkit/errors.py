"""Exception types shared across the package."""


class GroupStructureError(ValueError):
    """An explicit operation table fails one of the group axioms."""


class ParameterError(ValueError):
    """Construction or query parameters violate a documented precondition."""


class UsageError(ValueError):
    """An operation was applied to inputs outside its contract."""


class CapacityError(RuntimeError):
    """A configured exhaustive-enumeration bound would be exceeded."""


class ExportError(ValueError):
    """A family cannot be exported in the requested code format."""


class IntegrityError(ValueError):
    """A stored catalog entry fails re-verification on load."""
