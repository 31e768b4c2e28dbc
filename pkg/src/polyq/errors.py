"""Exception types shared across the package."""


class GeometryError(ValueError):
    """A well-formed request that has no answer for the given object.

    Examples: asking for the volume of an unbounded polyhedron, or the
    h-vector of a polytope that is not simplicial.
    """


class CapExceeded(GeometryError):
    """An enumeration would exceed its configured size limit."""
