"""Exception hierarchy shared by every module."""


class PackingForgeError(Exception):
    """Base class for all errors raised by this library."""


# --- complex construction and validation -------------------------------

class NonManifoldError(PackingForgeError):
    """The face list does not describe a closed triangulated surface."""


class DuplicateFaceError(PackingForgeError):
    """Two faces span the same vertex triple."""


class MissingWeightError(PackingForgeError):
    """An edge of the complex has no inversive distance assigned."""


class WeightOutOfRangeError(PackingForgeError):
    """An inversive distance lies outside (-1, +inf)."""


# --- metric coordinates -------------------------------------------------

class UDomainViolationError(PackingForgeError):
    """A log-radius coordinate lies outside its geometry's domain."""


# --- per-triangle geometry ----------------------------------------------

class DegenerateTriangleError(PackingForgeError):
    """Edge lengths fail the strict triangle inequalities."""


class WeightConditionViolatedError(PackingForgeError):
    """Some face has a negative gamma value, so the constant extension
    of its angles is not defined."""


class InadmissibleFaceError(PackingForgeError):
    """A face is outside its admissible radius set and extension was
    not requested."""


# --- potential and solver -------------------------------------------------

class QuadratureFailureError(PackingForgeError):
    """Adaptive quadrature could not meet its tolerance."""


class LinearSolveFailureError(PackingForgeError):
    """The regularized Newton system could not be solved."""


class LineSearchStalledError(PackingForgeError):
    """Backtracking reduced the step below the stall threshold."""


class LeftDomainError(PackingForgeError):
    """An iterate left the open coordinate domain (hyperbolic u >= 0)."""


class SolverFailureError(PackingForgeError):
    """A solver run required by an audit did not converge."""


# --- document I/O ----------------------------------------------------------

class DocumentError(PackingForgeError):
    """Base class for packing-document problems."""


class ParseError(DocumentError):
    """The file is not well-formed JSON."""


class SchemaError(DocumentError):
    """The document structure does not match the schema."""


class ValidationError(DocumentError):
    """The document is structurally fine but semantically invalid."""
