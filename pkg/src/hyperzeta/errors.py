"""Exception hierarchy shared across the package."""


class HyperzetaError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HyperzetaError):
    """Malformed input file (JSON syntax or schema violation)."""


class NonSquare(HyperzetaError):
    """Determinant requested for a non-square matrix."""


class NonUnitConstantTerm(HyperzetaError):
    """Series inversion needs constant term exactly 1."""


class OddPowerOfS(HyperzetaError):
    """A hypergraph-level polynomial contained an odd power of s.

    The theory forbids this, so it always signals a computation bug.
    """


class PreconditionFailed(HyperzetaError):
    """A zeta pipeline was invoked on a hypergraph failing its hypotheses."""


class ConflictingVoltage(HyperzetaError):
    """Voltages given for both e and its inverse, and they disagree."""


class BadPermutation(HyperzetaError):
    """A supplied one-line image list is not a bijection of [k]."""


class BadVoltageKey(HyperzetaError):
    """A voltage file references a directed edge that does not exist."""


class GroupTooLarge(HyperzetaError):
    """Group closure exceeded the configured order cap."""


class GroupMismatch(HyperzetaError):
    """A builtin irrep catalog was requested for a non-isomorphic group."""


class NonIntegerMultiplicity(HyperzetaError):
    """A character inner product failed to round to an integer."""


class CatalogIncomplete(HyperzetaError):
    """An irrep catalog failed its completeness checks."""


class NotUnitary(HyperzetaError):
    """A pipeline requiring a unitary representation got a non-unitary one."""


class EmptyHyperedge(HyperzetaError):
    """A derived E-part vertex had no neighbours; signals a bug upstream."""


class CoverInvalid(HyperzetaError):
    """The covering hypergraph fails the zeta-pipeline hypotheses."""


class ExplosionGuard(HyperzetaError):
    """Cycle enumeration exceeded the configured class-count cap."""


class IncompleteClasses(HyperzetaError):
    """Euler product requested beyond the order the class list covers."""
