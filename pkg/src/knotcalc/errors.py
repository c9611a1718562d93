"""Exception hierarchy shared by all knotcalc modules."""


class KnotError(Exception):
    """Base class for all errors raised by knotcalc."""


# ---------------------------------------------------------------- polynomials

class FractionalExponent(KnotError):
    """Evaluation requested on a polynomial with non-integer exponents."""


class NonInvertibleImage(KnotError):
    """A substitution needs the inverse of an image that is not a unit."""


class ResidualImaginaryPart(KnotError):
    """A result expected to be real has nonzero imaginary coefficients."""


# ------------------------------------------------------------------- diagrams

class DiagramSyntaxError(KnotError):
    """Malformed PD / braid / plat input text."""


class DanglingArc(DiagramSyntaxError):
    """An arc label occurs an odd number of times (or more than twice)."""


class InconsistentOrientation(KnotError):
    """No consistent orientation of all strands exists."""


class SameComponent(KnotError):
    """Linking number requested for a component with itself."""


class UnknownComponent(KnotError):
    """Component identifier not present in the diagram."""


class PatternNotFound(KnotError):
    """The local pattern required by a Reidemeister move is absent."""


class BadSite(KnotError):
    """A skein operation was pointed at an invalid crossing site."""


# -------------------------------------------------------------- presentations

class StrandMismatch(KnotError):
    """Tangle composition or closure with incompatible strand counts."""


class InterfaceMismatch(KnotError):
    """Tangle substitution into a box with a non-matching interface."""


class ExtraComponents(KnotError):
    """A plat closure produced circles besides the wedge spine."""


class NotStandardized(KnotError):
    """Operation requires a standard-mode plat presentation."""


class DisconnectedBoundary(KnotError):
    """The banded spine's boundary is a link, not a knot."""


# ---------------------------------------------------------------------- skein

class TooLarge(KnotError):
    """Crossing count exceeds the state-sum oracle cap."""


class ResourceLimit(KnotError):
    """Crossing count exceeds the configured cap of a recursive engine."""


# -------------------------------------------------------------------- seifert

class MultiComponent(KnotError):
    """A knot-only operation was applied to a multi-component link."""


class DimensionMismatch(KnotError):
    """Matrix enlargement with a vector of the wrong length."""
