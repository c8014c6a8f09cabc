"""Exception hierarchy.

Every domain failure raised by the library derives from
:class:`HilbertGeometryError`, which the CLI maps to exit code 1.
"""


class HilbertGeometryError(ValueError):
    """Base class for all domain errors."""

    @property
    def kind(self):
        return type(self).__name__


class InvalidCone(HilbertGeometryError):
    pass


class InvalidSpace(HilbertGeometryError):
    pass


class NotInterior(HilbertGeometryError):
    pass


class NumericalDegeneracy(HilbertGeometryError):
    pass


class CoincidentPoints(HilbertGeometryError):
    pass


class NotBiPositive(HilbertGeometryError):
    pass


class NotPositive(HilbertGeometryError):
    pass


class OriginNotInterior(HilbertGeometryError):
    pass


class InvalidBody(HilbertGeometryError):
    pass


class ChordDegenerate(HilbertGeometryError):
    pass


class OracleInconsistent(HilbertGeometryError):
    pass


class DependentDirection(HilbertGeometryError):
    pass


class RescaleDegenerate(HilbertGeometryError):
    pass


class NotSegmentPreserving(HilbertGeometryError):
    pass


class NotIsometry(HilbertGeometryError):
    pass


class StateVanishes(HilbertGeometryError):
    pass


class OverflowGuard(HilbertGeometryError):
    pass


class DimensionMismatch(HilbertGeometryError):
    pass


class MalformedInput(HilbertGeometryError):
    pass


class NotIsometricIsomorphism(HilbertGeometryError):
    pass


class InconsistentSign(HilbertGeometryError):
    pass


class NotAffineInLog(HilbertGeometryError):
    pass
