"""Exception types shared across the verification modules."""


class OrbcheckError(Exception):
    """Base class for all errors raised by this package."""


# atlas
class NonUnitaryGenerator(OrbcheckError):
    pass


class ClosureExceedsCap(OrbcheckError):
    pass


class MultipleWitnesses(OrbcheckError):
    pass


class DuplicateGroupElement(OrbcheckError):
    pass


# frame bundle
class NonFaithfulGroup(OrbcheckError):
    pass


class BasepointOutsideDomain(OrbcheckError):
    pass


class NoApplicableChange(OrbcheckError):
    pass


# foliated geometry
class DegenerateOrbit(OrbcheckError):
    pass


class NonPositiveDeterminant(OrbcheckError):
    pass


class QuadratureTooCoarse(OrbcheckError):
    pass


# cohomology
class DuplicateVertexInFacet(OrbcheckError):
    pass


class NotPseudomanifold(OrbcheckError):
    pass


class NonOrientable(OrbcheckError):
    pass


class NoKahlerClass(OrbcheckError):
    pass


# scenarios / CLI
class ParseError(OrbcheckError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class UnknownPipeline(OrbcheckError):
    pass


class MissingSection(OrbcheckError):
    pass


class UnknownCatalogEntry(OrbcheckError):
    pass
