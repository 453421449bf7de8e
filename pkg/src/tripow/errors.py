"""Exception hierarchy shared by all tripow modules."""


class TripowError(ValueError):
    pass


# series

class SeriesError(TripowError):
    pass


class OrderMismatchError(SeriesError):
    pass


class NonInvertibleSeriesError(SeriesError):
    """Multiplicative inverse requested for a series with zero constant term."""


class CompositionDomainError(SeriesError):
    """Inner series of a composition has a nonzero constant term."""


class NotCompositionallyInvertibleError(SeriesError):
    pass


class TruncationExceededError(SeriesError):
    pass


class DegenerateHError(SeriesError):
    pass


class NonUnitBaseError(SeriesError):
    pass


# bell / matrix / presets

class BellIndexError(TripowError):
    pass


class InvalidSpecError(TripowError):
    pass


class InvalidWeightsError(InvalidSpecError):
    pass


class SingularMatrixError(TripowError):
    pass


class NonRationalPowerError(TripowError):
    pass


class PresetError(TripowError):
    pass


# cli

class ParseError(TripowError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ElaborationError(TripowError):
    pass
