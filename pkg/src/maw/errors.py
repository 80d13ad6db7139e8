"""Exception types shared across the workbench.

Every error carries a stable machine-readable ``name`` (the class name) which
the command line reports on stderr.
"""


class MawError(Exception):
    """Base class for all domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class InvalidAtomName(MawError):
    pass


class InvalidGenerator(MawError):
    pass


class NotAHomomorphism(MawError):
    pass


class CompositionMismatch(MawError):
    pass


class NotADeleteMorphism(MawError):
    pass


class NotMeasurePreserving(MawError):
    def __init__(self, message, atom=None, expected=None, actual=None):
        super().__init__(message)
        self.atom = atom
        self.expected = expected
        self.actual = actual


class NotAProbability(MawError):
    pass


class NotAnAutomorphism(MawError):
    pass


class RealValuedRequired(MawError):
    pass


class UnsupportedExponent(MawError):
    pass


class NotAState(MawError):
    pass


class NotAModel(MawError):
    pass


class TargetMismatch(MawError):
    pass


class InconsistentFamily(MawError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class UnknownIndex(MawError):
    pass


class NotStochastic(MawError):
    pass
