"""Exception hierarchy shared by every twlab module."""


class TwlabError(Exception):
    """Base class for all library errors."""


class DivergenceError(TwlabError, ArithmeticError):
    """An ODE solution left its admissible branch."""


class OutOfDomainError(TwlabError, ValueError):
    """Evaluation point outside the tabulated grid."""


class RangeError(TwlabError, ValueError):
    """Parameter outside its validated range."""


class ConfluentError(TwlabError, ValueError):
    """Spiked parameters too close for the determinant formula."""


class DepthError(TwlabError, ValueError):
    pass


class KindError(TwlabError, ValueError):
    """Operation requested on a model of the wrong kind."""


class MismatchError(TwlabError, ValueError):
    """Theorem id and model kind disagree."""


class TooLargeError(TwlabError, ValueError):
    pass


class EmptyError(TwlabError, ValueError):
    pass


class DomainError(TwlabError, ValueError):
    """A passage-time table does not cover the requested region."""
