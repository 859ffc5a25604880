"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`FracStabError`, so callers (the CLI in particular) can separate
input problems from bugs.
"""


class FracStabError(Exception):
    pass


class NonFinite(FracStabError, ValueError):
    pass


class ShapeMismatch(FracStabError, ValueError):
    pass


class NotHermitian(FracStabError, ValueError):
    pass


class NoConvergence(FracStabError, ArithmeticError):
    pass


class NotHurwitz(FracStabError, ArithmeticError):
    pass


class BoundsViolation(FracStabError, ValueError):
    pass


class VertexExplosion(FracStabError, OverflowError):
    pass


class GridExplosion(FracStabError, OverflowError):
    pass


class OrderOutOfRange(FracStabError, ValueError):
    pass


class NotPointStable(FracStabError, ArithmeticError):
    pass


class NotPositiveDefinite(FracStabError, ValueError):
    pass


class SpectrumFailure(FracStabError, ArithmeticError):
    pass
