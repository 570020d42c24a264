"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`GeometryError`
so callers (and the CLI) can separate "could not compute" from programming bugs.
"""


class GeometryError(Exception):
    """Base class for all library errors."""


# -- expressions ------------------------------------------------------------

class ExprSyntaxError(GeometryError):
    def __init__(self, position, message):
        self.position = position
        self.message = message
        super().__init__(f"syntax error at position {position}: {message}")


class UnknownIdentifier(GeometryError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        super().__init__(f"unknown identifier {name!r}")


class DomainError(GeometryError):
    """Raised when an expression is evaluated outside its real domain."""

    def __init__(self, message, subexpr=None):
        self.subexpr = subexpr
        super().__init__(message if subexpr is None else f"{message} in {subexpr}")


# -- curves -----------------------------------------------------------------

class OutOfDomain(GeometryError):
    def __init__(self, t, domain):
        self.t = t
        self.domain = domain
        super().__init__(f"parameter {t!r} outside domain [{domain[0]}, {domain[1]}]")


class QuadratureFailure(GeometryError):
    pass


class NearNullTangent(GeometryError):
    def __init__(self, t, speed):
        self.t = t
        self.speed = speed
        super().__init__(f"near-null tangent at t={t:.17g} (speed {speed:.3g})")


# -- frames -----------------------------------------------------------------

class NotUnitSpeed(GeometryError):
    def __init__(self, t, speed):
        self.t = t
        self.speed = speed
        super().__init__(f"curve is not unit speed at t={t:.17g} (speed {speed:.17g})")


class NotTimelike(GeometryError):
    def __init__(self, t):
        self.t = t
        super().__init__(f"tangent is not timelike at t={t:.17g}")


class VanishingCurvature(GeometryError):
    def __init__(self, order, t, value):
        self.order = order
        self.t = t
        self.value = value
        super().__init__(f"curvature k{order} vanishes at t={t:.17g} (|k{order}|={value:.3g})")


# -- Mannheim pairs ---------------------------------------------------------

class DegenerateBeta(GeometryError):
    def __init__(self, t):
        self.t = t
        super().__init__(f"k1^2 - k2^2 vanishes at t={t:.17g}; beta undefined")


class SingularMateSpeed(GeometryError):
    def __init__(self, t=None):
        self.t = t
        where = "" if t is None else f" at t={t:.17g}"
        super().__init__(f"1 + beta*k1 vanishes{where}")


class MateNotTimelike(GeometryError):
    pass


# -- generator --------------------------------------------------------------

class InvalidDomain(GeometryError):
    def __init__(self, s, reason):
        self.s = s
        self.reason = reason
        super().__init__(f"invalid generator input at s={s:.17g}: {reason}")


class NonPositiveF(GeometryError):
    def __init__(self, s, value):
        self.s = s
        self.value = value
        super().__init__(f"f(s) is not positive at s={s:.17g} (bracket {value:.6g})")


class NegativeK2Squared(GeometryError):
    def __init__(self, s, value):
        self.s = s
        self.value = value
        super().__init__(f"k2^2 is negative at s={s:.17g} ({value:.6g})")
