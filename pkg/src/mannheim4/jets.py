"""Truncated Taylor arithmetic (jets).

A :class:`Jet` stores the normalized Taylor coefficients ``c[k] = f^(k)(x0)/k!``
of a scalar function around an expansion point, truncated at some order.  The
coefficient array has shape ``(order + 1, *batch)`` so one Jet can carry many
expansion points (or the four coordinates of a curve) at once.

Arithmetic between jets of different order truncates to the lower order.
"""

import math

import numpy as np

from .errors import DomainError

DEFAULT_ORDER = 4


def _as_coeffs(x):
    return np.asarray(x, dtype=float)


class Jet:
    __slots__ = ("c",)
    __array_priority__ = 100

    def __init__(self, coeffs):
        self.c = _as_coeffs(coeffs)
        if self.c.ndim == 0:
            self.c = self.c[None]

    # -- construction ------------------------------------------------------

    @classmethod
    def constant(cls, value, order=DEFAULT_ORDER):
        value = _as_coeffs(value)
        c = np.zeros((order + 1,) + value.shape)
        c[0] = value
        return cls(c)

    @classmethod
    def variable(cls, value, order=DEFAULT_ORDER):
        """The identity function expanded at ``value``."""
        value = _as_coeffs(value)
        c = np.zeros((order + 1,) + value.shape)
        c[0] = value
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def from_derivatives(cls, derivs):
        derivs = _as_coeffs(derivs)
        fact = np.array([math.factorial(k) for k in range(derivs.shape[0])], dtype=float)
        return cls(derivs / fact.reshape((-1,) + (1,) * (derivs.ndim - 1)))

    # -- views -------------------------------------------------------------

    @property
    def order(self):
        return self.c.shape[0] - 1

    @property
    def shape(self):
        return self.c.shape[1:]

    @property
    def value(self):
        return self.c[0]

    @property
    def derivs(self):
        """Derivatives ``d0..d_order`` stacked on the leading axis."""
        fact = np.array([math.factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.c * fact.reshape((-1,) + (1,) * (self.c.ndim - 1))

    def d(self, k):
        return self.c[k] * math.factorial(k)

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Jet(self.c[(slice(None),) + idx])

    def __len__(self):
        return self.shape[0]

    def __repr__(self):
        return f"Jet(derivs={self.derivs.tolist()})"

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.c[: order + 1])

    def derivative(self):
        """Jet of the first derivative; the order drops by one."""
        if self.order == 0:
            raise ValueError("order-0 jet has no derivative information")
        k = np.arange(1, self.order + 1, dtype=float)
        return Jet(self.c[1:] * k.reshape((-1,) + (1,) * (self.c.ndim - 1)))

    def integral(self, constant=0.0):
        """Antiderivative jet with the given value; the order rises by one."""
        k = np.arange(1, self.order + 2, dtype=float)
        head = np.broadcast_to(_as_coeffs(constant), self.shape)[None]
        tail = self.c / k.reshape((-1,) + (1,) * (self.c.ndim - 1))
        return Jet(np.concatenate([head, tail]))

    def map_linear(self, fn):
        """Apply a linear map to every coefficient slice."""
        return Jet(np.stack([fn(ck) for ck in self.c]))

    def all_finite(self):
        return bool(np.all(np.isfinite(self.c)))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Jet):
            shape = self.c.shape[:1] + np.broadcast_shapes(self.shape, np.shape(other))
            c = np.array(np.broadcast_to(self.c, shape))
            c[0] = c[0] + other
            return Jet(c)
        n = min(self.order, other.order)
        return Jet(self.c[: n + 1] + other.c[: n + 1])

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.c * _as_coeffs(other))
        n = min(self.order, other.order)
        a, b = self.c, other.c
        out = np.zeros((n + 1,) + np.broadcast_shapes(self.shape, other.shape))
        for k in range(n + 1):
            for j in range(k + 1):
                out[k] += a[j] * b[k - j]
        return Jet(out)

    __rmul__ = __mul__

    def reciprocal(self):
        a = self.c
        if np.any(a[0] == 0):
            raise DomainError("division by zero")
        out = np.zeros_like(a)
        out[0] = 1.0 / a[0]
        for k in range(1, self.order + 1):
            acc = np.zeros_like(a[0])
            for j in range(1, k + 1):
                acc = acc + a[j] * out[k - j]
            out[k] = -acc / a[0]
        return Jet(out)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            other = _as_coeffs(other)
            if np.any(other == 0):
                raise DomainError("division by zero")
            return Jet(self.c / other)
        n = min(self.order, other.order)
        a, b = self.c[: n + 1], other.c[: n + 1]
        if np.any(b[0] == 0):
            raise DomainError("division by zero")
        out = np.zeros((n + 1,) + np.broadcast_shapes(self.shape, other.shape))
        for k in range(n + 1):
            acc = a[k].copy()
            for j in range(1, k + 1):
                acc = acc - b[j] * out[k - j]
            out[k] = acc / b[0]
        return Jet(out)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)):
            if p == 0:
                return Jet.constant(np.ones(self.shape), self.order)
            if p < 0:
                return (self ** (-p)).reciprocal()
            result, base, e = None, self, int(p)
            while e:
                if e & 1:
                    result = base if result is None else result * base
                e >>= 1
                if e:
                    base = base * base
            return result
        return self.real_power(float(p))

    def real_power(self, r):
        """``self ** r`` for real ``r``; needs a positive value."""
        a = self.c
        if np.any(a[0] <= 0):
            raise DomainError(f"non-positive base for real power {r}")
        out = np.zeros_like(a)
        out[0] = a[0] ** r
        for k in range(1, self.order + 1):
            acc = np.zeros_like(a[0])
            for j in range(1, k + 1):
                acc = acc + (r * j - (k - j)) * a[j] * out[k - j]
            out[k] = acc / (k * a[0])
        return Jet(out)


# -- elementary functions ---------------------------------------------------

def exp(x):
    a = x.c
    out = np.zeros_like(a)
    out[0] = np.exp(a[0])
    for k in range(1, x.order + 1):
        acc = np.zeros_like(a[0])
        for j in range(1, k + 1):
            acc = acc + j * a[j] * out[k - j]
        out[k] = acc / k
    return Jet(out)


def _trig_pair(x, hyperbolic):
    a = x.c
    s = np.zeros_like(a)
    c = np.zeros_like(a)
    if hyperbolic:
        s[0], c[0] = np.sinh(a[0]), np.cosh(a[0])
    else:
        s[0], c[0] = np.sin(a[0]), np.cos(a[0])
    sign = 1.0 if hyperbolic else -1.0
    for k in range(1, x.order + 1):
        acc_s = np.zeros_like(a[0])
        acc_c = np.zeros_like(a[0])
        for j in range(1, k + 1):
            acc_s = acc_s + j * a[j] * c[k - j]
            acc_c = acc_c + j * a[j] * s[k - j]
        s[k] = acc_s / k
        c[k] = sign * acc_c / k
    return Jet(s), Jet(c)


def sin(x):
    return _trig_pair(x, False)[0]


def cos(x):
    return _trig_pair(x, False)[1]


def sinh(x):
    return _trig_pair(x, True)[0]


def cosh(x):
    return _trig_pair(x, True)[1]


def sqrt(x):
    a = x.c
    if np.any(a[0] < 0):
        raise DomainError("square root of a negative value")
    zero = a[0] == 0
    if x.order > 0 and np.any(zero & np.any(a[1:] != 0, axis=0)):
        raise DomainError("square root is not differentiable at 0")
    out = np.zeros_like(a)
    out[0] = np.sqrt(a[0])
    denom = np.where(zero, 1.0, 2.0 * out[0])
    for k in range(1, x.order + 1):
        acc = a[k].copy()
        for j in range(1, k):
            acc = acc - out[j] * out[k - j]
        out[k] = np.where(zero, 0.0, acc / denom)
    return Jet(out)


def compose(outer, inner):
    """Jet of ``F(G(t))`` from the expansion of F at G(t0) and the jet of G.

    ``outer`` holds coefficients in powers of ``(s - G(t0))``; only the
    non-constant part of ``inner`` is used.
    """
    n = min(outer.order, inner.order)
    delta = inner.c[: n + 1].copy()
    delta[0] = 0.0
    dj = Jet(delta)
    extra = outer.c.ndim - delta.ndim
    if extra > 0:
        dj = Jet(delta.reshape(delta.shape + (1,) * extra))
    out = Jet.constant(outer.c[n], n)
    for k in range(n - 1, -1, -1):
        out = out * dj + outer.c[k]
    return out


def contract(jet, weights, axis=-1):
    """Weighted sum of a jet over one batch axis (a linear operation)."""
    w = np.asarray(weights, dtype=float)
    ax = axis if axis < 0 else axis + 1
    return Jet(np.sum(jet.c * w, axis=ax))


def minkowski_inner(u, v):
    """Lorentzian inner product of two vector jets (last batch axis = 4)."""
    from .lorentz import METRIC
    return contract(u * v, METRIC)


def stack(jets, axis=-1):
    n = min(j.order for j in jets)
    ax = axis if axis < 0 else axis + 1
    return Jet(np.stack([j.c[: n + 1] for j in jets], axis=ax))
