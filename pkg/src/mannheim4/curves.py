"""Parametric curves in Minkowski space-time and their exact derivatives.

A curve is anything with a ``domain`` and a ``jet(t, order)`` method returning
the coordinate jets as one :class:`~mannheim4.jets.Jet` whose last batch axis
has length 4.  ``t`` may be a scalar or a 1-d array.
"""

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from . import jets
from .errors import NearNullTangent, OutOfDomain, QuadratureFailure
from .expr import eval_jet, parse_expr, to_text
from .jets import Jet
from .lorentz import METRIC
from .quadrature import DEFAULT_RTOL, cumulative, integrate, integrate_pairs

PARSED = "parsed"
GENERATED = "generated"
MATE_OF = "mate_of"
UNIT_SPEED = "unit_speed"
TRANSFORMED = "transformed"

NEAR_NULL_SPEED = 1e-8
DEFAULT_TABLE_NODES = 1024


class CurveModel:
    """Base class; subclasses implement ``_jet`` on 1-d parameter arrays."""

    provenance = None

    def __init__(self, domain):
        lo, hi = float(domain[0]), float(domain[1])
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"bad domain {domain!r}")
        self.domain = (lo, hi)

    def check_domain(self, t):
        lo, hi = self.domain
        slack = 1e-12 * max(1.0, hi - lo, abs(lo), abs(hi))
        t = np.asarray(t, dtype=float)
        bad = ~((t >= lo - slack) & (t <= hi + slack))
        if np.any(bad):
            raise OutOfDomain(float(t[bad][0]) if t.ndim else float(t), self.domain)
        return np.clip(t, lo, hi)

    def jet(self, t, order=jets.DEFAULT_ORDER):
        t = self.check_domain(t)
        scalar = t.ndim == 0
        out = self._jet(np.atleast_1d(t), order)
        return out[0] if scalar else out

    def _jet(self, t, order):
        raise NotImplementedError

    def point(self, t):
        return self.jet(t, 0).value

    def velocity(self, t):
        return self.jet(t, 1).d(1)

    def grid(self, n):
        return np.linspace(self.domain[0], self.domain[1], n)


class ParsedCurve(CurveModel):
    """Curve whose four coordinates are expressions in ``s``."""

    provenance = PARSED

    def __init__(self, exprs, domain):
        super().__init__(domain)
        if len(exprs) != 4:
            raise ValueError("a curve needs exactly four coordinate expressions")
        self.exprs = tuple(parse_expr(e) if isinstance(e, str) else e for e in exprs)

    @classmethod
    def from_strings(cls, texts, domain):
        return cls([parse_expr(t) for t in texts], domain)

    def texts(self):
        return [to_text(e) for e in self.exprs]

    def _jet(self, t, order):
        return jets.stack([eval_jet(e, t, order) for e in self.exprs])


class TransformedCurve(CurveModel):
    """Image ``L c(t) + shift`` of a curve under a fixed affine map."""

    provenance = TRANSFORMED

    def __init__(self, base, matrix, shift=None):
        super().__init__(base.domain)
        self.base = base
        self.matrix = np.asarray(matrix, dtype=float)
        self.shift = np.zeros(4) if shift is None else np.asarray(shift, dtype=float)

    def _jet(self, t, order):
        j = self.base.jet(t, order)
        out = j.map_linear(lambda ck: ck @ self.matrix.T)
        return out + self.shift


def curve_jet(c, t, order=jets.DEFAULT_ORDER):
    """Four coordinate jets of ``c`` at ``t``."""
    j = c.jet(t, order)
    return tuple(j[..., i] for i in range(4))


def _speed_values(c, t):
    v = c.jet(t, 1).d(1)
    return np.sqrt(np.abs(np.sum(v * v * METRIC, axis=-1)))


def speed(c, t):
    """Lorentzian norm of the velocity ``c'(t)``."""
    out = _speed_values(c, t)
    return float(out) if np.ndim(out) == 0 else out


def arc_length(c, a, b, rtol=DEFAULT_RTOL):
    """Integral of the speed over ``[a, b]``."""
    c.check_domain(np.array([a, b]))
    return float(integrate(lambda x: _speed_values(c, x), a, b, rtol))


def _timelike_speed_jet(vel):
    """Jet of sqrt(|<v, v>|) for a velocity jet whose causal sign is fixed."""
    q = jets.minkowski_inner(vel, vel)
    sign = np.where(q.value < 0, -1.0, 1.0)
    return jets.sqrt(q * sign)


class UnitSpeedCurve(CurveModel):
    """Arc-length reparametrization of ``base``; domain ``[0, length]``.

    A table of arc lengths at ``n_nodes`` uniform base parameters is built by
    adaptive quadrature.  Queries invert it with a cubic Hermite interpolant
    (slopes ``1/speed``) followed by Newton steps on the exact arc-length
    integral.  Jets of the inverse map come from its defining relation
    ``phi' = 1 / speed(phi)``, solved order by order.
    """

    provenance = UNIT_SPEED

    def __init__(self, base, rtol=DEFAULT_RTOL, n_nodes=DEFAULT_TABLE_NODES):
        self.base = base
        self.rtol = rtol
        lo, hi = base.domain
        nodes = np.linspace(lo, hi, n_nodes)
        dense = np.linspace(lo, hi, 4 * n_nodes)
        vel = base.jet(dense, 1).d(1)
        q = np.sum(vel * vel * METRIC, axis=-1)
        dense_speed = np.sqrt(np.abs(q))
        # a change of causal sign between samples means a null tangent in between
        bad = (dense_speed < NEAR_NULL_SPEED) | (np.sign(q) != np.sign(q[0]))
        if np.any(bad):
            i = int(np.argmax(bad))
            raise NearNullTangent(float(dense[i]), float(dense_speed[i]))
        try:
            table = cumulative(lambda x: _speed_values(base, x), nodes, rtol)
        except QuadratureFailure as exc:
            raise QuadratureFailure(f"arc-length table: {exc}") from None
        self.nodes = nodes
        self.table = table
        self.node_speed = _speed_values(base, nodes)
        self.length = float(table[-1])
        self._interp = CubicHermiteSpline(table, nodes, 1.0 / self.node_speed)
        super().__init__((0.0, self.length))

    def arclength_at(self, s):
        """Arc length from the start of ``base`` to base parameter ``s``."""
        s = np.atleast_1d(self.base.check_domain(s)).astype(float)
        idx = np.clip(np.searchsorted(self.nodes, s, side="right") - 1, 0, self.nodes.size - 2)
        left = self.nodes[idx]
        forward = s >= left
        a = np.where(forward, left, s)
        b = np.where(forward, s, left)
        piece = integrate_pairs(lambda x: _speed_values(self.base, x), a, b, self.rtol)
        return self.table[idx] + np.where(forward, piece, -piece)

    def base_parameter(self, t):
        """Inverse of :meth:`arclength_at`."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        lo, hi = self.base.domain
        s = np.clip(self._interp(t), lo, hi)
        scale = max(1.0, abs(lo), abs(hi))
        for _ in range(4):
            resid = self.arclength_at(s) - t
            step = resid / _speed_values(self.base, s)
            s = np.clip(s - step, lo, hi)
            if np.all(np.abs(step) <= 4e-16 * scale):
                break
        return s

    @staticmethod
    def _inverse_delta(base_jet, order):
        # Picard iteration on phi' = 1/speed(phi); each pass fixes one more order
        w = 1.0 / _timelike_speed_jet(base_jet.derivative())
        delta = Jet.constant(np.zeros(w.shape), 0)
        for _ in range(order):
            delta = jets.compose(w, delta).integral(0.0)
        return delta

    def inverse_jet(self, t, order=jets.DEFAULT_ORDER):
        """Jet of the base parameter ``s = phi(t)``."""
        s0 = self.base_parameter(t)
        delta = self._inverse_delta(self.base.jet(s0, order), order)
        out = delta.c.copy()
        out[0] = s0
        return Jet(out)

    def _jet(self, t, order):
        base_jet = self.base.jet(self.base_parameter(t), order)
        if order == 0:
            return base_jet
        return jets.compose(base_jet, self._inverse_delta(base_jet, order))


def reparam_unit_speed(c, rtol=DEFAULT_RTOL, n_nodes=DEFAULT_TABLE_NODES):
    """Arc-length parametrization of ``c`` (parameter starts at 0).

    Raises :class:`NearNullTangent` if the speed drops below 1e-8 on a dense
    sample, and checks the result is unit speed to ``10 * rtol``.
    """
    u = UnitSpeedCurve(c, rtol, n_nodes)
    probe = np.linspace(0.0, u.length, 17)
    dev = np.abs(_speed_values(u, probe) - 1.0)
    if np.any(dev > 10 * rtol):
        i = int(np.argmax(dev))
        raise QuadratureFailure(f"reparametrized speed off by {dev[i]:.3g} at t={probe[i]:.17g}")
    return u


def is_unit_speed(c, tol=1e-6, n_probe=33):
    """True when the speed stays within ``tol`` of 1 on a uniform probe grid."""
    return bool(np.all(np.abs(_speed_values(c, c.grid(n_probe)) - 1.0) <= tol))


def ensure_unit_speed(c, rtol=DEFAULT_RTOL, n_nodes=DEFAULT_TABLE_NODES):
    """``c`` itself if it is already unit speed, else its arc-length reparametrization."""
    return c if is_unit_speed(c) else reparam_unit_speed(c, rtol, n_nodes)
