"""Timelike curves built from two free functions g, h and a constant beta.

The curve is

    c(s) = beta * integral f(s) (cosh s, sinh s, g(s), h(s)) ds

with the weight ``f`` fixed by g, h and their first two derivatives through
the abbreviations

    A = 1 - g^2 - h^2        B = -g g' - h h'       C = -g'^2 - h'^2
    D = -g g'' - h h''       E = -g' g'' - h' h''   F = g''^2 + h''^2

and ``Qt = A - A C + B^2``:

    f = A^(-3/2) Qt^(-5/2) [Qt^3 + A^3 (Qt (1 - F) + (C - 1)(1 + D)^2
                                       - 2 B E (1 + D) + A E^2)]

Closed forms for k1 and k2^2 - k1^2 are provided alongside, in their original
uncorrected form.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import jets
from .curves import GENERATED, CurveModel
from .errors import InvalidDomain, NegativeK2Squared, NonPositiveF
from .expr import eval_jet, parse_expr, to_text
from .jets import Jet
from .quadrature import DEFAULT_RTOL, cumulative, integrate_pairs

DEFAULT_NODES = 256
VALIDATION_POINTS = 512


@dataclass(frozen=True)
class GeneratorSpec:
    g: object
    h: object
    beta: float
    s_range: Tuple[float, float]
    n_nodes: int = DEFAULT_NODES
    rtol: float = DEFAULT_RTOL

    def __post_init__(self):
        for name in ("g", "h"):
            value = getattr(self, name)
            if isinstance(value, str):
                object.__setattr__(self, name, parse_expr(value))
        if not np.isfinite(self.beta) or self.beta == 0:
            raise ValueError("beta must be a finite non-zero number")
        lo, hi = (float(x) for x in self.s_range)
        if not lo < hi:
            raise ValueError(f"bad s_range {self.s_range!r}")
        object.__setattr__(self, "s_range", (lo, hi))
        if self.n_nodes < 2:
            raise ValueError("n_nodes must be at least 2")

    def jets(self, s, order):
        """Jets of g and h at ``s``."""
        return eval_jet(self.g, s, order), eval_jet(self.h, s, order)

    def as_dict(self):
        return {"g": to_text(self.g), "h": to_text(self.h), "beta": self.beta,
                "s_range": list(self.s_range), "n_nodes": self.n_nodes, "rtol": self.rtol}


@dataclass
class Abbreviations:
    A: object
    B: object
    C: object
    D: object
    E: object
    F: object


@dataclass
class Intermediates:
    P: object
    Q: object
    R: object
    P_tilde: object
    Q_tilde: object
    R_tilde: object


def abbreviation_jets(g_jet, h_jet):
    """A..F as jets; the result has order ``min(order(g), order(h)) - 2``."""
    n = min(g_jet.order, h_jet.order) - 2
    if n < 0:
        raise ValueError("g and h jets need order >= 2")
    g, h = g_jet.truncate(n + 2), h_jet.truncate(n + 2)
    gd, hd = g.derivative(), h.derivative()
    gdd, hdd = gd.derivative(), hd.derivative()
    g, h = g.truncate(n), h.truncate(n)
    gd, hd = gd.truncate(n), hd.truncate(n)
    return Abbreviations(
        A=1.0 - g * g - h * h,
        B=-(g * gd) - h * hd,
        C=-(gd * gd) - hd * hd,
        D=-(g * gdd) - h * hdd,
        E=-(gd * gdd) - hd * hdd,
        F=gdd * gdd + hdd * hdd,
    )


def abbreviations(g_jet, h_jet):
    """Values of A..F at the expansion point."""
    ab = abbreviation_jets(g_jet, h_jet)
    vals = {k: _scalar(getattr(ab, k).value) for k in "ABCDEF"}
    return Abbreviations(**vals)


def _scalar(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def intermediates(ab):
    """P, Q, R in their expanded form and the reduced P~, Q~, R~.

    Works on floats, arrays or jets alike.
    """
    A, B, C, D, E = ab.A, ab.B, ab.C, ab.D, ab.E
    qt = A - A * C + B * B
    rt = B - A * E + B * D
    pt = C - D + C * D - B * E - 1.0
    P = qt * (B * B - A * C - A * D) - qt * qt + A * B * rt
    return Intermediates(P=P, Q=A * A * qt, R=A * A * rt, P_tilde=pt, Q_tilde=qt, R_tilde=rt)


def _bracket(ab, qt):
    A, B, C, D, E, F = ab.A, ab.B, ab.C, ab.D, ab.E, ab.F
    inner = qt * (1.0 - F) + (C - 1.0) * (1.0 + D) * (1.0 + D) - 2.0 * B * E * (1.0 + D) + A * E * E
    return qt * qt * qt + A * A * A * inner


def _first_bad(s, mask):
    mask = np.atleast_1d(np.asarray(mask))
    s = np.broadcast_to(np.atleast_1d(np.asarray(s, dtype=float)), mask.shape)
    return float(s[mask][0])


def _check_domain(s, A, qt, bracket=None):
    A, qt = np.asarray(A), np.asarray(qt)
    if np.any(~(A > 0)):
        raise InvalidDomain(_first_bad(s, ~(A > 0)), "1 - g^2 - h^2 <= 0 (tangent not timelike)")
    if np.any(~(qt > 0)):
        raise InvalidDomain(_first_bad(s, ~(qt > 0)), "A - AC + B^2 <= 0")
    if bracket is not None:
        bracket = np.asarray(bracket)
        if np.any(~(bracket > 0)):
            bad = np.atleast_1d(~(bracket > 0))
            raise NonPositiveF(_first_bad(s, bad), float(np.atleast_1d(bracket)[bad][0]))


def f_jet(g_jet, h_jet, s=None):
    """Jet of the weight ``f``; its order is two less than that of g and h."""
    ab = abbreviation_jets(g_jet, h_jet)
    qt = ab.A - ab.A * ab.C + ab.B * ab.B
    br = _bracket(ab, qt)
    where = g_jet.value if s is None else s
    _check_domain(where, ab.A.value, qt.value, br.value)
    return ab.A.real_power(-1.5) * qt.real_power(-2.5) * br


def f_of_s(g_jet, h_jet):
    """The weight ``f`` at the expansion point of the jets."""
    return _scalar(f_jet(g_jet.truncate(2), h_jet.truncate(2)).value)


def f_statement_form(g_jet, h_jet):
    """Alternative printing of ``f`` written directly in g, h and derivatives.

    It opens the bracket with ``-(...)^3`` instead of ``+(...)^3``.  Kept only
    as a probe to compare against :func:`f_of_s`; may be non-positive.
    """
    g, gd, gdd = (g_jet.d(k) for k in range(3))
    h, hd, hdd = (h_jet.d(k) for k in range(3))
    a = 1 - g ** 2 - h ** 2
    q = a + gd ** 2 + hd ** 2 - (gd * h - g * hd) ** 2
    inner = (-(g - gdd) ** 2 - (h - hdd) ** 2
             - ((g * hd - gd * h) - (gd * hdd - gdd * hd)) ** 2
             + (g * hdd - gdd * h) ** 2)
    return _scalar(a ** -1.5 * q ** -2.5 * (-(q ** 3) + a ** 3 * inner))


class GeneratedCurve(CurveModel):
    """The curve of a :class:`GeneratorSpec`, starting at the origin at ``s_range[0]``.

    Derivative jets come straight from ``c'(s) = beta f(s) (cosh s, sinh s, g, h)``;
    positions from adaptive quadrature checkpointed at ``n_nodes`` uniform nodes.
    """

    provenance = GENERATED

    def __init__(self, spec):
        super().__init__(spec.s_range)
        self.spec = spec
        probe = np.linspace(spec.s_range[0], spec.s_range[1], VALIDATION_POINTS)
        self._velocity(probe, 0)
        self.nodes = np.linspace(spec.s_range[0], spec.s_range[1], spec.n_nodes)
        self.table = cumulative(self._velocity_values, self.nodes, spec.rtol)

    def _velocity(self, s, order):
        g, h = self.spec.jets(s, order + 2)
        f = f_jet(g, h, s)
        var = Jet.variable(s, order)
        direction = jets.stack([jets.cosh(var), jets.sinh(var), g.truncate(order), h.truncate(order)])
        return (f * self.spec.beta)[..., None] * direction

    def _velocity_values(self, s):
        return self._velocity(s, 0).value

    def position(self, s):
        s = np.atleast_1d(self.check_domain(s))
        idx = np.clip(np.searchsorted(self.nodes, s, side="right") - 1, 0, self.nodes.size - 2)
        left = self.nodes[idx]
        piece = integrate_pairs(self._velocity_values, left, s, self.spec.rtol)
        return self.table[idx] + piece

    def _jet(self, s, order):
        pos = self.position(s)
        if order == 0:
            return Jet(pos[None])
        return self._velocity(s, order - 1).integral(pos)


def build_generated_curve(spec):
    return GeneratedCurve(spec)


def _closed_forms(spec, s):
    g, h = spec.jets(s, 2)
    ab = abbreviations(g, h)
    qt = ab.A - ab.A * ab.C + ab.B ** 2
    br = _bracket(ab, qt)
    _check_domain(s, ab.A, qt, br)
    f = ab.A ** -1.5 * qt ** -2.5 * br
    phi_prime = 1.0 / (abs(spec.beta) * f * np.sqrt(ab.A))
    k1 = phi_prime * qt ** 0.5 / ab.A
    diff = br / (spec.beta ** 2 * f ** 2 * ab.A ** 3 * qt ** 2)
    return ab, f, k1, diff


def generated_curvatures(spec, s, corrected=False):
    """Closed-form ``(k1, k2^2 - k1^2, k2)`` of the generated curve at ``s``.

    ``k1 = phi' A^-1 Qt^(1/2)`` with ``phi' = 1/(|beta| f sqrt(A))`` and
    ``k2^2 - k1^2 = beta^-2 f^-2 A^-3 Qt^-2 [bracket of f]``.

    The frame of the constructed curve has the opposite sign for
    ``k2^2 - k1^2`` (so the curve satisfies the Mannheim relation with
    ``-beta``).  Pass ``corrected=True`` to get values that agree with
    :func:`~mannheim4.frenet.frenet_samples` on the reparametrized curve.
    """
    s = np.asarray(s, dtype=float)
    _, _, k1, diff = _closed_forms(spec, s)
    if corrected:
        diff = -diff
    k2sq = k1 * k1 + diff
    if np.any(k2sq < 0):
        raise NegativeK2Squared(_first_bad(s, k2sq < 0), float(np.min(k2sq)))
    return _scalar(k1), _scalar(diff), _scalar(np.sqrt(k2sq))


def verify_generator_relation(spec, n_samples):
    """max |k1 + beta (k1^2 - k2^2)| / max(1, k1) over a uniform grid, closed forms."""
    s = np.linspace(spec.s_range[0], spec.s_range[1], n_samples)
    k1, diff, _ = generated_curvatures(spec, s)
    k1 = np.atleast_1d(k1)
    resid = np.abs(k1 - spec.beta * np.atleast_1d(diff)) / np.maximum(1.0, k1)
    return float(np.max(resid))
