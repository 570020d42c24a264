"""Generalized Mannheim curves and their mates ``c* = c + beta N``.

A unit-speed timelike curve is a generalized Mannheim curve when
``k1 = -beta (k1^2 - k2^2)`` for a constant ``beta``.  Its mate is then
checked by asking that the first normal ``N`` of ``c`` be orthogonal to both
``T*`` and ``N*`` at corresponding points.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from . import jets
from .curves import MATE_OF, CurveModel, reparam_unit_speed
from .errors import DegenerateBeta, SingularMateSpeed, VanishingCurvature
from .frenet import TAU_CURV, UNIT_SPEED_TOL, frenet_samples
from .lorentz import CausalClass, causal_character, minkowski_inner
from .quadrature import DEFAULT_RTOL

TAU_BETA = 1e-6
TAU_RES = 1e-8
TAU_PAIR = 1e-6

MATE_NOT_TIMELIKE = "MateNotTimelike"


def mannheim_residual(k1, k2, beta):
    """``k1 + beta (k1^2 - k2^2)``; zero exactly when the Mannheim relation holds."""
    return k1 + beta * (k1 * k1 - k2 * k2)


@dataclass
class MannheimCheck:
    samples: List[float]
    beta_pointwise: List[float]
    beta: float
    beta_spread: float
    max_residual: float
    satisfied: bool
    k1: List[float] = field(default_factory=list)
    k2: List[float] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)


def estimate_beta(c, n_samples, tau_beta=TAU_BETA, tau_res=TAU_RES):
    """Pointwise ``beta = -k1/(k1^2 - k2^2)`` on a uniform grid, with a constancy gate.

    Only k1 and k2 enter, so curves whose third curvature vanishes are accepted.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    t = c.grid(n_samples) if n_samples > 1 else np.array([c.domain[0]])
    fs = frenet_samples(c, t)
    fs.raise_first_failure(max_order=2)
    diff = fs.k1 ** 2 - fs.k2 ** 2
    small = np.abs(diff) < TAU_CURV
    if np.any(small):
        raise DegenerateBeta(float(t[np.argmax(small)]))
    pointwise = -fs.k1 / diff
    beta = float(np.mean(pointwise))
    spread = float(np.max(np.abs(pointwise - beta)))
    residuals = mannheim_residual(fs.k1, fs.k2, beta)
    resid = float(np.max(np.abs(residuals)))
    ok = spread <= tau_beta * max(1.0, abs(beta)) and resid <= tau_res
    return MannheimCheck(t.tolist(), pointwise.tolist(), beta, spread, resid, ok,
                         fs.k1.tolist(), fs.k2.tolist(), residuals.tolist())


def _normal_jet(base_jet):
    """Jet of the principal normal ``N = T'/|T'|`` from a curve jet (order drops by 2)."""
    T = base_jet.derivative()
    Tp = T.derivative()
    q = jets.minkowski_inner(Tp, Tp)
    if np.any(q.value <= 0):
        i = int(np.argmax(q.value <= 0))
        return None, i, float(np.sqrt(abs(q.value[i])))
    k1 = jets.sqrt(q)
    small = k1.value < TAU_CURV
    if np.any(small):
        i = int(np.argmax(small))
        return None, i, float(k1.value[i])
    return Tp / k1[..., None], None, None


class MateCurve(CurveModel):
    """``c(t) + beta N(t)`` on the domain of ``c``; not arc-length parametrized."""

    provenance = MATE_OF

    def __init__(self, base, beta):
        super().__init__(base.domain)
        self.base = base
        self.beta = float(beta)
        probe = base.grid(17)
        fs = frenet_samples(base, probe)
        fs.raise_first_failure(max_order=1)

    def _jet(self, t, order):
        base_jet = self.base.jet(t, order + 2)
        N, bad, value = _normal_jet(base_jet)
        if N is None:
            raise VanishingCurvature(1, float(t[bad]), value)
        return base_jet.truncate(order) + N * self.beta


def build_mate(c, beta):
    """The curve ``c + beta N``; needs ``c`` unit-speed timelike with ``k1 > 0``."""
    return MateCurve(c, beta)


def mate_speed(beta, k1, k2, beta_prime=0.0):
    """``sqrt|-(1 + beta k1)^2 + beta'^2 + (beta k2)^2|``."""
    return np.sqrt(np.abs(-(1.0 + beta * k1) ** 2 + beta_prime ** 2 + (beta * k2) ** 2))


def mate_tangent(c, beta, t):
    """Unit tangent ``((1 + beta k1) T + beta k2 B1) / sqrt|1 + beta k1|`` of the mate at ``t``.

    The normalization assumes the Mannheim relation holds at ``t``.
    """
    fs = frenet_samples(c, [t])
    fs.raise_first_failure(max_order=2)
    k1, k2 = fs.k1[0], fs.k2[0]
    a = 1.0 + beta * k1
    if abs(a) < TAU_CURV:
        raise SingularMateSpeed(float(t))
    return (a * fs.T[0] + beta * k2 * fs.B1[0]) / np.sqrt(abs(a))


def mate_curvatures_closed_form(beta, k1, k2, k3):
    """Mate curvatures ``(k1*, k2*, k3*)`` for a constant-curvature curve.

    With ``eps = sign(k3)``: ``k1* = eps beta k2 k3 / (1 + beta k1)``,
    ``k2* = eps k3`` and ``k3* = eps k2 / (1 + beta k1)``.
    """
    if beta == 0:
        raise VanishingCurvature(1, float("nan"), 0.0)
    a = 1.0 + beta * k1
    if abs(a) < TAU_CURV:
        raise SingularMateSpeed()
    eps = 1.0 if k3 >= 0 else -1.0
    return eps * beta * k2 * k3 / a, eps * k3, eps * k2 / a


@dataclass
class MatePairReport:
    beta: float
    mate_causal: CausalClass
    f_prime_samples: List[Tuple[float, float]]
    max_N_dot_Tstar: float
    max_N_dot_Nstar: float
    b2star_alignment: float
    verified_def31: bool
    verified_thm33: bool
    failure: Optional[str] = None
    t_star: List[float] = field(default_factory=list)
    mate_k1: List[float] = field(default_factory=list)
    mate_k2: List[float] = field(default_factory=list)
    mate_k3: List[float] = field(default_factory=list)
    N_dot_Tstar: List[float] = field(default_factory=list)
    N_dot_Nstar: List[float] = field(default_factory=list)
    alignment: List[float] = field(default_factory=list)

    @property
    def samples(self):
        return [t for t, _ in self.f_prime_samples]


def _mate_causal(velocity):
    classes = [causal_character(v) for v in velocity]
    for cls in (CausalClass.NULL, CausalClass.SPACELIKE):
        if cls in classes:
            return cls
    return CausalClass.TIMELIKE


def verify_mannheim_pair(c, beta, n_samples, rtol=DEFAULT_RTOL, tau_pair=TAU_PAIR):
    """Check that ``c`` and ``c + beta N`` form a Mannheim pair at ``n_samples`` points.

    The mate is reparametrized by arc length; point ``t`` of ``c`` corresponds
    to arc length ``f(t)`` of the mate.  A mate whose tangent is not timelike
    somewhere yields a report with ``failure = "MateNotTimelike"`` instead of
    an exception.
    """
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    t = c.grid(n_samples)
    fs = frenet_samples(c, t)
    fs.raise_first_failure()
    mate = build_mate(c, beta)
    vel = mate.jet(t, 1).d(1)
    fprime = np.sqrt(np.abs(minkowski_inner(vel, vel)))
    f_samples = list(zip(t.tolist(), fprime.tolist()))
    causal = _mate_causal(vel)
    if causal is not CausalClass.TIMELIKE:
        nan = float("nan")
        return MatePairReport(float(beta), causal, f_samples, nan, nan, nan,
                              False, False, failure=MATE_NOT_TIMELIKE)

    mate_u = reparam_unit_speed(mate, rtol)
    t_star = mate_u.arclength_at(t)
    ms = frenet_samples(mate_u, t_star, unit_speed_tol=max(UNIT_SPEED_TOL, 10 * rtol))
    ms.raise_first_failure()

    n_t = np.abs(minkowski_inner(fs.N, ms.T))
    n_n = np.abs(minkowski_inner(fs.N, ms.N))
    align = np.minimum(np.linalg.norm(ms.B2 - fs.N, axis=-1),
                       np.linalg.norm(ms.B2 + fs.N, axis=-1))
    max_nt, max_nn, max_al = float(np.max(n_t)), float(np.max(n_n)), float(np.max(align))
    def31 = max_nt <= tau_pair and max_nn <= tau_pair
    thm33 = def31 and max_al <= tau_pair
    return MatePairReport(
        float(beta), causal, f_samples, max_nt, max_nn, max_al, def31, thm33,
        t_star=t_star.tolist(), mate_k1=ms.k1.tolist(), mate_k2=ms.k2.tolist(),
        mate_k3=ms.k3.tolist(), N_dot_Tstar=n_t.tolist(), N_dot_Nstar=n_n.tolist(),
        alignment=align.tolist())
