"""Frenet apparatus of unit-speed timelike curves in E_1^4.

The frame is built in four steps, every derivative taken by jet arithmetic:

1. ``T = c'``
2. ``k1 = |T'|``, ``N = T'/k1``
3. ``k2 = |N' - k1 T|``, ``B1 = (N' - k1 T)/k2``
4. ``B2 = eps (B1' + k2 N)/|B1' + k2 N|`` with ``eps`` making
   ``det(T, N, B1, B2) = +1``, and ``k3 = <B1', B2>``.

With ``<T,T> = -1`` these satisfy ``T' = k1 N``, ``N' = k1 T + k2 B1``,
``B1' = -k2 N + k3 B2``, ``B2' = -k3 B1``.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import jets
from .errors import NotTimelike, NotUnitSpeed, VanishingCurvature
from .lorentz import METRIC, Frame4

TAU_CURV = 1e-8
UNIT_SPEED_TOL = 1e-6
RESIDUAL_STEP = 1e-4


@dataclass(frozen=True)
class FrenetApparatus:
    t: float
    frame: Frame4
    k1: float
    k2: float
    k3: float
    epsilon: int


@dataclass
class FrenetSamples:
    """Frame data at many parameters; failed samples hold NaN."""

    t: np.ndarray
    point: np.ndarray
    T: np.ndarray
    N: np.ndarray
    B1: np.ndarray
    B2: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    k3: np.ndarray
    epsilon: np.ndarray
    speed: np.ndarray
    failure: List[Optional[str]]
    failure_order: List[Optional[int]]

    def __len__(self):
        return self.t.size

    @property
    def ok(self):
        return all(f is None for f in self.failure)

    def frame(self, i):
        return Frame4(self.T[i], self.N[i], self.B1[i], self.B2[i])

    def apparatus(self, i):
        return FrenetApparatus(float(self.t[i]), self.frame(i), float(self.k1[i]),
                               float(self.k2[i]), float(self.k3[i]), int(self.epsilon[i]))

    def raise_first_failure(self, max_order=3):
        """Raise for the first failed sample; vanishing ``k_j`` with ``j > max_order`` is ignored."""
        for i, reason in enumerate(self.failure):
            if reason is None:
                continue
            if reason == "vanishing_k" and self.failure_order[i] > max_order:
                continue
            t = float(self.t[i])
            if reason == "not_timelike":
                raise NotTimelike(t)
            if reason == "not_unit_speed":
                raise NotUnitSpeed(t, float(self.speed[i]))
            order = self.failure_order[i]
            value = {1: self.k1, 2: self.k2, 3: self.k3}[order][i]
            raise VanishingCurvature(order, t, float(abs(value)))


def _norm_jet(vec):
    """Jet of sqrt(|<v,v>|); entries with a vanishing value get NaN derivatives."""
    q = jets.minkowski_inner(vec, vec)
    sign = np.where(q.value < 0, -1.0, 1.0)
    q = q * sign
    small = ~(q.value > 0)
    c = q.c.copy()
    c[0] = np.where(small, 1.0, c[0])
    out = jets.sqrt(jets.Jet(c))
    out.c[1:, small] = np.nan
    out.c[0, small] = np.sqrt(np.abs(q.value[small]))
    return out


def _divisor(norm):
    """Copy of a norm jet with zero values replaced by NaN, for NaN-propagating division."""
    c = norm.c.copy()
    c[0] = np.where(c[0] > 0, c[0], np.nan)
    return jets.Jet(c)


def frenet_samples(c, t, tau_curv=TAU_CURV, unit_speed_tol=UNIT_SPEED_TOL):
    """Frenet apparatus at every parameter in ``t`` without raising.

    Samples that fail a step carry a reason in ``failure`` (``"not_timelike"``,
    ``"not_unit_speed"`` or ``"vanishing_k"`` with the order in
    ``failure_order``) and NaN in the undefined fields.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    with np.errstate(invalid="ignore", divide="ignore"):
        cj = c.jet(t, 4)
        T = cj.derivative()
        q = jets.minkowski_inner(T, T).value
        spd = np.sqrt(np.abs(q))

        Tp = T.derivative()
        k1 = _norm_jet(Tp)
        N = Tp / _divisor(k1)[..., None]

        V = N.derivative() - k1[..., None] * T
        k2 = _norm_jet(V)
        B1 = V / _divisor(k2)[..., None]

        B1p = B1.derivative().value
        Nv = N.value
        D = B1p + k2.value[:, None] * Nv
        d_norm = np.sqrt(np.abs(np.sum(D * D * METRIC, axis=-1)))
        B2 = D / d_norm[:, None]
        Tv, B1v = T.value, B1.value
        det = np.linalg.det(np.stack([Tv, Nv, B1v, B2], axis=-2))
        eps = np.where(det < 0, -1.0, 1.0)
        B2 = B2 * eps[:, None]
        k3 = np.sum(B1p * B2 * METRIC, axis=-1)

    failure, order = [], []
    k1v, k2v = k1.value, k2.value
    for i in range(t.size):
        if not q[i] < 0:
            failure.append("not_timelike"), order.append(None)
        elif abs(spd[i] - 1.0) > unit_speed_tol:
            failure.append("not_unit_speed"), order.append(None)
        elif not k1v[i] >= tau_curv:
            failure.append("vanishing_k"), order.append(1)
        elif not k2v[i] >= tau_curv:
            failure.append("vanishing_k"), order.append(2)
        elif not d_norm[i] >= tau_curv:
            failure.append("vanishing_k"), order.append(3)
        else:
            failure.append(None), order.append(None)

    out = FrenetSamples(t=t, point=cj.value, T=Tv, N=Nv, B1=B1v, B2=B2, k1=k1v, k2=k2v,
                        k3=k3, epsilon=eps.astype(int), speed=spd, failure=failure,
                        failure_order=order)
    return out


def frenet_apparatus(c, t, tau_curv=TAU_CURV):
    """Frame and curvatures of a unit-speed timelike curve at ``t``."""
    s = frenet_samples(c, [t], tau_curv)
    s.raise_first_failure()
    return s.apparatus(0)


def frenet_residuals(c, t, delta=RESIDUAL_STEP):
    """Euclidean norms of the four Frenet-equation residuals at ``t``.

    Frame derivatives are central differences with step ``delta``.
    """
    s = frenet_samples(c, [t - delta, t, t + delta])
    s.raise_first_failure()
    d = lambda v: (v[2] - v[0]) / (2 * delta)  # noqa: E731
    k1, k2, k3 = s.k1[1], s.k2[1], s.k3[1]
    T, N, B1, B2 = s.T[1], s.N[1], s.B1[1], s.B2[1]
    r = [
        d(s.T) - k1 * N,
        d(s.N) - (k1 * T + k2 * B1),
        d(s.B1) - (-k2 * N + k3 * B2),
        d(s.B2) - (-k3 * B1),
    ]
    return tuple(float(np.linalg.norm(v)) for v in r)


@dataclass
class SpecialFrenetReport:
    samples: List[float]
    min_k1: float
    min_k2: float
    min_abs_k3: float
    is_special: bool
    first_failure: Optional[Tuple[float, str]]


def _nanmin(x):
    x = np.asarray(x, dtype=float)
    x = x[np.isfinite(x)]
    return float(np.min(x)) if x.size else float("nan")


def special_frenet_report(c, n_samples, tau_curv=TAU_CURV):
    """Check the four frame steps on a uniform grid of ``n_samples`` parameters."""
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    s = frenet_samples(c, c.grid(n_samples), tau_curv)
    first = None
    for i, reason in enumerate(s.failure):
        if reason is not None:
            if reason == "vanishing_k":
                reason = f"vanishing_k{s.failure_order[i]}"
            first = (float(s.t[i]), reason)
            break
    min_k1 = _nanmin(s.k1)
    min_k2 = _nanmin(s.k2)
    min_k3 = _nanmin(np.abs(s.k3))
    special = (first is None and min_k1 > tau_curv and min_k2 > tau_curv
               and min_k3 > tau_curv)
    return SpecialFrenetReport(s.t.tolist(), min_k1, min_k2, min_k3, special, first)
