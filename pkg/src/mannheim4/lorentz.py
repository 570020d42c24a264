"""Linear algebra of Minkowski space-time with signature (-, +, +, +).

Vectors are plain numpy arrays whose last axis has length 4; coordinate 0 is
the timelike one.  All functions broadcast over leading axes.
"""

import enum
from dataclasses import dataclass

import numpy as np

METRIC = np.array([-1.0, 1.0, 1.0, 1.0])
ETA = np.diag(METRIC)

TAU_FRAME = 1e-9
CAUSAL_TOL = 1e-12


class CausalClass(enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    NULL = "null"


def vec4(x0, x1, x2, x3):
    """Build a finite 4-vector."""
    v = np.array([x0, x1, x2, x3], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"non-finite component in {v}")
    return v


def minkowski_inner(u, v):
    """Lorentzian inner product -u0 v0 + u1 v1 + u2 v2 + u3 v3."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.sum(u * v * METRIC, axis=-1)


def minkowski_norm(v):
    """sqrt(|<v, v>|)."""
    return np.sqrt(np.abs(minkowski_inner(v, v)))


def causal_character(v, tol=CAUSAL_TOL):
    """Classify ``v`` as timelike, spacelike or null.

    The band ``|<v,v>| <= tol * max(1, |v|_E^2)`` counts as null, so the zero
    vector is reported as null as well.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    v = np.asarray(v, dtype=float)
    q = float(minkowski_inner(v, v))
    scale = max(1.0, float(np.dot(v, v)))
    if q < -tol * scale:
        return CausalClass.TIMELIKE
    if q > tol * scale:
        return CausalClass.SPACELIKE
    return CausalClass.NULL


@dataclass(frozen=True)
class Frame4:
    """Ordered frame (T, N, B1, B2); rows of :attr:`matrix`."""

    T: np.ndarray
    N: np.ndarray
    B1: np.ndarray
    B2: np.ndarray

    @property
    def matrix(self):
        return np.stack([self.T, self.N, self.B1, self.B2], axis=-2)

    @classmethod
    def from_matrix(cls, m):
        m = np.asarray(m, dtype=float)
        return cls(m[..., 0, :], m[..., 1, :], m[..., 2, :], m[..., 3, :])

    def transformed(self, L):
        """Apply the linear map ``L`` to each frame vector."""
        L = np.asarray(L, dtype=float)
        return Frame4(L @ self.T, L @ self.N, L @ self.B1, L @ self.B2)


def gram_matrix(frame):
    """Matrix of pairwise Lorentzian inner products of the frame vectors."""
    m = frame.matrix if isinstance(frame, Frame4) else np.asarray(frame, dtype=float)
    return (m * METRIC) @ np.swapaxes(m, -1, -2)


def orientation_det(frame):
    """Determinant of the coordinate matrix with rows T, N, B1, B2."""
    m = frame.matrix if isinstance(frame, Frame4) else np.asarray(frame, dtype=float)
    return np.linalg.det(m)


def frame_defect(frame):
    """Largest deviation of the Gram matrix from diag(-1,1,1,1) and of det from 1."""
    gram_err = np.max(np.abs(gram_matrix(frame) - ETA), axis=(-1, -2))
    det_err = np.abs(orientation_det(frame) - 1.0)
    return np.maximum(gram_err, det_err)


def boost(rapidity, axis=1):
    """Lorentz boost mixing x0 with the spatial coordinate ``axis``."""
    L = np.eye(4)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    L[0, 0] = L[axis, axis] = ch
    L[0, axis] = L[axis, 0] = sh
    return L
