import math

import numpy as np
import pytest

from mannheim4.curves import ParsedCurve

# (a sinh t, a cosh t, b cos wt, b sin wt) with a^2 - b^2 w^2 = 1 is unit-speed timelike.
# Its tangent components solve x'''' = (k1^2 - k2^2 - k3^2) x'' + k1^2 k3^2 x with
# x'' = x (hyperbolic pair) and x'' = -w^2 x (circular pair), so
# k1^2 = a^2 + b^2 w^4, k1^2 k3^2 = w^2 and k1^2 - k2^2 - k3^2 = 1 - w^2.
HELIX_A2, HELIX_B, HELIX_W = 1.16, 0.2, 2.0
HELIX_K1 = np.sqrt(1.8)
HELIX_K2 = np.sqrt(116 / 45)
HELIX_K3 = 2 * np.sqrt(5) / 3
HELIX_BETA = -HELIX_K1 / (HELIX_K1 ** 2 - HELIX_K2 ** 2)

WIDE_K1 = np.sqrt(3.0)
WIDE_K2 = 2 * np.sqrt(6) / 3
WIDE_K3 = 1 / np.sqrt(3)
WIDE_BETA = -3 * np.sqrt(3)


def helix_curve(omega=2.0, domain=(0.0, 2.0)):
    return ParsedCurve.from_strings(
        ["sqrt(1.16)*sinh(s)", "sqrt(1.16)*cosh(s)",
         f"0.2*cos({omega!r}*s)", f"0.2*sin({omega!r}*s)"], domain)


def wide_curve(domain=(0.0, 2.0)):
    return ParsedCurve.from_strings(["sqrt(2)*sinh(s)", "sqrt(2)*cosh(s)", "cos(s)", "sin(s)"], domain)


@pytest.fixture
def helix():
    return helix_curve()


@pytest.fixture
def wide():
    return wide_curve()


def rel(a, b):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300))


def richardson_derivs(f, s, order=4, h=0.04):
    """Central differences of orders 1..order with two Richardson levels."""
    def central(k, step):
        offs = np.arange(k + 1) - k / 2
        coef = np.array([(-1) ** (k - j) * math.comb(k, j) for j in range(k + 1)], dtype=float)
        return float(coef @ f(s + offs * step)) / step ** k

    out = []
    for k in range(1, order + 1):
        d = [central(k, h / 2 ** i) for i in range(3)]
        r1 = [(4 * d[i + 1] - d[i]) / 3 for i in range(2)]
        out.append((16 * r1[1] - r1[0]) / 15)
    return np.array(out)


# (criterion number, line) pairs filled in by test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
