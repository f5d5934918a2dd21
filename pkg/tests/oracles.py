"""Brute-force reference computations, written independently of the package
internals so that agreement is meaningful."""
import math

import numpy as np


def zeta_f_riemann(a, b, d, l0, theta, n=2000):
    """Midpoint rule on an n x n grid over (phi, r) in the original integrand."""
    h_phi = 2 * math.pi / n
    h_r = b / n
    phi = (np.arange(n) + 0.5) * h_phi
    total = 0.0
    for r in (np.arange(n) + 0.5) * h_r:
        arm = d + (a + r) * np.sin(phi)
        lam = (l0 + arm * theta) / l0
        dlam = arm / l0
        total += np.sum((lam - lam**-3) * dlam * l0 * (a + r))
    return total * h_phi * h_r


def reservoir_lambda(V0, area, R, theta):
    V = V0 - area * theta
    h = 3 * V / (2 * math.pi * R * R)
    L = 0.5 * math.pi * (3 * (R + h) - math.sqrt((R + 3 * h) * (h + 3 * R)))
    return L / (2 * R)


def reservoir_energy(V0, area, R, t, theta):
    lam = reservoir_lambda(V0, area, R, theta)
    return 0.5 * (2 * lam**2 + lam**-4 - 3) * math.pi * R * R * t


def central_diff(f, x, h):
    return (f(x + h) - f(x - h)) / (2 * h)


def tip_xy(theta0, seg_len, joint_angles):
    """Tip of a planar chain in the load frame, by explicit accumulation."""
    x = y = 0.0
    alpha = -theta0
    for q in joint_angles:
        alpha += q
        x -= seg_len * math.sin(alpha)
        y += seg_len * math.cos(alpha)
    return x, y


def grid_search_payload(p_of, theta, theta0, mu_f, g, n, P,
                        m_step=0.01, m_max=50.0, fx_step=0.1, fx_max=500.0, chunk=500):
    """Grid-search maximum payload over (m, Fx).

    A grid cell [m_k, m_k+1] x [Fx_j, Fx_j+1] is accepted when the balance
    pressure crosses P somewhere among its corners and each no-slip or
    compressive-contact inequality holds at one or more corners. The lower
    mass of the highest accepted cell is returned. ``p_of(m, Fx)`` is the
    balance pressure (vectorised).
    """
    masses = np.arange(0.0, m_max + m_step / 2, m_step)
    fx = np.arange(0.0, fx_max + fx_step / 2, fx_step)[None, :]
    c, s = math.cos(theta - theta0), math.sin(theta - theta0)

    def corners_any(a):
        return a[:-1, :-1] | a[:-1, 1:] | a[1:, :-1] | a[1:, 1:]

    best = 0.0
    for start in range(0, len(masses) - 1, chunk):
        m = masses[start:start + chunk + 1, None]
        r = p_of(m, fx) - P
        hit = corners_any(r <= 0) & corners_any(r >= 0)
        fy = m * g / n
        fu = fx * s - fy * c
        fv = fx * c + fy * s
        for viol in (fu - mu_f * fv, -fu - mu_f * fv, -fv):
            hit &= corners_any(viol <= 1e-9)
        rows = np.nonzero(hit.any(axis=1))[0]
        if rows.size:
            best = max(best, float(masses[start + rows[-1]]))
    return best
