"""Compiled balance evaluation for the simulation hot loop.

These mirror :func:`hydrogrip.model.balance_pressure` and the kinematics
module term by term; the test suite checks that both paths agree.
"""
import math

import numpy as np
from numba import njit


@njit(cache=True, fastmath=True)
def zeta_f(u, weight, q):
    total = 0.0
    for i in range(u.shape[0]):
        stretch = u[i] * q
        lam = 1.0 + stretch
        total += weight[i] * (stretch * (lam + 1.0) * (lam * lam + 1.0) / (lam * lam * lam))
    return total


@njit(cache=True)
def zeta_r(V0, pump_area, R, t, theta):
    V = V0 - pump_area * theta
    h = 3.0 * V / (2.0 * math.pi * R * R)
    root = math.sqrt((R + 3.0 * h) * (h + 3.0 * R))
    lam = 0.5 * math.pi * (3.0 * (R + h) - root) / (2.0 * R)
    dL_dh = 0.5 * math.pi * (3.0 - (3.0 * h + 5.0 * R) / root)
    dlam = dL_dh * (-3.0 * pump_area / (2.0 * math.pi * R * R)) / (2.0 * R)
    return 2.0 * (lam - lam ** -5) * dlam * math.pi * R * R * t


@njit(cache=True)
def weighted_jacobian(theta0, seg_len, w, theta):
    ns = w.shape[0]
    alpha = np.empty(ns)
    acc = -theta0
    for i in range(ns):
        acc += w[i] * theta
        alpha[i] = acc
    jx_w = 0.0
    jy_w = 0.0
    tail_x = 0.0
    tail_y = 0.0
    for k in range(ns - 1, -1, -1):
        tail_x += -seg_len * math.cos(alpha[k])
        tail_y += -seg_len * math.sin(alpha[k])
        jx_w += w[k] * tail_x
        jy_w += w[k] * tail_y
    return jx_w, jy_w


@njit(cache=True)
def balance(c, u, weight, w, theta, m, Fx):
    """``c`` packs (theta0, l0, V0, R, t, n, mu_sf, mu_sr, g, pump_area, seg_len)."""
    theta0, l0, V0, R, t, n, mu_sf, mu_sr, g, pump_area, seg_len = (
        c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8], c[9], c[10]
    )
    elastic = n * mu_sf * zeta_f(u, weight, theta / l0) + mu_sr * zeta_r(V0, pump_area, R, t, theta)
    jx_w, jy_w = weighted_jacobian(theta0, seg_len, w, theta)
    return (elastic - (n * Fx * jx_w + m * g * jy_w)) / pump_area


@njit(cache=True)
def solve_theta(c, u, weight, w, grid, f_grid, cx_grid, cy_grid, P, m, Fx, prev, tol, local):
    """Bend angle where the balance pressure equals ``P``.

    Tries ``prev +- local`` first, otherwise scans the coarse grid for sign
    changes, keeps the bracket closest to ``prev`` and bisects it. Returns ``(theta, saturated)``; without a sign
    change the nearer end of the grid (smaller residual) is returned.
    """
    N = grid.shape[0]
    # most steps move theta very little: try a tight bracket around prev first
    lo = max(prev - local, grid[0])
    hi = min(prev + local, grid[N - 1])
    if hi > lo:
        r_lo = balance(c, u, weight, w, lo, m, Fx) - P
        r_hi = balance(c, u, weight, w, hi, m, Fx) - P
        if r_lo * r_hi <= 0.0:
            return _bisect(c, u, weight, w, lo, hi, r_lo, P, m, Fx, tol), False
    best = -1
    best_dist = np.inf
    r_prev = f_grid[0] + cx_grid[0] * Fx + cy_grid[0] * m - P
    if r_prev == 0.0 and abs(grid[0] - prev) < best_dist:
        best = 0
        best_dist = abs(grid[0] - prev)
    for k in range(N - 1):
        r_next = f_grid[k + 1] + cx_grid[k + 1] * Fx + cy_grid[k + 1] * m - P
        if r_prev * r_next <= 0.0:
            lo = grid[k]
            hi = grid[k + 1]
            if prev < lo:
                dist = lo - prev
            elif prev > hi:
                dist = prev - hi
            else:
                dist = 0.0
            if dist < best_dist:
                best = k
                best_dist = dist
        r_prev = r_next
    if best < 0:
        r0 = f_grid[0] + cx_grid[0] * Fx + cy_grid[0] * m - P
        if abs(r0) <= abs(r_prev):
            return grid[0], True
        return grid[N - 1], True
    lo = grid[best]
    hi = grid[best + 1] if best < N - 1 else grid[best]
    r_lo = balance(c, u, weight, w, lo, m, Fx) - P
    return _bisect(c, u, weight, w, lo, hi, r_lo, P, m, Fx, tol), False


@njit(cache=True)
def _bisect(c, u, weight, w, lo, hi, r_lo, P, m, Fx, tol):
    if r_lo == 0.0:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        r_mid = balance(c, u, weight, w, mid, m, Fx) - P
        if r_mid == 0.0:
            return mid
        if (r_mid > 0.0) == (r_lo > 0.0):
            lo = mid
            r_lo = r_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
