"""Membership in the regular coderivative decided from the limsup quotient.

For a Lipschitz map ``f`` a vector ``z`` belongs to the regular coderivative
at ``xbar`` applied to ``y`` iff

    limsup_{u -> xbar} (<z, u - xbar> - <y, f(u) - f(xbar)>) / ||u - xbar|| <= 0.

For the orthant projection the quotient along ``u = xbar + t d`` does not
depend on ``t`` once ``t`` is below :func:`stabilization_radius`, so the limsup
is a maximum of a positively homogeneous piecewise-linear function over the
unit sphere. That maximum is computed exactly here by enumerating sign
patterns on the zero coordinates of ``xbar``, without ever consulting the box
formula in :mod:`coderivative_sets`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cone_core import as_vec, partition, project, same_dim, stabilization_radius
from .coderivative_sets import Box, Equal, regular_coderivative
from .errors import DegenerateInput, InputError, TooManyBullets

MAX_BULLETS = 20
MERGE_RADIUS = 1e-6
_CHUNK = 1 << 16


def _vecs(xbar, y, z):
    xbar = as_vec(xbar, "xbar")
    y = as_vec(y, "y")
    z = as_vec(z, "z")
    same_dim(("xbar", xbar), ("y", y), ("z", z))
    return xbar, y, z


def quotient(xbar, y, z, u) -> float:
    """(<z, u - xbar> - <y, P(u) - P(xbar)>) / ||u - xbar||."""
    xbar, y, z = _vecs(xbar, y, z)
    u = as_vec(u, "u")
    same_dim(("xbar", xbar), ("u", u))
    du = u - xbar
    norm = float(np.linalg.norm(du))
    if norm == 0.0:
        raise DegenerateInput("u coincides with xbar")
    return float((z @ du - y @ (project(u) - project(xbar))) / norm)


def probe_step(xbar, d) -> float:
    """Half the stabilization radius, capped at 1/2 when every coordinate of xbar is zero."""
    t_star = stabilization_radius(xbar, d)
    return 0.5 * min(t_star, 1.0)


@dataclass(frozen=True)
class QuotientReport:
    """Exact limsup of the quotient, clipped below at zero.

    `orthant_pattern` maps each zero coordinate of ``xbar`` to ``+1`` or
    ``-1``. `argmax_direction` is a unit direction attaining `sup_value` when
    it is positive and the zero vector otherwise.
    """

    sup_value: float
    argmax_direction: np.ndarray
    orthant_pattern: dict
    member: bool


def exact_sup_quotient(xbar, y, z) -> QuotientReport:
    xbar, y, z = _vecs(xbar, y, z)
    part = partition(xbar)
    bullets = sorted(part.bullet)
    if len(bullets) > MAX_BULLETS:
        raise TooManyBullets(f"{len(bullets)} zero coordinates exceed the cap of {MAX_BULLETS}")

    # Q(d) = sum_free c_i d_i + sum_bullet (z_i d_i - y_i max(d_i, 0)).
    # On a fixed orthant the bullet coefficient is z_i - y_i (d_i >= 0) or z_i
    # (d_i <= 0), and the max of a linear form over unit vectors of a product
    # cone is the norm of its projection onto that cone.
    coef = np.zeros(len(xbar))
    for i in part.plus:
        coef[i] = z[i] - y[i]
    for i in part.minus:
        coef[i] = z[i]
    up = np.array([z[i] - y[i] for i in bullets])
    down = np.array([z[i] for i in bullets])
    # rescale before squaring so tiny violations do not underflow to zero
    scale = max(np.max(np.abs(coef)), np.max(np.abs(up), initial=0.0), np.max(np.abs(down), initial=0.0))
    scale = float(scale) if scale > 0 else 1.0
    free_sq = float(np.sum((coef / scale) ** 2))
    gain_up = (np.where(up > 0, up, 0.0) / scale) ** 2
    gain_down = (np.where(down < 0, down, 0.0) / scale) ** 2

    m = len(bullets)
    best_val, best_code = -1.0, 0
    # pattern code k: bit (m-1-j) set means bullet j points down, so increasing
    # k is lexicographic order with '+' before '-'; argmax keeps the first tie
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    for start in range(0, 1 << m, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, 1 << m), dtype=np.int64)
        bits = (codes[:, None] >> shifts[None, :]) & 1
        vals = free_sq + np.where(bits == 1, gain_down, gain_up).sum(axis=1)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best_code = float(vals[k]), int(codes[k])

    pattern = {}
    d = coef.copy()
    for j, i in enumerate(bullets):
        down_j = (best_code >> (m - 1 - j)) & 1
        pattern[i] = -1 if down_j else 1
        if down_j:
            d[i] = down[j] if down[j] < 0 else 0.0
        else:
            d[i] = up[j] if up[j] > 0 else 0.0
    sup_value = scale * math.sqrt(best_val)
    d /= scale
    norm = float(np.linalg.norm(d))
    direction = d / norm if norm > 0 else np.zeros(len(xbar))
    return QuotientReport(sup_value, direction + 0.0, pattern, sup_value <= 0.0)


def sampled_quotient_max(xbar, y, z, samples: int, seed=None) -> float:
    """Largest quotient over random unit directions, each taken at half the stabilization step."""
    xbar, y, z = _vecs(xbar, y, z)
    rng = np.random.default_rng(seed)
    best = -math.inf
    for _ in range(samples):
        d = rng.standard_normal(len(xbar))
        d /= np.linalg.norm(d)
        best = max(best, quotient(xbar, y, z, xbar + probe_step(xbar, d) * d))
    return best


def witness_direction(xbar, y, z):
    """Direction along which the quotient stays positive, or None for members.

    If ``z`` breaks an equality on a nonzero coordinate the direction is
    ``z_i - y_i`` on positive and ``z_i`` on negative coordinates, zero
    elsewhere, scaled to unit length; its quotient equals the norm of that
    residual. Otherwise the
    first zero coordinate with ``z_i > y_i`` (or ``z_i < 0``) is pushed up (or
    down) alone, and the quotient equals the size of the violation.
    """
    xbar, y, z = _vecs(xbar, y, z)
    part = partition(xbar)
    d = np.zeros(len(xbar))
    for i in part.plus:
        d[i] = z[i] - y[i]
    for i in part.minus:
        d[i] = z[i]
    if np.any(d):
        d /= np.max(np.abs(d))  # keeps the norm from underflowing
        return d / np.linalg.norm(d) + 0.0
    for i in sorted(part.bullet):
        if z[i] > y[i]:
            d[i] = 1.0
            return d
        if z[i] < 0:
            d[i] = -1.0
            return d
    return None


def _check_radii(radius_schedule) -> list:
    radii = [float(r) for r in radius_schedule]
    if len(radii) < 2:
        raise InputError("radius schedule needs at least two radii")
    if not all(math.isfinite(r) and r > 0 for r in radii):
        raise InputError("radii must be positive and finite")
    if any(b >= a for a, b in zip(radii, radii[1:])):
        raise InputError("radii must be strictly decreasing")
    return radii


def _pick(s, lam: np.ndarray) -> np.ndarray:
    z = np.zeros(s.n)
    for i, c in enumerate(s.constraints):
        if isinstance(c, Equal):
            z[i] = c.value
        elif isinstance(c, Box):
            z[i] = lam[i] * c.hi
    return z


def _ray_settled(xbar, y, delta, eta, r) -> bool:
    """Whether ``(xbar + s delta, y + s eta)`` keeps one sign pattern and a nonempty set for all s in (0, r].

    Both maps are affine in ``s``, so it suffices to compare the pattern at
    ``r`` with the one just after ``s = 0`` and to require every box bound to
    be nonnegative at both ends.
    """
    start = np.where(xbar != 0, np.sign(xbar), np.sign(delta))
    if not np.array_equal(start, np.sign(xbar + r * delta)):
        return False
    zero = start == 0
    return bool(np.all(y[zero] >= 0) and np.all(y[zero] + r * eta[zero] >= 0))


def limiting_probe(xbar, y, samples: int, radius_schedule, seed=None, merge_radius=MERGE_RADIUS):
    """Limits of regular-coderivative elements taken at points converging to ``(xbar, y)``.

    Each sample fixes directions ``delta``, ``eta`` (some coordinates pinned at
    zero so that zero coordinates of ``xbar`` can persist) and weights
    ``lam`` in [0, 1] (half snapped to a vertex). Along the schedule it forms
    ``x_k = xbar + r_k delta``, ``y_k = y + r_k eta`` and
    ``z_k`` in the regular coderivative at ``(x_k, y_k)``, coordinate
    ``lam_i * hi`` on every box. Once the sign pattern of ``x_k`` settles,
    ``z_k`` is affine in ``r_k``, so the limit is extrapolated from the two
    smallest radii and checked against every other radius of the settled
    tail. Rays whose pattern or nonemptiness would break below the smallest
    radius are discarded, since they do not extend to convergent sequences. Limits are merged greedily within `merge_radius` in the sup norm.
    """
    xbar = as_vec(xbar, "xbar")
    y = as_vec(y, "y")
    same_dim(("xbar", xbar), ("y", y))
    radii = _check_radii(radius_schedule)
    n = len(xbar)
    rng = np.random.default_rng(seed)

    candidates = []
    for _ in range(int(samples)):
        delta = rng.uniform(-1.0, 1.0, n) * (rng.random(n) >= 1 / 3)
        eta = rng.uniform(-1.0, 1.0, n) * (rng.random(n) >= 1 / 3)
        lam = rng.random(n)
        snap = rng.random(n) < 0.5
        lam[snap] = np.round(lam[snap])

        seq = []
        for r in radii:
            xk = xbar + r * delta
            s = regular_coderivative(xk, y + r * eta)
            seq.append(None if s.is_empty() else (partition(xk), _pick(s, lam)))

        last = seq[-1]
        if last is None or not _ray_settled(xbar, y, delta, eta, radii[-1]):
            continue
        tail = [len(radii) - 1]
        for k in range(len(radii) - 2, -1, -1):
            if seq[k] is None or seq[k][0] != last[0]:
                break
            tail.append(k)
        if len(tail) < 2:
            continue
        b, a = tail[0], tail[1]
        zb, za = seq[b][1], seq[a][1]
        limit = zb + (zb - za) * (radii[b] / (radii[a] - radii[b]))
        affine = all(
            np.allclose(seq[k][1], limit + (radii[k] / radii[b]) * (zb - limit), rtol=1e-9, atol=1e-9)
            for k in tail[2:]
        )
        if not affine:
            continue
        limit = limit + 0.0
        if not any(np.max(np.abs(limit - c)) <= merge_radius for c in candidates):
            candidates.append(limit)
    return candidates
