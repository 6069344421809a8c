"""Points of R^n, sign partitions, and the projection onto the nonnegative orthant."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InputError


def as_vec(x, name: str = "x") -> np.ndarray:
    """Return `x` as a fresh 1-D float64 array, rejecting empty or non-finite input."""
    try:
        arr = np.array(x, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not a real vector ({exc})") from None
    if arr.ndim != 1 or arr.size == 0:
        raise InputError(f"{name}: expected a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: coordinates must be finite")
    return arr


def same_dim(*pairs) -> None:
    """Raise DimensionMismatch unless all ``(name, array)`` pairs share a length."""
    n = len(pairs[0][1])
    for name, arr in pairs[1:]:
        if len(arr) != n:
            raise DimensionMismatch(f"{name} has dimension {len(arr)}, expected {n}")


def zeros(n: int) -> np.ndarray:
    return np.zeros(n, dtype=np.float64)


@dataclass(frozen=True)
class IndexPartition:
    """Indices where a point is positive, negative, or zero."""

    plus: frozenset
    minus: frozenset
    bullet: frozenset

    @property
    def n(self) -> int:
        return len(self.plus) + len(self.minus) + len(self.bullet)

    @property
    def free(self) -> frozenset:
        return self.plus | self.minus


class Regime(enum.Enum):
    INTERIOR_K = "InteriorK"
    INTERIOR_NEG_K = "InteriorNegK"
    HAT_K = "HatK"
    DELTA_RN = "DeltaRn"


def _check_tol(zero_tol: float) -> float:
    zero_tol = float(zero_tol)
    if not zero_tol >= 0.0:
        raise InputError("zero_tol must be a nonnegative number")
    return zero_tol


def partition(x, zero_tol: float = 0.0) -> IndexPartition:
    """Split the indices of `x` by sign.

    With ``zero_tol > 0`` every coordinate with ``|x_i| <= zero_tol`` counts as zero.
    """
    x = as_vec(x)
    zero_tol = _check_tol(zero_tol)
    zero = np.abs(x) <= zero_tol
    return IndexPartition(
        plus=frozenset(np.flatnonzero((x > 0) & ~zero).tolist()),
        minus=frozenset(np.flatnonzero((x < 0) & ~zero).tolist()),
        bullet=frozenset(np.flatnonzero(zero).tolist()),
    )


def project(x) -> np.ndarray:
    """Metric projection onto K = {x : x_i >= 0}: clamp negatives to zero."""
    x = as_vec(x)
    # +0.0 turns -0.0 into 0.0 so that the result has no signed zeros
    return np.where(x > 0, x, 0.0) + 0.0


def directional_derivative(x, w, zero_tol: float = 0.0) -> np.ndarray:
    """One-sided directional derivative of the projection at `x` along `w`.

    Coordinates where `x` is positive pass `w` through, negative ones are
    killed, and zero coordinates keep only the positive part of `w`.
    """
    x = as_vec(x)
    w = as_vec(w, "w")
    same_dim(("x", x), ("w", w))
    part = partition(x, zero_tol)
    out = zeros(len(x))
    for i in part.plus:
        out[i] = w[i]
    for i in part.bullet:
        out[i] = max(w[i], 0.0)
    return out + 0.0


def stabilization_radius(x, w, zero_tol: float = 0.0) -> float:
    """Step size below which ``t -> P(x + t w)`` is linear.

    Returns ``min |x_i| / max(||w||, 1)`` over the nonzero coordinates of `x`,
    or ``inf`` when `x` has none.
    """
    x = as_vec(x)
    w = as_vec(w, "w")
    same_dim(("x", x), ("w", w))
    free = sorted(partition(x, zero_tol).free)
    if not free:
        return math.inf
    return float(np.min(np.abs(x[free]))) / max(float(np.linalg.norm(w)), 1.0)


def regime(x, zero_tol: float = 0.0) -> Regime:
    part = partition(x, zero_tol)
    if part.bullet:
        return Regime.DELTA_RN
    if not part.minus:
        return Regime.INTERIOR_K
    if not part.plus:
        return Regime.INTERIOR_NEG_K
    return Regime.HAT_K


def truncate(x, w, zero_tol: float = 0.0) -> np.ndarray:
    """Keep the coordinates of `w` on the positive indices of `x`, zero the rest."""
    x = as_vec(x)
    w = as_vec(w, "w")
    same_dim(("x", x), ("w", w))
    out = zeros(len(x))
    for i in partition(x, zero_tol).plus:
        out[i] = w[i]
    return out + 0.0
