"""Coderivatives of the orthant projection as products of coordinate sets.

At a point ``xbar`` and a dual direction ``y`` the regular coderivative is the
product over coordinates of

* ``{y_i}`` where ``xbar_i > 0``,
* ``{0}`` where ``xbar_i < 0``,
* ``[0, y_i]`` where ``xbar_i = 0`` (empty when ``y_i < 0``).

:class:`BoxProduct` stores such a product exactly and answers membership,
emptiness and vertex queries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .cone_core import (
    IndexPartition,
    Regime,
    as_vec,
    partition,
    project,
    regime,
    same_dim,
    truncate,
    zeros,
)
from .errors import EmptySet, PreconditionViolated, TooManyBoxes

MAX_BOXES = 20


@dataclass(frozen=True)
class Equal:
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value) + 0.0)

    def admits(self, v: float, tol: float = 0.0) -> bool:
        return abs(v - self.value) <= tol


@dataclass(frozen=True)
class Zero:
    def admits(self, v: float, tol: float = 0.0) -> bool:
        return abs(v) <= tol


@dataclass(frozen=True)
class Box:
    """The interval ``[0, hi]``; empty when ``hi < 0``."""

    hi: float
    lo: float = field(default=0.0, init=False)

    def __post_init__(self):
        object.__setattr__(self, "hi", float(self.hi) + 0.0)

    @property
    def empty(self) -> bool:
        return self.hi < 0

    def admits(self, v: float, tol: float = 0.0) -> bool:
        return not self.empty and -tol <= v <= self.hi + tol


CoordConstraint = Union[Equal, Zero, Box]


def canonical(c: CoordConstraint) -> CoordConstraint:
    """Normal form in which every description of ``{0}`` becomes ``Zero()``."""
    if isinstance(c, Equal) and c.value == 0:
        return Zero()
    if isinstance(c, Box) and c.hi == 0:
        return Zero()
    return c


@dataclass(frozen=True)
class BoxProduct:
    """Cartesian product of per-coordinate constraints."""

    constraints: tuple

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def n(self) -> int:
        return len(self.constraints)

    def is_empty(self) -> bool:
        return any(isinstance(c, Box) and c.empty for c in self.constraints)

    def contains(self, z, tol: float = 0.0) -> bool:
        z = as_vec(z, "z")
        same_dim(("constraints", self.constraints), ("z", z))
        if self.is_empty():
            return False
        return all(c.admits(float(v), tol) for c, v in zip(self.constraints, z))

    def same_set(self, other: "BoxProduct") -> bool:
        """Set equality, as opposed to ``==`` which compares representations."""
        if self.n != other.n:
            return False
        if self.is_empty() or other.is_empty():
            return self.is_empty() and other.is_empty()
        return [canonical(c) for c in self.constraints] == [
            canonical(c) for c in other.constraints
        ]

    def is_singleton(self) -> bool:
        return not self.is_empty() and all(
            not isinstance(canonical(c), Box) for c in self.constraints
        )

    def extreme_points(self) -> list:
        if self.is_empty():
            raise EmptySet("the set is empty and has no extreme points")
        base = zeros(self.n)
        boxes = []
        for i, c in enumerate(self.constraints):
            if isinstance(c, Equal):
                base[i] = c.value
            elif isinstance(c, Box) and c.hi > 0:
                boxes.append(i)
        if len(boxes) > MAX_BOXES:
            raise TooManyBoxes(f"{len(boxes)} nondegenerate boxes exceed the cap of {MAX_BOXES}")
        points = []
        for choice in itertools.product((False, True), repeat=len(boxes)):
            p = base.copy()
            for i, upper in zip(boxes, choice):
                if upper:
                    p[i] = self.constraints[i].hi
            points.append(p + 0.0)
        return points

    def random_member(self, rng: np.random.Generator, snap: float = 0.0) -> np.ndarray:
        """Draw a member; each box coordinate lands on an endpoint with probability `snap`."""
        if self.is_empty():
            raise EmptySet("cannot sample from an empty set")
        z = zeros(self.n)
        for i, c in enumerate(self.constraints):
            if isinstance(c, Equal):
                z[i] = c.value
            elif isinstance(c, Box):
                if rng.random() < snap:
                    z[i] = c.hi if rng.random() < 0.5 else 0.0
                else:
                    z[i] = rng.uniform(0.0, c.hi)
        return z + 0.0


def contains(s: BoxProduct, z, tol: float = 0.0) -> bool:
    return s.contains(z, tol)


def is_empty(s: BoxProduct) -> bool:
    return s.is_empty()


def extreme_points(s: BoxProduct) -> list:
    return s.extreme_points()


def _constraints(part: IndexPartition, y: np.ndarray) -> list:
    out = []
    for i, yi in enumerate(y.tolist()):
        if i in part.plus:
            out.append(Equal(yi))
        elif i in part.minus:
            out.append(Zero())
        else:
            out.append(Box(yi))
    return out


def regular_coderivative(xbar, y, zero_tol: float = 0.0) -> BoxProduct:
    """Regular (Fréchet) coderivative of the orthant projection at `xbar` applied to `y`."""
    xbar = as_vec(xbar, "xbar")
    y = as_vec(y, "y")
    same_dim(("xbar", xbar), ("y", y))
    return BoxProduct(_constraints(partition(xbar, zero_tol), y))


def mordukhovich_coderivative(xbar, y, zero_tol: float = 0.0) -> BoxProduct:
    """Mordukhovich coderivative, reported through the same box formula as the regular one.

    The two sets agree whenever ``y_i >= 0`` on every zero coordinate of
    `xbar`. If some zero coordinate carries ``y_i < 0`` the regular set is empty
    while the true limiting set is the finite union returned by
    :func:`limiting_coderivative_pieces`.
    """
    return regular_coderivative(xbar, y, zero_tol)


def limiting_coderivative_pieces(xbar, y, zero_tol: float = 0.0) -> list:
    """Exact limiting coderivative as a union of box products.

    On a zero coordinate of `xbar` the one-dimensional limiting set is
    ``[0, y_i]`` for ``y_i >= 0`` and ``{0, y_i}`` for ``y_i < 0``; the graph of
    the projection is a product of one-dimensional graphs, so the full set is
    the product of those coordinate sets.
    """
    xbar = as_vec(xbar, "xbar")
    y = as_vec(y, "y")
    same_dim(("xbar", xbar), ("y", y))
    base = _constraints(partition(xbar, zero_tol), y)
    split = [i for i, c in enumerate(base) if isinstance(c, Box) and c.empty]
    if len(split) > MAX_BOXES:
        raise TooManyBoxes(f"{len(split)} split coordinates exceed the cap of {MAX_BOXES}")
    pieces = []
    for choice in itertools.product((True, False), repeat=len(split)):
        cs = list(base)
        for i, keep_y in zip(split, choice):
            cs[i] = Equal(float(y[i])) if keep_y else Zero()
        pieces.append(BoxProduct(cs))
    return pieces


@dataclass(frozen=True)
class SpecialCase:
    tag: str
    predicted: BoxProduct


def _singleton(v) -> BoxProduct:
    return BoxProduct([Equal(float(c)) for c in v])


def special_cases(xbar, y) -> list:
    """All closed-form special cases that apply to ``(xbar, y)``.

    Points with no zero coordinate get exactly one of ``interior_K``,
    ``interior_negK``, ``hat_K``. Points with a zero coordinate get every one of
    ``zero_direction`` (y = 0), ``negative_on_zero_set`` (empty set),
    ``self_direction`` (y = xbar) and ``origin`` (xbar = 0) that applies. Every
    prediction must describe the same set as :func:`regular_coderivative`.
    """
    xbar = as_vec(xbar, "xbar")
    y = as_vec(y, "y")
    same_dim(("xbar", xbar), ("y", y))
    n = len(xbar)
    theta = zeros(n)
    cases = []
    r = regime(xbar)
    if r is Regime.INTERIOR_K:
        cases.append(SpecialCase("interior_K", _singleton(y)))
    elif r is Regime.INTERIOR_NEG_K:
        cases.append(SpecialCase("interior_negK", _singleton(theta)))
    elif r is Regime.HAT_K:
        cases.append(SpecialCase("hat_K", _singleton(truncate(xbar, y))))
    else:
        part = partition(xbar)
        if not np.any(y):
            cases.append(SpecialCase("zero_direction", _singleton(theta)))
        if any(y[i] < 0 for i in part.bullet):
            cases.append(SpecialCase("negative_on_zero_set", BoxProduct([Box(-1.0)] * n)))
        if np.array_equal(y, xbar):
            cases.append(SpecialCase("self_direction", _singleton(project(xbar))))
        if not np.any(xbar):
            cases.append(SpecialCase("origin", BoxProduct([Box(float(v)) for v in y])))
    return cases


def scaled_excluded(xbar, y, lam: float) -> bool:
    """True when ``lam * y`` lies outside the regular coderivative at ``(xbar, y)``.

    Guaranteed for every ``lam < 1`` as soon as `y` is negative on some zero
    coordinate of `xbar`.
    """
    y = as_vec(y, "y")
    return not regular_coderivative(xbar, y).contains(lam * y)


def projection_self_member(xbar) -> np.ndarray:
    """Return a nonzero member of the coderivative at ``(xbar, xbar)``.

    For `xbar` with a zero coordinate and a positive one, ``P(xbar)`` is such a
    member, so the set is neither empty nor free of nonzero points.
    """
    xbar = as_vec(xbar, "xbar")
    part = partition(xbar)
    if not part.bullet:
        raise PreconditionViolated("xbar must have at least one zero coordinate")
    if not part.plus:
        raise PreconditionViolated("xbar must have at least one positive coordinate")
    z = project(xbar)
    assert np.any(z) and regular_coderivative(xbar, xbar).contains(z, 0.0)
    return z
