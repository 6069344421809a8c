"""Finitely supported sequences in l2 and the coderivative of the projection onto their positive cone."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .coderivative_sets import Box, BoxProduct, Equal, Zero, canonical
from .errors import InputError, PreconditionViolated


class SparseSeq:
    """Sequence with finitely many nonzero entries; every unlisted index is 0.

    Explicit zero values are dropped on construction, so two sequences compare
    equal exactly when they agree at every index.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries=None):
        clean = {}
        for k, v in dict(entries or {}).items():
            if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
                raise InputError(f"sequence index must be a nonnegative integer, got {k!r}")
            v = float(v)
            if not math.isfinite(v):
                raise InputError(f"sequence value at {k} is not finite")
            if v != 0.0:
                clean[int(k)] = v
        self._entries = MappingProxyType(dict(sorted(clean.items())))

    @property
    def entries(self):
        return self._entries

    @property
    def support(self) -> tuple:
        return tuple(self._entries)

    def __getitem__(self, i: int) -> float:
        return self._entries.get(i, 0.0)

    def __eq__(self, other):
        if not isinstance(other, SparseSeq):
            return NotImplemented
        return dict(self._entries) == dict(other._entries)

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self):
        return f"SparseSeq({dict(self._entries)!r})"

    def __add__(self, other: "SparseSeq") -> "SparseSeq":
        keys = set(self.support) | set(other.support)
        return SparseSeq({k: self[k] + other[k] for k in keys})

    def __sub__(self, other: "SparseSeq") -> "SparseSeq":
        keys = set(self.support) | set(other.support)
        return SparseSeq({k: self[k] - other[k] for k in keys})

    def __mul__(self, s: float) -> "SparseSeq":
        return SparseSeq({k: s * v for k, v in self._entries.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def dot(self, other: "SparseSeq") -> float:
        return math.fsum(v * other[k] for k, v in self._entries.items())

    def norm(self) -> float:
        return math.sqrt(math.fsum(v * v for v in self._entries.values()))


@dataclass(frozen=True)
class SeqPartition:
    """Sign partition of a sequence; the zero set is everything outside `plus` and `minus`."""

    plus: frozenset
    minus: frozenset

    def in_bullet(self, i: int) -> bool:
        return i not in self.plus and i not in self.minus


def seq_partition(x: SparseSeq) -> SeqPartition:
    return SeqPartition(
        plus=frozenset(k for k, v in x.entries.items() if v > 0),
        minus=frozenset(k for k, v in x.entries.items() if v < 0),
    )


def seq_project(x: SparseSeq) -> SparseSeq:
    return SparseSeq({k: v for k, v in x.entries.items() if v > 0})


TAIL = Box(0.0)


@dataclass(frozen=True)
class SeqBoxProduct:
    """Product of coordinate constraints; every unlisted index is constrained by ``TAIL`` = {0}."""

    explicit: MappingProxyType
    tail: Box = field(default=TAIL, init=False)

    def __post_init__(self):
        object.__setattr__(self, "explicit", MappingProxyType(dict(sorted(dict(self.explicit).items()))))

    def __eq__(self, other):
        if not isinstance(other, SeqBoxProduct):
            return NotImplemented
        return dict(self.explicit) == dict(other.explicit)

    def __hash__(self):
        return hash(tuple(self.explicit.items()))

    def constraint(self, i: int):
        return self.explicit.get(i, self.tail)

    def is_empty(self) -> bool:
        return any(isinstance(c, Box) and c.empty for c in self.explicit.values())

    def contains(self, z: SparseSeq, tol: float = 0.0) -> bool:
        if self.is_empty():
            return False
        keys = set(self.explicit) | set(z.support)
        return all(self.constraint(i).admits(z[i], tol) for i in keys)

    def restrict(self, n: int) -> BoxProduct:
        return BoxProduct([self.constraint(i) for i in range(n)])

    def same_set(self, other: "SeqBoxProduct") -> bool:
        if self.is_empty() or other.is_empty():
            return self.is_empty() and other.is_empty()
        keys = set(self.explicit) | set(other.explicit)
        return all(canonical(self.constraint(i)) == canonical(other.constraint(i)) for i in keys)

    def is_singleton(self) -> bool:
        return not self.is_empty() and all(
            not isinstance(canonical(c), Box) for c in self.explicit.values()
        )


def seq_regular_coderivative(xbar: SparseSeq, y: SparseSeq) -> SeqBoxProduct:
    part = seq_partition(xbar)
    explicit = {}
    for i in sorted(set(xbar.support) | set(y.support)):
        if i in part.plus:
            explicit[i] = Equal(y[i])
        elif i in part.minus:
            explicit[i] = Zero()
        else:
            explicit[i] = Box(y[i])
    return SeqBoxProduct(explicit)


def seq_mordukhovich_coderivative(xbar: SparseSeq, y: SparseSeq) -> SeqBoxProduct:
    """Same box formula as :func:`seq_regular_coderivative`.

    Exact as a limiting coderivative only when `y` is nonnegative on the zero
    set of `xbar`; see ``coderivative_sets.limiting_coderivative_pieces``.
    """
    return seq_regular_coderivative(xbar, y)


@dataclass(frozen=True)
class IndexSet:
    """A finite set of indices, or the complement of one when `cofinite` is set."""

    members: frozenset
    cofinite: bool = False

    def __post_init__(self):
        members = frozenset(int(i) for i in self.members)
        if any(i < 0 for i in members):
            raise InputError("indices must be nonnegative")
        object.__setattr__(self, "members", members)

    def __contains__(self, i: int) -> bool:
        return (i in self.members) != self.cofinite

    def complement(self) -> "IndexSet":
        return IndexSet(self.members, not self.cofinite)


def _as_index_set(N) -> IndexSet:
    return N if isinstance(N, IndexSet) else IndexSet(frozenset(N))


def in_RN(x: SparseSeq, N) -> bool:
    N = _as_index_set(N)
    return all(i in N for i in x.support)


def in_KN(x: SparseSeq, N) -> bool:
    N = _as_index_set(N)
    return all(v >= 0 for i, v in x.entries.items() if i in N)


def in_ZN(x: SparseSeq, N) -> bool:
    N = _as_index_set(N)
    if N.cofinite:
        return False  # infinitely many strictly positive entries
    return all(x[i] > 0 for i in N.members) and all(i in N for i in x.support)


def in_boundary_KN(x: SparseSeq, N) -> bool:
    N = _as_index_set(N)
    return in_KN(x, N) and not any(i in N for i in x.support)


def preceq_N(z: SparseSeq, y: SparseSeq, N) -> bool:
    N = _as_index_set(N)
    for i in set(z.support) | set(y.support):
        if i in N:
            if not z[i] <= y[i]:
                return False
        elif z[i] != y[i]:
            return False
    return True


@dataclass(frozen=True)
class PositiveSupportReport:
    """Checks of the closed forms at a point positive exactly on a finite set M."""

    y_in_K_complement: bool
    y_is_member: bool
    membership_equivalence: bool
    order_description_matches: bool
    printed_order_matches: bool
    y_in_boundary: bool
    singleton_holds: bool | None
    notes: tuple


def positive_support_check(xbar: SparseSeq, y: SparseSeq, M) -> PositiveSupportReport:
    """Verify the closed-form descriptions for ``xbar`` strictly positive on M and zero off it.

    * ``y`` lies in its own coderivative iff ``y >= 0`` off M;
    * the coderivative equals ``{z >= 0 off M : z = y on M, z <= y off M}``;
    * when ``y`` vanishes off M the coderivative is ``{y}``.

    `printed_order_matches` tests the variant that imposes ``z <= y`` on M and
    ``z = y`` off M instead; it differs from the true set whenever ``y >= 0``
    off M, which the notes record.
    """
    M = _as_index_set(M)
    if M.cofinite or not M.members:
        raise PreconditionViolated("M must be a nonempty finite index set")
    if not in_ZN(xbar, M):
        raise PreconditionViolated("xbar must be positive on M and zero elsewhere")
    Mbar = M.complement()
    s = seq_regular_coderivative(xbar, y)

    y_in_K = in_KN(y, Mbar)
    y_member = s.contains(y)

    described = {i: Equal(y[i]) for i in M.members}
    for i in y.support:
        if i not in M:
            described[i] = Box(y[i])
    order_matches = s.same_set(SeqBoxProduct(described))

    # the variant set is unbounded below on M, so it is compared through a
    # member that the true set rejects
    def printed_member(z):
        return in_KN(z, Mbar) and preceq_N(z, y, M)

    probe = y - SparseSeq({min(M.members): 1.0})
    printed_matches = printed_member(probe) == s.contains(probe) and printed_member(y) == y_member

    boundary = in_boundary_KN(y, Mbar)
    singleton = None
    if boundary:
        singleton = s.is_singleton() and s.contains(y)

    notes = (
        "zero set of a sequence taken as {i : x_i = 0}",
        "order relation in the set description is taken relative to the complement of M",
    )
    return PositiveSupportReport(
        y_in_K_complement=y_in_K,
        y_is_member=y_member,
        membership_equivalence=y_in_K == y_member,
        order_description_matches=order_matches,
        printed_order_matches=printed_matches,
        y_in_boundary=boundary,
        singleton_holds=singleton,
        notes=notes,
    )


def finite_embed(xbar: SparseSeq, y: SparseSeq, n: int):
    """Densify two sequences into R^n; `n` must exceed every index in their supports."""
    top = max(set(xbar.support) | set(y.support), default=-1)
    if n < 1 or n <= top:
        raise InputError(f"n={n} must exceed the largest support index {top}")
    xs = np.zeros(n)
    ys = np.zeros(n)
    for i, v in xbar.entries.items():
        xs[i] = v
    for i, v in y.entries.items():
        ys[i] = v
    return xs, ys
