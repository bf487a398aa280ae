"""Phase-exponent data model and the correlation lower bounds.

Every unimodular entry is stored as an integer exponent ``e`` modulo a
root-of-unity order ``L``; its complex value is ``exp(2*pi*i*e/L)``.
Integer storage keeps generated families bit-exact for serialization
and equality checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np


def _frozen_grid(values, ndim: int) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-d exponent array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


def _check_order(order: int) -> None:
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise ValueError(f"order must be a positive integer, got {order!r}")


def _check_range(exponents: np.ndarray, order: int) -> None:
    if exponents.size and (exponents.min() < 0 or exponents.max() >= order):
        raise ValueError(f"exponents must lie in [0, {order})")


@dataclass(frozen=True, eq=False)
class PhaseExponentSequence:
    """A unimodular sequence of period ``len(exponents)`` over the ``order``-th roots of unity."""

    order: int
    exponents: np.ndarray

    def __post_init__(self):
        _check_order(self.order)
        object.__setattr__(self, "order", int(self.order))
        exps = _frozen_grid(self.exponents, 1)
        if exps.size < 1:
            raise ValueError("period must be at least 1")
        _check_range(exps, self.order)
        object.__setattr__(self, "exponents", exps)

    @property
    def period(self) -> int:
        return int(self.exponents.size)

    def values(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.exponents / self.order)

    def __len__(self):
        return self.period

    def __eq__(self, other):
        if not isinstance(other, PhaseExponentSequence):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.exponents, other.exponents)

    def __hash__(self):
        return hash((self.order, self.exponents.tobytes()))


@dataclass(frozen=True, eq=False)
class ComplementaryMatrix:
    """A K x N grid of phase exponents: one flock of K row sequences of length N."""

    order: int
    exponents: np.ndarray

    def __post_init__(self):
        _check_order(self.order)
        object.__setattr__(self, "order", int(self.order))
        exps = _frozen_grid(self.exponents, 2)
        if exps.shape[0] < 1 or exps.shape[1] < 1:
            raise ValueError(f"matrix must be at least 1x1, got shape {exps.shape}")
        _check_range(exps, self.order)
        object.__setattr__(self, "exponents", exps)

    @property
    def flock_size(self) -> int:
        return int(self.exponents.shape[0])

    @property
    def length(self) -> int:
        return int(self.exponents.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.flock_size, self.length

    def values(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.exponents / self.order)

    def row(self, k: int) -> PhaseExponentSequence:
        return PhaseExponentSequence(self.order, self.exponents[k])

    def __eq__(self, other):
        if not isinstance(other, ComplementaryMatrix):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.exponents, other.exponents)

    def __hash__(self):
        return hash((self.order, self.exponents.shape, self.exponents.tobytes()))


@dataclass(frozen=True)
class SequenceFamily:
    """A set of M sequences sharing order and period, with an optional declared theta_max."""

    members: tuple[PhaseExponentSequence, ...]
    declared_theta_max: float | None = None
    name: str = ""
    params: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a family needs at least one member")
        first = members[0]
        for m in members[1:]:
            if m.order != first.order or m.period != first.period:
                raise ValueError("all members must share order and period")
        if self.declared_theta_max is not None and self.declared_theta_max < 0:
            raise ValueError("declared theta_max must be nonnegative")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def order(self) -> int:
        return self.members[0].order

    @property
    def period(self) -> int:
        return self.members[0].period

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def declared(self) -> float | None:
        return self.declared_theta_max

    @property
    def dims(self) -> tuple[int, int, int]:
        """(M, K, N) with K = 1: a sequence set is a QCSS of flock size one."""
        return self.size, 1, self.period

    def exponent_array(self) -> np.ndarray:
        """Exponents as an (M, 1, n) array."""
        return np.stack([m.exponents for m in self.members])[:, None, :]

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


@dataclass(frozen=True)
class QcssFamily:
    """A set of M complementary matrices sharing order, flock size K and length N."""

    members: tuple[ComplementaryMatrix, ...]
    declared_vartheta_max: float | None = None
    name: str = ""
    params: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise ValueError("a family needs at least one member")
        first = members[0]
        for m in members[1:]:
            if m.order != first.order or m.shape != first.shape:
                raise ValueError("all members must share order, flock size and length")
        if self.declared_vartheta_max is not None and self.declared_vartheta_max < 0:
            raise ValueError("declared vartheta_max must be nonnegative")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def order(self) -> int:
        return self.members[0].order

    @property
    def flock_size(self) -> int:
        return self.members[0].flock_size

    @property
    def length(self) -> int:
        return self.members[0].length

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def declared(self) -> float | None:
        return self.declared_vartheta_max

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.size, self.flock_size, self.length

    def is_qcss(self) -> bool:
        """True when M > K > 1, the sizes for which the set counts as a QCSS."""
        return self.size > self.flock_size > 1

    def exponent_array(self) -> np.ndarray:
        """Exponents as an (M, K, N) array."""
        return np.stack([m.exponents for m in self.members])

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i):
        return self.members[i]


Family = SequenceFamily | QcssFamily


def entry_value(seq: PhaseExponentSequence | Sequence[int], t: int, order: int | None = None) -> complex:
    """Complex value exp(2*pi*i*e_t/L) of entry ``t``."""
    if isinstance(seq, PhaseExponentSequence):
        exps, order = seq.exponents, seq.order
    else:
        exps = seq
        if order is None:
            raise ValueError("order is required for a raw exponent list")
    if not 0 <= t < len(exps):
        raise IndexError(f"index {t} out of range for period {len(exps)}")
    return complex(np.exp(2j * np.pi * int(exps[t]) / order))


def qcss_lower_bound(M: int, K: int, N: int) -> float:
    """Lower bound K*N*sqrt((M/K - 1)/(M*N - 1)) on the maximum periodic correlation magnitude."""
    if K < 1 or N < 1:
        raise ValueError("K and N must be positive")
    if M < K:
        raise ValueError(f"bound needs M >= K (got M={M}, K={K})")
    if M * N <= 1:
        raise ValueError("bound needs M*N > 1")
    return K * N * math.sqrt((M / K - 1) / (M * N - 1))


def welch_bound(n: int, M: int) -> float:
    """Periodic Welch bound n*sqrt((M - 1)/(n*M - 1)) for M sequences of period n."""
    if n < 1 or M < 1:
        raise ValueError("n and M must be positive")
    if n * M <= 1:
        raise ValueError("Welch bound needs n*M > 1")
    return n * math.sqrt((M - 1) / (n * M - 1))
