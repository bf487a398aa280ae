"""Generators for the character-based sequence family and the two direct QCSS families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .field import FieldContext
from .model import ComplementaryMatrix, PhaseExponentSequence, QcssFamily, SequenceFamily


@dataclass(frozen=True)
class Permutation:
    """A bijection on [0, size), stored as its value table."""

    mapping: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        mapping = tuple(int(v) for v in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError("mapping is not a bijection on [0, N)")
        object.__setattr__(self, "mapping", mapping)

    @property
    def size(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def fixes_zero(self) -> bool:
        return self.mapping[0] == 0

    def describe(self) -> str:
        return self.label or " ".join(map(str, self.mapping))

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)), "identity")

    @classmethod
    def reversal(cls, size: int) -> "Permutation":
        """x -> -x mod N: reverses the nonzero residues and keeps 0 in place."""
        return cls(tuple((-x) % size for x in range(size)), "reversal")

    @classmethod
    def from_text(cls, text: str) -> "Permutation":
        return cls(tuple(int(tok) for tok in text.split()))

    @classmethod
    def from_spec(cls, spec: str, size: int) -> "Permutation":
        """Resolve ``identity``, ``reversal`` or a path to a whitespace-separated table."""
        if spec == "identity":
            return cls.identity(size)
        if spec == "reversal":
            return cls.reversal(size)
        perm = cls.from_text(Path(spec).read_text())
        if perm.size != size:
            raise ValueError(f"permutation in {spec} has size {perm.size}, expected {size}")
        return perm


def smallest_prime_factor(N: int) -> int:
    if N <= 1:
        raise ValueError(f"N={N} has no prime factor")
    if N % 2 == 0:
        return 2
    d = 3
    while d * d <= N:
        if N % d == 0:
            return d
        d += 2
    return N


def solve_linear_congruence(a: int, b: int, m: int) -> list[int]:
    """All y in [0, m) with a*y = b (mod m), ascending."""
    if m <= 1:
        raise ValueError("modulus must exceed 1")
    g = math.gcd(a, m)
    if b % g:
        return []
    m_g = m // g
    y0 = (b // g) * pow(a // g, -1, m_g) % m_g if m_g > 1 else 0
    return [y0 + k * m_g for k in range(g)]


def gen_prop1_family(ctx: FieldContext) -> SequenceFamily:
    """The q-1 sequences s_j(t) = chi_1(alpha^t) * phi_j(alpha^t), t in [0, q-2].

    Entries live in the L-th roots of unity with L = p(q-1); the additive
    part contributes Tr(alpha^t) * (q-1) and the multiplicative part
    (j*t mod (q-1)) * p.
    """
    p, q = ctx.p, ctx.q
    if q < 4:
        raise ValueError(f"q={q} is too small; need q >= 4")
    m = q - 1
    order = p * m
    t = np.arange(m)
    add_part = ctx.trace[ctx.exp] * m
    members = []
    for j in range(m):
        exps = (add_part + ((j * t) % m) * p) % order
        members.append(PhaseExponentSequence(order, exps))
    params = {"kind": "prop1", "p": str(p), "n": str(ctx.n), "q": str(q)}
    return SequenceFamily(tuple(members), math.sqrt(q), name="prop1", params=params)


def _check_length(N: int) -> None:
    if N <= 1 or N % 2 == 0:
        raise ValueError(f"length N={N} must be an odd integer > 1")


def _thm41_grid(N: int, rho: Permutation, a: int, b: int) -> np.ndarray:
    rows = (a * np.array(rho.mapping, dtype=np.int64) + b) % N
    return np.outer(rows, np.arange(N)) % N


def _thm41_params(N: int, rho: Permutation, kind: str) -> dict[str, str]:
    return {"kind": kind, "mu_min": str(smallest_prime_factor(N)), "rho": rho.describe()}


def gen_thm41_family(N: int, rho: Permutation | None = None) -> QcssFamily:
    """((mu-1)N, N, N, N)-QCSS of N x N matrices with entry exponent ((a*rho(i) + b) * j) mod N.

    Members are ordered b-major: (a=1, b=0), (a=2, b=0), ..., (a=mu-1, b=N-1).
    """
    _check_length(N)
    rho = Permutation.identity(N) if rho is None else rho
    if rho.size != N:
        raise ValueError(f"permutation size {rho.size} does not match N={N}")
    mu = smallest_prime_factor(N)
    members = tuple(ComplementaryMatrix(N, _thm41_grid(N, rho, a, b))
                    for b in range(N) for a in range(1, mu))
    return QcssFamily(members, float(N), name="thm41", params=_thm41_params(N, rho, "thm41"))


def _drop_row(fam: QcssFamily, row: int, name: str, params: dict[str, str]) -> QcssFamily:
    members = tuple(ComplementaryMatrix(m.order, np.delete(m.exponents, row, axis=0))
                    for m in fam.members)
    return QcssFamily(members, fam.declared_vartheta_max, name=name, params=params)


def gen_thm42_family(N: int, rho: Permutation | None = None) -> QcssFamily:
    """((mu-1)N, N-1, N, N)-QCSS: the row-complete family without the row where rho(i) = 0."""
    _check_length(N)
    rho = Permutation.identity(N) if rho is None else rho
    if rho.size != N:
        raise ValueError(f"permutation size {rho.size} does not match N={N}")
    if not rho.fixes_zero():
        raise ValueError("the permutation must fix 0")
    full = gen_thm41_family(N, rho)
    return _drop_row(full, 0, "thm42", _thm41_params(N, rho, "thm42"))


def gen_thm41_row_deleted(N: int, rho: Permutation | None = None,
                          deleted_row: int = 1) -> QcssFamily:
    """Row-complete family with row ``deleted_row`` (1-based) removed from every matrix."""
    _check_length(N)
    if not 1 <= deleted_row <= N:
        raise ValueError(f"row {deleted_row} is outside [1, {N}]")
    full = gen_thm41_family(N, rho)
    rho = Permutation.identity(N) if rho is None else rho
    params = _thm41_params(N, rho, "thm41-del")
    params["deleted_row"] = str(deleted_row)
    return _drop_row(full, deleted_row - 1, "thm41-del", params)
