"""Rewriting a period-n sequence as a K x N matrix by column interleaving, and back."""

from __future__ import annotations

import warnings

from .model import ComplementaryMatrix, PhaseExponentSequence, QcssFamily, SequenceFamily


class FamilySizeWarning(UserWarning):
    """The interleaved set has M <= K, so it does not qualify as a QCSS."""


def interleave(seq: PhaseExponentSequence, K: int) -> ComplementaryMatrix:
    """Matrix with entry (k, t) = seq[k + K*t] for k < K, t < N = n/K."""
    n = seq.period
    if K <= 1:
        raise ValueError(f"flock size K={K} must exceed 1")
    if n % K:
        raise ValueError(f"K={K} does not divide the period {n}")
    if n // K <= 1:
        raise ValueError(f"length N={n // K} must exceed 1")
    # row-major reshape to (N, K) puts seq[k + K*t] at [t, k]
    return ComplementaryMatrix(seq.order, seq.exponents.reshape(n // K, K).T)


def flatten(mat: ComplementaryMatrix) -> PhaseExponentSequence:
    """Inverse of :func:`interleave`: seq[k + K*t] = mat[k, t]."""
    return PhaseExponentSequence(mat.order, mat.exponents.T.reshape(-1))


def interleave_family(fam: SequenceFamily, K: int) -> QcssFamily:
    """Interleave every member; the declared bound carries over unchanged."""
    if fam.size <= K:
        warnings.warn(f"family size M={fam.size} <= K={K}: the result is not a QCSS",
                      FamilySizeWarning, stacklevel=2)
    members = tuple(interleave(s, K) for s in fam.members)
    params = dict(fam.params)
    kind = params.get("kind")
    params["kind"] = f"{kind}-interleaved" if kind else "interleaved"
    params["flock"] = str(K)
    name = f"{fam.name}-interleaved" if fam.name else "interleaved"
    return QcssFamily(members, fam.declared_theta_max, name=name, params=params)
