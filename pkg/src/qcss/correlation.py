"""Periodic correlation of complementary matrices and the family-wide maximum.

The correlation between K x N matrices A and B at shift tau is

    R(tau) = sum_k sum_t A[k, t] * conj(B[k, (t + tau) mod N])

with the shift applied to the second, conjugated argument. The maximum
over a family skips only the in-phase autocorrelation (same member,
tau = 0), which always equals K*N.

Two engines compute the full (M, M, N) tensor of correlations: ``naive``
sums the products directly for every shift (one matrix product per tau)
and serves as the reference; ``fft`` correlates rows through length-N
transforms. ``auto`` picks ``fft`` once N exceeds 64.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .model import (ComplementaryMatrix, PhaseExponentSequence, QcssFamily, SequenceFamily,
                    qcss_lower_bound)

ENGINES = ("naive", "fft", "auto")
FFT_THRESHOLD = 64
TIE_TOL = 1e-9
HIST_DECIMALS = 6
# complex entries per worker block of the correlation tensor
_BLOCK_BUDGET = 1 << 22


@dataclass(frozen=True, eq=False)
class CorrelationReport:
    """Outcome of a full correlation sweep over a family.

    ``argmax`` is an (A, 3) integer array of (i, j, tau) triples within
    1e-9 of the maximum, in lexicographic order. ``histogram`` maps each
    magnitude rounded to six decimals to its count over the scanned
    triples.
    """

    measured_max: float
    argmax: np.ndarray
    histogram: dict[float, int]
    peak: float
    pair_count: int
    M: int
    K: int
    N: int
    engine: str = "naive"
    declared: float | None = field(default=None)

    @property
    def support(self) -> list[float]:
        return sorted(self.histogram)

    @property
    def bound(self) -> float | None:
        M, K, N = self.M, self.K, self.N
        if M < K or M * N <= 1:
            return None
        return qcss_lower_bound(M, K, N)

    @property
    def ratio(self) -> float | None:
        b = self.bound
        if not b:
            return None
        return self.measured_max / b


def _check_same_shape(A: ComplementaryMatrix, B: ComplementaryMatrix) -> None:
    if A.order != B.order or A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape}/L={A.order} vs {B.shape}/L={B.order}")


def pcf(A: ComplementaryMatrix, B: ComplementaryMatrix, tau: int) -> complex:
    """Periodic correlation of A and B at shift tau."""
    _check_same_shape(A, B)
    N = A.length
    if not 0 <= tau < N:
        raise ValueError(f"shift {tau} outside [0, {N})")
    va, vb = A.values(), B.values()
    return complex(np.sum(va * np.conj(np.roll(vb, -tau, axis=1))))


def pcf_sequence(a: PhaseExponentSequence, b: PhaseExponentSequence, tau: int) -> complex:
    """Periodic correlation of two sequences: the single-row case."""
    if a.order != b.order or a.period != b.period:
        raise ValueError("sequences must share order and period")
    if not 0 <= tau < a.period:
        raise ValueError(f"shift {tau} outside [0, {a.period})")
    va, vb = a.values(), b.values()
    return complex(np.sum(va * np.conj(np.roll(vb, -tau))))


def pcf_spectrum_fft(A: ComplementaryMatrix, B: ComplementaryMatrix) -> np.ndarray:
    """All N shifts of the correlation at once, via row-wise FFTs."""
    _check_same_shape(A, B)
    fa = np.fft.fft(A.values(), axis=1)
    fb = np.fft.fft(B.values(), axis=1)
    # sum_t a*(t) b(t+tau) = ifft(conj(FA) FB); R is its conjugate
    return np.conj(np.fft.ifft(np.sum(np.conj(fa) * fb, axis=0)))


def _as_values(fam) -> np.ndarray:
    if isinstance(fam, (SequenceFamily, QcssFamily)):
        return np.exp(2j * np.pi * fam.exponent_array() / fam.order)
    raise TypeError(f"expected a SequenceFamily or QcssFamily, got {type(fam).__name__}")


def _block_naive(V: np.ndarray, rows: slice) -> np.ndarray:
    M, K, N = V.shape
    left = V[rows].reshape(-1, K * N)
    out = np.empty((left.shape[0], M, N), dtype=complex)
    for tau in range(N):
        shifted = np.conj(np.roll(V, -tau, axis=2)).reshape(M, K * N)
        out[:, :, tau] = left @ shifted.T
    return out


def _block_fft(F: np.ndarray, rows: slice) -> np.ndarray:
    G = np.einsum("ikf,jkf->ijf", np.conj(F[rows]), F)
    return np.conj(np.fft.ifft(G, axis=2))


def resolve_engine(engine: str, N: int) -> str:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
    if engine == "auto":
        return "fft" if N > FFT_THRESHOLD else "naive"
    return engine


def default_workers() -> int:
    env = os.environ.get("THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def correlation_tensor(fam: SequenceFamily | QcssFamily, engine: str = "naive",
                       workers: int | None = None) -> np.ndarray:
    """Complex (M, M, N) array with R[i, j, tau] for every member pair and shift."""
    V = _as_values(fam)
    M, K, N = V.shape
    engine = resolve_engine(engine, N)
    block = max(1, _BLOCK_BUDGET // max(1, M * N))
    slices = [slice(i, min(i + block, M)) for i in range(0, M, block)]
    out = np.empty((M, M, N), dtype=complex)
    if engine == "fft":
        F = np.fft.fft(V, axis=2)
        work = lambda s: _block_fft(F, s)  # noqa: E731
    else:
        work = lambda s: _block_naive(V, s)  # noqa: E731

    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(slices) == 1:
        for s in slices:
            out[s] = work(s)
    else:
        # each block owns a disjoint slice, so the result is independent of scheduling
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for s, res in zip(slices, pool.map(work, slices)):
                out[s] = res
    return out


def measure_theta_max(fam: SequenceFamily | QcssFamily, engine: str = "naive",
                      workers: int | None = None) -> CorrelationReport:
    """Scan every (i, j, tau) except the in-phase autocorrelations and report the maximum."""
    if fam is None or len(fam) == 0:
        raise ValueError("cannot measure an empty family")
    M, K, N = fam.dims
    resolved = resolve_engine(engine, N)
    mags = np.abs(correlation_tensor(fam, resolved, workers))
    scanned = np.ones(mags.shape, dtype=bool)
    idx = np.arange(M)
    scanned[idx, idx, 0] = False

    pair_count = int(scanned.sum())
    if pair_count == 0:
        # a single member of length one has nothing to scan
        measured = 0.0
        argmax = np.empty((0, 3), dtype=np.int64)
        histogram: dict[float, int] = {}
    else:
        vals = mags[scanned]
        measured = float(vals.max())
        argmax = np.argwhere(scanned & (mags >= measured - TIE_TOL)).astype(np.int64)
        keys, counts = np.unique(np.round(vals, HIST_DECIMALS), return_counts=True)
        histogram = {float(k) + 0.0: int(c) for k, c in zip(keys, counts)}
    return CorrelationReport(measured, argmax, histogram, float(K * N), pair_count,
                             M, K, N, resolved, fam.declared)
