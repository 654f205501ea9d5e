"""Dense Hermitian linear algebra for gain adjacency matrices.

Matrices are plain ``numpy`` complex arrays.  Eigenvalues come from a
cyclic Jacobi solver run on the real symmetric embedding
``[[Re H, -Im H], [Im H, Re H]]``, whose spectrum is that of ``H`` with every
eigenvalue doubled.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .core import GainGraph
from .errors import CapExceededError, ConvergenceError, NotHermitianError

SPECTRAL_TOL = 1e-9
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
RYSER_CAP = 12
NAIVE_PERMANENT_CAP = 9
PERM_POLY_CAP = 10


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted in descending order."""

    eigenvalues: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(sorted((float(x) for x in self.eigenvalues), reverse=True))
        object.__setattr__(self, "eigenvalues", vals)

    def __len__(self):
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)

    def __getitem__(self, i):
        return self.eigenvalues[i]

    @property
    def lambda_1(self) -> float:
        return self.eigenvalues[0]

    @property
    def lambda_n(self) -> float:
        return self.eigenvalues[-1]

    @property
    def rho(self) -> float:
        """Spectral radius, max |lambda_i|."""
        if not self.eigenvalues:
            return 0.0
        return max(abs(self.eigenvalues[0]), abs(self.eigenvalues[-1]))

    def as_array(self) -> np.ndarray:
        return np.array(self.eigenvalues)


@dataclass(frozen=True)
class RealPolynomial:
    """Monic polynomial ``x^n + c[1] x^(n-1) + ... + c[n]``; ``coeffs[0] == 1``."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) + 0.0 for c in self.coeffs)  # + 0.0 turns -0.0 into 0.0
        if not coeffs or coeffs[0] != 1.0:
            raise ValueError(f"polynomial must be monic, got leading coefficient {coeffs[:1]}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, x):
        return np.polyval(self.coeffs, x)

    def max_abs_diff(self, other: "RealPolynomial | Sequence[float]") -> float:
        a = np.asarray(self.coeffs)
        b = np.asarray(other.coeffs if isinstance(other, RealPolynomial) else other, dtype=float)
        if a.shape != b.shape:
            raise ValueError(f"degree mismatch: {len(a) - 1} vs {len(b) - 1}")
        return float(np.max(np.abs(a - b))) if len(a) else 0.0

    def tolist(self) -> list[float]:
        return list(self.coeffs)


def adjacency_matrix(graph: GainGraph) -> np.ndarray:
    """``A(Phi)``: ``a_uv`` is the gain of ``u -> v`` for adjacent pairs, else 0."""
    a = np.zeros((graph.n, graph.n), dtype=complex)
    for u, v, g in graph.edges:
        z = g.complex_value()
        a[u, v] = z
        a[v, u] = z.conjugate()
    return a


def check_hermitian(h: np.ndarray, tol: float = JACOBI_TOL) -> None:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.linalg.norm(h)))
    dev = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if dev > tol * scale:
        raise NotHermitianError(f"matrix deviates from Hermitian by {dev:.3e}")


@lru_cache(maxsize=None)
def _round_robin(size: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Pairings for a cyclic Jacobi sweep: every index pair exactly once.

    Circle-method tournament; each round is a set of disjoint pairs that can
    be rotated simultaneously.  ``size`` must be even.
    """
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        half = size // 2
        p = np.array([min(players[i], players[size - 1 - i]) for i in range(half)])
        q = np.array([max(players[i], players[size - 1 - i]) for i in range(half)])
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigvalsh(
    s: np.ndarray,
    scale: float | None = None,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius norm drops below
    ``tol * scale`` (``scale`` defaults to the Frobenius norm of ``s``).
    Returns the eigenvalues in descending order.
    """
    a = np.array(s, dtype=float)
    size = a.shape[0]
    if size == 0:
        return np.zeros(0)
    if scale is None:
        scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return np.zeros(size)
    if size % 2:
        # pad with an isolated zero so the tournament pairing is complete
        a = np.pad(a, ((0, 1), (0, 1)))
    padded = a.shape[0]
    threshold = tol * scale
    rounds = _round_robin(padded)
    for _ in range(max_sweeps):
        if _off_norm(a) < threshold:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            with np.errstate(over="ignore"):
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            sn = t * c
            rot = np.eye(padded)
            rot[p, p] = c
            rot[q, q] = c
            rot[p, q] = sn
            rot[q, p] = -sn
            a = rot.T @ a @ rot
            a = 0.5 * (a + a.T)
    else:
        if _off_norm(a) >= threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    # the padding row is never rotated, so it stays an isolated zero
    vals = np.diag(a)[:size]
    return np.sort(vals)[::-1]


def real_embedding(h: np.ndarray) -> np.ndarray:
    re, im = h.real, h.imag
    return np.block([[re, -im], [im, re]])


def embedded_eigenvalues(h: np.ndarray) -> np.ndarray:
    """All ``2n`` eigenvalues of the real embedding of ``h``, descending."""
    h = np.asarray(h, dtype=complex)
    check_hermitian(h)
    scale = float(np.linalg.norm(h))
    return jacobi_eigvalsh(real_embedding(h), scale=scale)


def eigenvalues(h: np.ndarray) -> Spectrum:
    """Spectrum of a Hermitian matrix, descending."""
    doubled = embedded_eigenvalues(h)
    return Spectrum(tuple(doubled[0::2]))


def spectrum(graph: GainGraph) -> Spectrum:
    return eigenvalues(adjacency_matrix(graph))


def walk_gain_matrix(graph: GainGraph, k: int) -> np.ndarray:
    """``A(Phi)^k``; entry ``(i, j)`` sums the gains of all length-``k`` walks ``i -> j``."""
    if k < 0:
        raise ValueError(f"walk length must be non-negative, got {k}")
    a = adjacency_matrix(graph)
    out = np.eye(graph.n, dtype=complex)
    for _ in range(k):
        out = out @ a
    return out


def poly_from_roots(roots: Sequence[float]) -> RealPolynomial:
    coeffs = np.array([1.0])
    for r in roots:
        coeffs = np.append(coeffs, 0.0) - r * np.concatenate(([0.0], coeffs))
    return RealPolynomial(tuple(coeffs))


def char_poly_numeric(graph: GainGraph) -> RealPolynomial:
    """``det(xI - A(Phi))`` expanded from the computed eigenvalues."""
    return poly_from_roots(spectrum(graph).eigenvalues)


@lru_cache(maxsize=None)
def _subset_masks(n: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(1 << n)
    masks = ((idx[:, None] >> np.arange(n)) & 1).astype(float)
    signs = np.where((n - masks.sum(axis=1)) % 2 == 0, 1.0, -1.0)
    return masks, signs


def permanent(m: np.ndarray, cap: int = RYSER_CAP) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula.

    ``per(M) = sum_S (-1)^(n-|S|) prod_i sum_{j in S} m_ij`` over all column
    subsets ``S``; evaluated for every subset at once.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if n > cap:
        raise CapExceededError("Ryser permanent", n, cap)
    if n == 0:
        return 1 + 0j
    masks, signs = _subset_masks(n)
    row_sums = masks @ m.T
    return complex(np.sum(signs * np.prod(row_sums, axis=1)))


def permanent_naive(m: np.ndarray, cap: int = NAIVE_PERMANENT_CAP) -> complex:
    """Permanent as the plain sum over all permutations (reference oracle)."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    if n > cap:
        raise CapExceededError("naive permanent", n, cap)
    rows = np.arange(n)
    total = 0j
    for perm in permutations(range(n)):
        total += np.prod(m[rows, list(perm)])
    return complex(total)


def perm_poly_numeric(graph: GainGraph, cap: int = PERM_POLY_CAP) -> RealPolynomial:
    """``per(xI - A(Phi))`` from the permanents of all principal submatrices.

    The coefficient of ``x^(n-i)`` is ``(-1)^i`` times the sum of
    ``per(A[S])`` over ``i``-subsets ``S``.
    """
    n = graph.n
    if n > cap:
        raise CapExceededError("numeric permanental polynomial", n, cap)
    a = adjacency_matrix(graph)
    coeffs = [1.0]
    for i in range(1, n + 1):
        total = 0j
        for s in combinations(range(n), i):
            idx = list(s)
            total += permanent(a[np.ix_(idx, idx)])
        if abs(total.imag) > SPECTRAL_TOL * max(1.0, abs(total)):
            raise ArithmeticError(
                f"permanental coefficient {i} has imaginary part {total.imag:.3e}"
            )
        coeffs.append((-1) ** i * total.real)
    return RealPolynomial(tuple(coeffs))


def _spectral_scale(*spectra: Spectrum) -> float:
    return max([1.0] + [s.rho for s in spectra])


def spectra_equal(s1: Spectrum, s2: Spectrum, tol: float = SPECTRAL_TOL) -> bool:
    """Pairwise comparison of sorted spectra, tolerance scaled by ``max(1, rho)``."""
    if len(s1) != len(s2):
        raise ValueError(f"spectra have different lengths: {len(s1)} vs {len(s2)}")
    bound = tol * _spectral_scale(s1, s2)
    return all(abs(x - y) <= bound for x, y in zip(s1, s2))


def spectrum_symmetric(s: Spectrum, tol: float = SPECTRAL_TOL) -> bool:
    """True iff the eigenvalue multiset equals its negation."""
    vals = s.eigenvalues
    bound = tol * _spectral_scale(s)
    return all(abs(vals[i] + vals[-1 - i]) <= bound for i in range(len(vals)))


def eigenvalue_sums(s: Spectrum) -> tuple[float, float]:
    """``(sum lambda_i, sum lambda_i^2)``; ``(0, 2m)`` for any gain graph."""
    arr = s.as_array()
    return float(arr.sum()), float((arr**2).sum())
