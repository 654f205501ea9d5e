"""Eigenvalue bounds and spectral characterizations of balance and bipartiteness.

Each check returns a small report object.  Where a statement relates a
numerical quantity (spectral radius, spectrum) to a combinatorial one
(balance, bipartiteness), the report keeps both so a disagreement is
visible instead of being silently resolved.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .combinatorics import ENUMERATION_CAP, count_cycles, enumerate_cycles, sum_re_cycles
from .core import (
    GainGraph,
    GainGraphError,
    SwitchingFunction,
    UnitGain,
    is_balanced,
    is_bipartite,
    is_connected,
    negate,
    switch,
)
from .families import random_switching
from .linalg import (
    SPECTRAL_TOL,
    Spectrum,
    eigenvalues,
    spectra_equal,
    spectrum,
    spectrum_symmetric,
    walk_gain_matrix,
)

log = logging.getLogger(__name__)

RHO_TOL = 1e-8

Interval = tuple[float, float]


def edge_count_bounds(n: int, m: int) -> tuple[Interval, Interval]:
    """Intervals containing ``lambda_1`` and ``lambda_n`` for any gain graph with ``n`` vertices and ``m`` edges."""
    if n < 2:
        raise ValueError(f"bounds need at least 2 vertices, got n={n}")
    if not 0 <= m <= n * (n - 1) // 2:
        raise ValueError(f"edge count {m} impossible on {n} vertices")
    lo = math.sqrt(2.0 * m / (n * (n - 1)))
    hi = math.sqrt(2.0 * m * (n - 1) / n)
    return (lo, hi), (-hi, -lo)


def wolkowicz_bounds(h: np.ndarray) -> tuple[Interval, Interval]:
    """Trace bounds for a matrix with real spectrum.

    With ``r = tr(H)/n`` and ``s^2 = tr(H^2)/n - r^2``:
    ``r + s/sqrt(n-1) <= lambda_1 <= r + s sqrt(n-1)`` and
    ``r - s sqrt(n-1) <= lambda_n <= r - s/sqrt(n-1)``.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if n < 2:
        raise ValueError(f"bounds need order at least 2, got {n}")
    r = float(np.trace(h).real) / n
    s2 = float(np.trace(h @ h).real) / n - r * r
    s = math.sqrt(max(s2, 0.0))
    root = math.sqrt(n - 1)
    return (r + s / root, r + s * root), (r - s * root, r - s / root)


def triangle_sum(graph: GainGraph) -> float:
    """Sum of ``Re(phi(C))`` over all triangles."""
    return sum(UnitGain(theta).real for _, theta in enumerate_cycles(graph, 3))


def triangle_bound(graph: GainGraph) -> float:
    """Lower bound ``cbrt((6/n) * sum over triangles of Re(C))`` for ``lambda_1``.

    The cube root is signed, so a negative triangle sum gives a negative bound.
    """
    if graph.n == 0:
        return 0.0
    return float(np.cbrt(6.0 * triangle_sum(graph) / graph.n))


def degree_pair_bound(graph: GainGraph) -> float:
    """Lower bound for ``sigma = max |lambda_i|`` from pairs of vertex degrees.

    For each pair ``i < j`` this is ``lambda_1`` of the 2x2 principal block of
    ``A(Phi)^2``, i.e. ``(d_i + d_j + sqrt((d_i - d_j)^2 + 4|w_ij|^2)) / 2``
    where ``w_ij`` sums the gains of the 2-walks from ``i`` to ``j``; the
    bound is the square root of the largest such value.
    """
    n = graph.n
    if n < 2:
        raise ValueError(f"bound needs at least 2 vertices, got n={n}")
    w = np.abs(walk_gain_matrix(graph, 2)) ** 2
    d = np.array(graph.degrees, dtype=float)
    di, dj = np.triu_indices(n, 1)
    inner = d[di] + d[dj] + np.sqrt((d[di] - d[dj]) ** 2 + 4.0 * w[di, dj])
    return float(np.sqrt(inner.max() / 2.0))


@dataclass(frozen=True)
class BoundsReport:
    lambda1_interval: Interval
    lambdaN_interval: Interval
    triangle_lower_bound: float
    degree_pair_lower_bound: float
    observed: tuple[float, float, float]  # (lambda_1, lambda_n, sigma)
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def all_satisfied(self) -> bool:
        return all(self.checks.values())


def bounds_report(graph: GainGraph, slack: float = SPECTRAL_TOL, spec: Spectrum | None = None) -> BoundsReport:
    """Evaluate every eigenvalue bound on ``graph`` against its computed spectrum."""
    spec = spec if spec is not None else spectrum(graph)
    l1_int, ln_int = edge_count_bounds(graph.n, graph.m)
    tri = triangle_bound(graph)
    deg = degree_pair_bound(graph)
    l1, ln, sigma = spec.lambda_1, spec.lambda_n, spec.rho
    checks = {
        "lambda_1 in edge-count interval": l1_int[0] - slack <= l1 <= l1_int[1] + slack,
        "lambda_n in edge-count interval": ln_int[0] - slack <= ln <= ln_int[1] + slack,
        "lambda_1 >= triangle bound": l1 >= tri - slack,
        "sigma >= degree-pair bound": sigma >= deg - slack,
    }
    return BoundsReport(l1_int, ln_int, tri, deg, (l1, ln, sigma), checks)


def interlacing_holds(h: np.ndarray, rows, slack: float = SPECTRAL_TOL) -> bool:
    """Cauchy interlacing for the principal submatrix of ``h`` on ``rows``.

    ``lambda_{n+k-r}(H) <= lambda_k(H_r) <= lambda_k(H)`` for ``1 <= k <= r``.
    """
    h = np.asarray(h, dtype=complex)
    idx = sorted(rows)
    n, r = h.shape[0], len(idx)
    full = eigenvalues(h).eigenvalues
    sub = eigenvalues(h[np.ix_(idx, idx)]).eigenvalues
    return all(full[n + k - r - 1] - slack <= sub[k - 1] <= full[k - 1] + slack for k in range(1, r + 1))


@dataclass(frozen=True)
class SymmetryReport:
    symmetric: bool
    bipartite: bool
    odd_cycle_sums: dict[int, float]
    odd_cycle_counts: dict[int, int]
    hypothesis_holds: bool  # every odd length that has cycles has a nonzero Re-sum
    bipartite_implies_symmetric: bool
    sufficiency_holds: bool  # symmetric and hypothesis => bipartite

    @property
    def consistent(self) -> bool:
        return self.bipartite_implies_symmetric and self.sufficiency_holds


def symmetry_analysis(
    graph: GainGraph, tol: float = SPECTRAL_TOL, cap: int = ENUMERATION_CAP, spec: Spectrum | None = None
) -> SymmetryReport:
    """Relate spectral symmetry about 0 to bipartiteness.

    A bipartite graph always has a symmetric spectrum.  Conversely, a
    symmetric spectrum forces bipartiteness when, for every odd length with
    at least one cycle, the real parts of the cycle gains do not sum to 0.
    """
    spec = spec if spec is not None else spectrum(graph)
    symmetric = spectrum_symmetric(spec, tol)
    bipartite = is_bipartite(graph)[0]
    sums, counts = {}, {}
    for i in range(3, graph.n + 1, 2):
        sums[i] = sum_re_cycles(graph, i, cap)
        counts[i] = count_cycles(graph, i, cap)
    hypothesis = all(abs(sums[i]) > tol for i in sums if counts[i])
    return SymmetryReport(
        symmetric=symmetric,
        bipartite=bipartite,
        odd_cycle_sums=sums,
        odd_cycle_counts=counts,
        hypothesis_holds=hypothesis,
        bipartite_implies_symmetric=symmetric or not bipartite,
        sufficiency_holds=bipartite or not (symmetric and hypothesis),
    )


@dataclass(frozen=True)
class CompleteBipartiteReport:
    p: int
    q: int
    bound: float
    lambda_1: float
    equality: bool
    balanced: bool

    @property
    def within_bound(self) -> bool:
        return self.lambda_1 <= self.bound * (1 + SPECTRAL_TOL) + SPECTRAL_TOL

    @property
    def consistent(self) -> bool:
        return self.within_bound and self.equality == self.balanced


def complete_bipartite_parts(graph: GainGraph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    ok, parts = is_bipartite(graph)
    if not ok or graph.n < 2:
        return None
    x, y = parts
    if not x or not y or graph.m != len(x) * len(y):
        return None
    return x, y


def complete_bipartite_check(graph: GainGraph, tol: float = SPECTRAL_TOL) -> CompleteBipartiteReport:
    """``lambda_1 <= sqrt(pq)`` on ``K_{p,q}``, with equality exactly for balanced gains."""
    parts = complete_bipartite_parts(graph)
    if parts is None:
        raise GainGraphError("underlying graph is not complete bipartite")
    p, q = sorted((len(parts[0]), len(parts[1])))
    bound = math.sqrt(p * q)
    l1 = spectrum(graph).lambda_1
    equality = abs(l1 - bound) <= tol * max(1.0, bound)
    return CompleteBipartiteReport(p, q, bound, l1, equality, is_balanced(graph)[0])


def _require_connected(graph: GainGraph) -> None:
    if not is_connected(graph):
        raise GainGraphError("this check requires a connected underlying graph")


@dataclass(frozen=True)
class BalanceReport:
    balanced: bool
    antibalanced: bool
    rho_phi: float
    rho_g: float
    rho_equal: bool
    cospectral_with_underlying: bool
    potential: SwitchingFunction | None = None

    @property
    def rho_dominated(self) -> bool:
        return self.rho_phi <= self.rho_g + RHO_TOL * max(1.0, self.rho_g)

    @property
    def rho_equality_consistent(self) -> bool:
        return self.rho_equal == (self.balanced or self.antibalanced)

    @property
    def cospectrality_consistent(self) -> bool:
        return self.cospectral_with_underlying == self.balanced

    @property
    def consistent(self) -> bool:
        return self.rho_dominated and self.rho_equality_consistent and self.cospectrality_consistent


def rho_comparison(graph: GainGraph, tol: float = RHO_TOL) -> BalanceReport:
    """Compare ``rho(A(Phi))`` with ``rho(A(G))`` and the spectra with each other.

    Balance and antibalance are decided exactly from the gains; the numerical
    flags are kept as computed so that any disagreement shows up in
    :attr:`BalanceReport.consistent`.
    """
    _require_connected(graph)
    s_phi = spectrum(graph)
    s_g = spectrum(graph.underlying())
    balanced, psi = is_balanced(graph)
    antibalanced = is_balanced(negate(graph))[0]
    rho_equal = abs(s_phi.rho - s_g.rho) <= tol * max(1.0, s_g.rho)
    report = BalanceReport(
        balanced=balanced,
        antibalanced=antibalanced,
        rho_phi=s_phi.rho,
        rho_g=s_g.rho,
        rho_equal=rho_equal,
        cospectral_with_underlying=spectra_equal(s_phi, s_g, tol),
        potential=psi,
    )
    if not report.consistent:
        log.warning("numerical spectral comparison disagrees with exact balance: %s", report)
    return report


def cospectrality_check(graph: GainGraph, tol: float = RHO_TOL) -> bool:
    """Whether ``A(Phi)`` and ``A(G)`` are cospectral (connected graphs only).

    This coincides with balance.  If rounding makes the numerical comparison
    disagree with the exact balance test, the exact answer is returned and
    the disagreement logged.
    """
    _require_connected(graph)
    numeric = spectra_equal(spectrum(graph), spectrum(graph.underlying()), tol)
    balanced = is_balanced(graph)[0]
    if numeric != balanced:
        log.warning("cospectrality (%s) disagrees with balance (%s); using balance", numeric, balanced)
    return balanced


@dataclass(frozen=True)
class ProbeSample:
    label: str
    rho_equal: bool
    spectra_equal: bool

    @property
    def implication_holds(self) -> bool:
        return self.spectra_equal or not self.rho_equal


@dataclass(frozen=True)
class ProbeReport:
    bipartite: bool
    samples: tuple[ProbeSample, ...]

    @property
    def implication_held(self) -> bool:
        return all(s.implication_holds for s in self.samples)

    @property
    def consistent(self) -> bool:
        """The implication holds on every sample iff the graph is bipartite."""
        return self.implication_held == self.bipartite


def bipartite_characterization_probe(
    graph: GainGraph, trials: int = 20, seed: int = 0, tol: float = RHO_TOL
) -> ProbeReport:
    """Test "equal spectral radius implies equal spectrum" over many gain choices.

    Gains on the underlying graph of ``graph`` are: all 1, all -1, a random
    balanced and a random antibalanced assignment, then ``trials`` uniformly
    random ones.  On a bipartite graph the implication holds for every gain;
    on a non-bipartite graph the all -1 gain breaks it.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    _require_connected(graph)
    rng = np.random.default_rng(seed)
    base = graph.underlying()
    s_g = spectrum(base)
    candidates = [
        ("constant 1", base),
        ("constant -1", negate(base)),
        ("random balanced", switch(base, random_switching(base.n, rng))),
        ("random antibalanced", negate(switch(base, random_switching(base.n, rng)))),
    ]
    for t in range(trials):
        gains = rng.uniform(-1.0, 1.0, size=base.m)
        candidates.append((f"uniform #{t}", base.with_gains(gains)))
    samples = []
    for label, phi in candidates:
        s_phi = spectrum(phi)
        samples.append(
            ProbeSample(
                label,
                abs(s_phi.rho - s_g.rho) <= tol * max(1.0, s_g.rho),
                spectra_equal(s_phi, s_g, tol),
            )
        )
    return ProbeReport(is_bipartite(graph)[0], tuple(samples))
