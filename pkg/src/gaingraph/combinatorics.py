"""Elementary subgraphs, matchings and the coefficient formulas built on them.

An elementary subgraph is a vertex-disjoint union of single edges and
cycles.  Summing ``(-1)^p(H) 2^c(H) prod Re(C)`` over the elementary
subgraphs on ``i`` vertices gives the coefficient of ``x^(n-i)`` in the
characteristic polynomial; dropping the component sign and multiplying by
``(-1)^i`` gives the permanental one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .core import GainGraph, GainGraphError, UnitGain, cycle_gain, is_connected
from .errors import CapExceededError
from .linalg import RealPolynomial

ENUMERATION_CAP = 14


@dataclass(frozen=True)
class ElementarySubgraph:
    k2_edges: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[int, ...], ...]

    @property
    def p(self) -> int:
        """Number of components."""
        return len(self.k2_edges) + len(self.cycles)

    @property
    def c(self) -> int:
        """Number of cycles."""
        return len(self.cycles)

    @property
    def vertices(self) -> frozenset[int]:
        vs = {v for e in self.k2_edges for v in e}
        vs.update(v for cyc in self.cycles for v in cyc)
        return frozenset(vs)

    @property
    def size(self) -> int:
        return 2 * len(self.k2_edges) + sum(len(c) for c in self.cycles)

    def cycle_real_parts(self, graph: GainGraph) -> list[float]:
        return [cycle_gain(graph, cyc).real for cyc in self.cycles]


def _check_cap(graph: GainGraph, cap: int, what: str) -> None:
    if graph.n > cap:
        raise CapExceededError(what, graph.n, cap)


def _angles(graph: GainGraph) -> list[dict[int, float]]:
    """Oriented edge angles (units of pi), ``out[u][v]``."""
    out: list[dict[int, float]] = [{} for _ in range(graph.n)]
    for u, v, g in graph.edges:
        out[u][v] = g.theta_pi
        out[v][u] = -g.theta_pi
    return out


def _cycles_through(v: int, free: int, angles, path_limit: int):
    """Cycles whose smallest vertex is ``v``, all other vertices in ``free``.

    Each undirected cycle is produced once: it starts at ``v`` and its second
    vertex is smaller than its last.  Yields ``(vertex tuple, vertex mask,
    angle sum)``.
    """
    adj_v = angles[v]
    stack = [(v, (v,), 1 << v, 0.0)]
    while stack:
        u, path, mask, theta = stack.pop()
        if len(path) >= 3 and u in adj_v and path[1] < path[-1]:
            yield path, mask, theta + angles[u][v]
        if len(path) == path_limit:
            continue
        for w, t in angles[u].items():
            bit = 1 << w
            if free & bit and not mask & bit:
                stack.append((w, path + (w,), mask | bit, theta + t))


def _structures(graph: GainGraph, target: int | None):
    """Yield ``(k2_edges, cycles)`` for every elementary subgraph.

    ``cycles`` holds ``(vertex tuple, angle sum)`` pairs.  With ``target``
    set, only subgraphs on exactly that many vertices are produced.
    Recursion is on the lowest undecided vertex: leave it out, pair it with
    a higher neighbour, or close a cycle through it.
    """
    n = graph.n
    angles = _angles(graph)
    limit = n if target is None else target

    def rec(free: int, size: int, k2: list, cycles: list):
        if target is not None and size + bin(free).count("1") < target:
            return
        if not free or size == limit:
            if target is None or size == target:
                yield tuple(k2), tuple(cycles)
            return
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        yield from rec(rest, size, k2, cycles)
        if size + 2 <= limit:
            for w in sorted(angles[v]):
                if rest & (1 << w):
                    k2.append((v, w))
                    yield from rec(rest & ~(1 << w), size + 2, k2, cycles)
                    k2.pop()
        room = limit - size
        if room >= 3:
            for path, mask, theta in _cycles_through(v, rest, angles, room):
                cycles.append((path, theta))
                yield from rec(free & ~mask, size + len(path), k2, cycles)
                cycles.pop()

    yield from rec((1 << n) - 1, 0, [], [])


def enumerate_elementary_subgraphs(
    graph: GainGraph, i: int, cap: int = ENUMERATION_CAP
) -> Iterator[ElementarySubgraph]:
    """Every elementary subgraph of ``graph`` on exactly ``i`` vertices, once each."""
    _check_cap(graph, cap, "elementary subgraph enumeration")
    if not 0 <= i <= graph.n:
        raise ValueError(f"subgraph size must lie in 0..{graph.n}, got {i}")
    for k2, cycles in _structures(graph, i):
        yield ElementarySubgraph(k2, tuple(path for path, _ in cycles))


def _coefficient_sums(graph: GainGraph) -> tuple[list[float], list[float]]:
    """Per size ``i``: signed sum ``(-1)^p 2^c prod Re`` and unsigned ``2^c prod Re``."""
    signed = [0.0] * (graph.n + 1)
    unsigned = [0.0] * (graph.n + 1)
    for k2, cycles in _structures(graph, None):
        weight = 1.0
        size = 2 * len(k2)
        for path, theta in cycles:
            weight *= 2.0 * UnitGain(theta).real
            size += len(path)
        p = len(k2) + len(cycles)
        unsigned[size] += weight
        signed[size] += -weight if p % 2 else weight
    return signed, unsigned


def char_coeffs_combinatorial(graph: GainGraph, cap: int = ENUMERATION_CAP) -> RealPolynomial:
    """Characteristic polynomial coefficients from elementary subgraphs."""
    _check_cap(graph, cap, "combinatorial characteristic polynomial")
    signed, _ = _coefficient_sums(graph)
    return RealPolynomial(tuple(signed))


def perm_coeffs_combinatorial(graph: GainGraph, cap: int = ENUMERATION_CAP) -> RealPolynomial:
    """Permanental polynomial coefficients from elementary subgraphs."""
    _check_cap(graph, cap, "combinatorial permanental polynomial")
    _, unsigned = _coefficient_sums(graph)
    return RealPolynomial(tuple(-w if i % 2 else w for i, w in enumerate(unsigned)))


def determinant_combinatorial(graph: GainGraph, cap: int = ENUMERATION_CAP) -> float:
    """``det A(Phi)`` as ``(-1)^n a_n``."""
    a = char_coeffs_combinatorial(graph, cap)
    return (-1) ** graph.n * a[graph.n]


def permanent_combinatorial(graph: GainGraph, cap: int = ENUMERATION_CAP) -> float:
    """``per A(Phi)`` as ``(-1)^n b_n``."""
    b = perm_coeffs_combinatorial(graph, cap)
    return (-1) ** graph.n * b[graph.n]


def _edge_masks(graph: GainGraph) -> tuple[int, ...]:
    return tuple((1 << u) | (1 << v) for u, v, _ in graph.edges)


def matching_count(graph: GainGraph, k: int) -> int:
    """Number of matchings with ``k`` edges.

    Branches on one edge at a time: ``m(G, k) = m(G - e, k) + m(G - {u, v}, k - 1)``.
    """
    if k < 0:
        raise ValueError(f"matching size must be non-negative, got {k}")
    edges = _edge_masks(graph)

    @lru_cache(maxsize=None)
    def count(idx: int, used: int, k: int) -> int:
        if k == 0:
            return 1
        if len(edges) - idx < k:
            return 0
        e = edges[idx]
        total = count(idx + 1, used, k)
        if not used & e:
            total += count(idx + 1, used | e, k - 1)
        return total

    return count(0, 0, k)


def matching_table(graph: GainGraph) -> list[int]:
    """``[m_0, m_1, ..., m_nu]`` where ``nu`` is the matching number."""
    table = [1]
    while True:
        mk = matching_count(graph, len(table))
        if mk == 0:
            return table
        table.append(mk)


def matching_number(graph: GainGraph) -> int:
    return len(matching_table(graph)) - 1


def enumerate_cycles(graph: GainGraph, length: int | None = None) -> Iterator[tuple[tuple[int, ...], float]]:
    """Every cycle once (optionally only those of ``length``), with its angle sum."""
    angles = _angles(graph)
    n = graph.n
    for v in range(n):
        higher = ((1 << n) - 1) & ~((1 << (v + 1)) - 1)
        limit = n if length is None else length
        for path, _, theta in _cycles_through(v, higher, angles, limit):
            if length is None or len(path) == length:
                yield path, theta


def sum_re_cycles(graph: GainGraph, i: int, cap: int = ENUMERATION_CAP) -> float:
    """Sum of ``Re(phi(C))`` over all cycles of length ``i``."""
    _check_cap(graph, cap, "cycle enumeration")
    if i < 3:
        raise ValueError(f"cycle length must be at least 3, got {i}")
    return sum(UnitGain(theta).real for _, theta in enumerate_cycles(graph, i))


def count_cycles(graph: GainGraph, i: int, cap: int = ENUMERATION_CAP) -> int:
    _check_cap(graph, cap, "cycle enumeration")
    return sum(1 for _ in enumerate_cycles(graph, i))


@dataclass(frozen=True)
class UnicyclicData:
    cycle: tuple[int, ...]
    theta_pi: float
    rest: GainGraph  # G with the cycle's vertices deleted
    matchings: tuple[int, ...]  # m_i of ``rest``, i = 0..k

    @property
    def k(self) -> int:
        return len(self.matchings) - 1

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def defect(self) -> float:
        """``2 (1 - cos theta)``."""
        return 2.0 * (1.0 - UnitGain(self.theta_pi).real)


def unicyclic_structure(graph: GainGraph) -> UnicyclicData:
    """Locate the unique cycle of a connected unicyclic graph."""
    if graph.m != graph.n or graph.n < 3 or not is_connected(graph):
        raise GainGraphError("graph is not connected and unicyclic")
    deg = graph.degrees
    alive = [True] * graph.n
    leaves = [v for v in range(graph.n) if deg[v] == 1]
    while leaves:
        v = leaves.pop()
        alive[v] = False
        for w in graph.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    leaves.append(w)
    on_cycle = [v for v in range(graph.n) if alive[v]]
    start = on_cycle[0]
    order = [start]
    prev = None
    while True:
        nxt = next(w for w in graph.neighbors(order[-1]) if alive[w] and w != prev)
        if nxt == start:
            break
        prev = order[-1]
        order.append(nxt)
    theta = cycle_gain(graph, order).theta_pi
    rest, _ = graph.induced_subgraph(v for v in range(graph.n) if not alive[v])
    return UnicyclicData(tuple(order), theta, rest, tuple(matching_table(rest)))


def _add_correction(base: RealPolynomial, info: UnicyclicData, n: int, scale: float, signed: bool):
    coeffs = list(base.coeffs)
    for i, mi in enumerate(info.matchings):
        # term in x^(n - m - 2i), i.e. coefficient index m + 2i
        sign = -1.0 if (signed and i % 2) else 1.0
        coeffs[info.length + 2 * i] += scale * sign * mi
    return RealPolynomial(tuple(coeffs))


def unicyclic_char_poly(graph: GainGraph) -> RealPolynomial:
    """``P_G(x) + 2(1 - cos theta) sum_i (-1)^i m_i(G - C) x^(n - m - 2i)``."""
    info = unicyclic_structure(graph)
    base = char_coeffs_combinatorial(graph.underlying())
    return _add_correction(base, info, graph.n, info.defect, signed=True)


def unicyclic_perm_poly(graph: GainGraph) -> RealPolynomial:
    """``Q_G(x) + (-1)^(m+1) 2(1 - cos theta) sum_i m_i(G - C) x^(n - m - 2i)``."""
    info = unicyclic_structure(graph)
    base = perm_coeffs_combinatorial(graph.underlying())
    sign = 1.0 if (info.length + 1) % 2 == 0 else -1.0
    return _add_correction(base, info, graph.n, sign * info.defect, signed=False)


def unicyclic_determinant(graph: GainGraph) -> float:
    """``det A(Phi)`` from ``det A(G)``; it only moves when ``2k = n - m``."""
    info = unicyclic_structure(graph)
    det_g = determinant_combinatorial(graph.underlying())
    if 2 * info.k != graph.n - info.length:
        return det_g
    return det_g + (-1) ** (info.length + info.k) * info.matchings[-1] * info.defect


def unicyclic_permanent(graph: GainGraph) -> float:
    """``per A(Phi)`` from ``per A(G)``; it only moves when ``2k = n - m``."""
    info = unicyclic_structure(graph)
    per_g = permanent_combinatorial(graph.underlying())
    if 2 * info.k != graph.n - info.length:
        return per_g
    return per_g - info.matchings[-1] * info.defect


def star_alpha(thetas_pi: Sequence[float]) -> float:
    """``2 * sum(cos theta_l)`` for triangle angles given in units of pi."""
    return 2.0 * sum(UnitGain(t).real for t in thetas_pi)


def star_of_triangles_closed_form(thetas_pi: Sequence[float]) -> tuple[RealPolynomial, RealPolynomial]:
    """Characteristic and permanental polynomials of the star of ``m`` triangles.

    Uses the closed forms ``a_2l = (-1)^l [C(m,l) + 2m C(m-1,l-1)]``,
    ``a_2l+1 = (-1)^l C(m-1,l-1) alpha`` and their permanental analogues.
    """
    m = len(thetas_pi)
    if m < 1:
        raise ValueError("need at least one triangle")
    alpha = star_alpha(thetas_pi)

    def binom(a, b):
        return math.comb(a, b) if 0 <= b <= a else 0

    a = [0.0] * (2 * m + 2)
    b = [0.0] * (2 * m + 2)
    for idx in range(2 * m + 2):
        l, odd = divmod(idx, 2)
        if odd:
            val = binom(m - 1, l - 1) * alpha
            a[idx] = (-1) ** l * val
            b[idx] = -val
        else:
            val = binom(m, l) + 2 * m * binom(m - 1, l - 1)
            a[idx] = (-1) ** l * val
            b[idx] = val
    return RealPolynomial(tuple(a)), RealPolynomial(tuple(b))
