"""Complex unit gain graphs: data model, switching and balance.

Gains are kept as angles in units of pi, so ``UnitGain(0.5)`` is ``i`` and
``UnitGain(1.0)`` is ``-1``.  Products and inverses are angle additions and
negations, which stay exact for dyadic inputs such as the fourth roots of
unity.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import GainGraphError

GAIN_TOL = 1e-12


def normalize_angle(theta_pi: float) -> float:
    """Reduce an angle (units of pi) into the half-open interval (-1, 1]."""
    if not math.isfinite(theta_pi):
        raise GainGraphError(f"gain angle must be finite, got {theta_pi!r}")
    r = theta_pi - 2.0 * math.floor((theta_pi + 1.0) / 2.0)
    if r <= -1.0:
        r += 2.0
    return r + 0.0  # no negative zero


_EXACT = {0.0: 1 + 0j, 0.5: 1j, 1.0: -1 + 0j, -0.5: -1j}


@dataclass(frozen=True)
class UnitGain:
    """A point ``exp(i*pi*theta_pi)`` on the unit circle."""

    theta_pi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "theta_pi", normalize_angle(float(self.theta_pi)))

    @classmethod
    def from_radians(cls, theta: float) -> "UnitGain":
        return cls(theta / math.pi)

    @classmethod
    def from_degrees(cls, degrees: float) -> "UnitGain":
        return cls(degrees / 180.0)

    @classmethod
    def from_complex(cls, z: complex) -> "UnitGain":
        if abs(abs(z) - 1.0) > 1e-9:
            raise GainGraphError(f"gain {z!r} is not of unit modulus")
        return cls(math.atan2(z.imag, z.real) / math.pi)

    @property
    def radians(self) -> float:
        return self.theta_pi * math.pi

    def complex_value(self) -> complex:
        exact = _EXACT.get(self.theta_pi)
        if exact is not None:
            return exact
        return complex(math.cos(self.radians), math.sin(self.radians))

    @property
    def real(self) -> float:
        return self.complex_value().real

    def inverse(self) -> "UnitGain":
        return UnitGain(-self.theta_pi)

    def __mul__(self, other: "UnitGain") -> "UnitGain":
        if not isinstance(other, UnitGain):
            return NotImplemented
        return UnitGain(self.theta_pi + other.theta_pi)

    def __neg__(self) -> "UnitGain":
        return UnitGain(self.theta_pi + 1.0)

    def isclose(self, other: "UnitGain", tol: float = GAIN_TOL) -> bool:
        return abs(normalize_angle(self.theta_pi - other.theta_pi)) <= tol

    def is_neutral(self, tol: float = GAIN_TOL) -> bool:
        return abs(self.theta_pi) <= tol


ONE = UnitGain(0.0)


def _as_gain(g) -> UnitGain:
    if isinstance(g, UnitGain):
        return g
    if isinstance(g, complex):
        return UnitGain.from_complex(g)
    return UnitGain(float(g))


Edge = tuple[int, int, UnitGain]


@dataclass(frozen=True)
class GainGraph:
    """Simple undirected graph with a unit gain on each edge.

    Edges are stored as ``(u, v, gain)`` with ``u < v``; ``gain`` belongs to
    the orientation ``u -> v`` and the reverse orientation carries its
    inverse.  Build instances with :func:`build_graph`.
    """

    n: int
    edges: tuple[Edge, ...]

    @cached_property
    def _adj(self) -> list[dict[int, UnitGain]]:
        adj: list[dict[int, UnitGain]] = [{} for _ in range(self.n)]
        for u, v, g in self.edges:
            adj[u][v] = g
            adj[v][u] = g.inverse()
        return adj

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _ in self.edges)

    def underlying(self) -> "GainGraph":
        """The same graph with every gain set to 1, i.e. ``(G, 1)``."""
        return GainGraph(self.n, tuple((u, v, ONE) for u, v, _ in self.edges))

    def with_gains(self, gains: Iterable) -> "GainGraph":
        """Replace the gains edge by edge (same order as ``edges``)."""
        gains = [_as_gain(g) for g in gains]
        if len(gains) != self.m:
            raise GainGraphError(f"expected {self.m} gains, got {len(gains)}")
        return GainGraph(self.n, tuple((u, v, g) for (u, v, _), g in zip(self.edges, gains)))

    def induced_subgraph(self, keep: Iterable[int]) -> tuple["GainGraph", list[int]]:
        """Induced subgraph on ``keep``; returns it with the old labels of its vertices."""
        old = sorted(set(keep))
        new = {v: i for i, v in enumerate(old)}
        edges = tuple((new[u], new[v], g) for u, v, g in self.edges if u in new and v in new)
        return GainGraph(len(old), edges), old


def build_graph(n: int, edges: Iterable[Sequence]) -> GainGraph:
    """Validate and canonicalize an edge list into a :class:`GainGraph`.

    Each edge is ``(u, v, gain)`` where ``gain`` is a :class:`UnitGain`, an
    angle in units of pi, or a unit complex number.  Edges given as ``u > v``
    are flipped and their gain inverted.
    """
    if n < 0:
        raise GainGraphError(f"vertex count must be non-negative, got {n}")
    seen: dict[tuple[int, int], Edge] = {}
    for edge in edges:
        if len(edge) == 2:
            u, v = edge
            g = ONE
        else:
            u, v, g = edge
        u, v = int(u), int(v)
        g = _as_gain(g)
        if not (0 <= u < n and 0 <= v < n):
            raise GainGraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}", edge=(u, v))
        if u == v:
            raise GainGraphError(f"self-loop at vertex {u}", edge=(u, v))
        if u > v:
            u, v, g = v, u, g.inverse()
        if (u, v) in seen:
            raise GainGraphError(f"duplicate edge ({u}, {v})", edge=(u, v))
        seen[(u, v)] = (u, v, g)
    return GainGraph(n, tuple(seen[k] for k in sorted(seen)))


def gain_of(graph: GainGraph, u: int, v: int) -> UnitGain | None:
    """Gain of the oriented edge ``u -> v``, or ``None`` if ``u`` and ``v`` are not adjacent."""
    return graph._adj[u].get(v)


def _cycle_vertices(graph: GainGraph, cycle: Sequence[int]) -> list[int]:
    verts = list(cycle)
    if len(verts) > 1 and verts[0] == verts[-1]:
        verts = verts[:-1]
    if len(verts) < 3 or len(set(verts)) != len(verts):
        raise GainGraphError(f"{list(cycle)} is not a cycle")
    for a, b in zip(verts, verts[1:] + verts[:1]):
        if not (0 <= a < graph.n and 0 <= b < graph.n) or not graph.adjacent(a, b):
            raise GainGraphError(f"{list(cycle)} is not a cycle: {a} and {b} are not adjacent")
    return verts


def cycle_gain(graph: GainGraph, cycle: Sequence[int]) -> UnitGain:
    """Product of oriented edge gains around ``cycle``.

    ``cycle`` lists the vertices in traversal order; repeating the first
    vertex at the end is optional.
    """
    verts = _cycle_vertices(graph, cycle)
    total = 0.0
    for a, b in zip(verts, verts[1:] + verts[:1]):
        total += graph._adj[a][b].theta_pi
    return UnitGain(total)


def negate(graph: GainGraph) -> GainGraph:
    """``-Phi``: every gain multiplied by -1."""
    return GainGraph(graph.n, tuple((u, v, -g) for u, v, g in graph.edges))


@dataclass(frozen=True)
class SwitchingFunction:
    zeta: tuple[UnitGain, ...]

    def __post_init__(self):
        object.__setattr__(self, "zeta", tuple(_as_gain(z) for z in self.zeta))

    def __len__(self):
        return len(self.zeta)

    def __getitem__(self, i):
        return self.zeta[i]

    def inverse(self) -> "SwitchingFunction":
        return SwitchingFunction(tuple(z.inverse() for z in self.zeta))


def switch(graph: GainGraph, zeta) -> GainGraph:
    """Apply ``phi'(u->v) = zeta(u)^-1 phi(u->v) zeta(v)`` to every edge."""
    if not isinstance(zeta, SwitchingFunction):
        zeta = SwitchingFunction(tuple(zeta))
    if len(zeta) != graph.n:
        raise GainGraphError(f"switching function has {len(zeta)} entries, graph has {graph.n} vertices")
    return GainGraph(
        graph.n, tuple((u, v, zeta[u].inverse() * g * zeta[v]) for u, v, g in graph.edges)
    )


@dataclass(frozen=True)
class SpanningForest:
    roots: tuple[int, ...]
    parent: tuple[int | None, ...]
    order: tuple[int, ...]  # BFS order; parents precede children
    component: tuple[int, ...]
    tree_edges: frozenset[tuple[int, int]]
    cotree_edges: tuple[tuple[int, int], ...]

    @property
    def n_components(self) -> int:
        return len(self.roots)

    def path_to_root(self, v: int) -> list[int]:
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path

    def fundamental_cycle(self, u: int, v: int) -> list[int]:
        """Cycle closed by the co-tree edge ``(u, v)``, as ``u ... v``."""
        pu, pv = self.path_to_root(u), self.path_to_root(v)
        on_pv = {x: i for i, x in enumerate(pv)}
        for i, x in enumerate(pu):
            if x in on_pv:
                return pu[: i + 1] + pv[: on_pv[x]][::-1]
        raise GainGraphError(f"({u}, {v}) joins different components")


def spanning_forest(graph: GainGraph) -> SpanningForest:
    """BFS spanning forest, rooted at the smallest vertex of each component."""
    n = graph.n
    parent: list[int | None] = [None] * n
    component = [-1] * n
    roots, order = [], []
    tree = set()
    for r in range(n):
        if component[r] >= 0:
            continue
        component[r] = len(roots)
        roots.append(r)
        queue = deque([r])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in graph.neighbors(u):
                if component[w] < 0:
                    component[w] = component[r]
                    parent[w] = u
                    tree.add((min(u, w), max(u, w)))
                    queue.append(w)
    cotree = tuple((u, v) for u, v, _ in graph.edges if (u, v) not in tree)
    return SpanningForest(
        tuple(roots), tuple(parent), tuple(order), tuple(component), frozenset(tree), cotree
    )


def is_connected(graph: GainGraph) -> bool:
    return graph.n <= 1 or spanning_forest(graph).n_components == 1


def canonical_cycle(cycle: Sequence[int]) -> list[int]:
    """Rotate and orient a cycle to start at its smallest vertex, going to the smaller neighbour."""
    cyc = list(cycle)
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = cyc[:1] + cyc[:0:-1]
    return cyc


def fundamental_cycle_gains(graph: GainGraph) -> list[tuple[list[int], UnitGain]]:
    """One fundamental cycle per co-tree edge, in canonical orientation, with its gain."""
    forest = spanning_forest(graph)
    out = []
    for u, v in forest.cotree_edges:
        cyc = canonical_cycle(forest.fundamental_cycle(u, v))
        out.append((cyc, cycle_gain(graph, cyc)))
    return out


def is_balanced(graph: GainGraph, tol: float = GAIN_TOL) -> tuple[bool, SwitchingFunction | None]:
    """Decide balance; on success also return a potential function.

    The potential ``psi`` satisfies ``phi(u->v) = psi(u)^-1 psi(v)`` on every
    edge.  It is built by fixing ``psi = 1`` at each component root and
    propagating along a spanning forest; the graph is balanced iff every
    co-tree edge agrees.
    """
    forest = spanning_forest(graph)
    psi = [ONE] * graph.n
    for v in forest.order:
        p = forest.parent[v]
        if p is not None:
            psi[v] = psi[p] * graph._adj[p][v]
    for u, v in forest.cotree_edges:
        if not (psi[u].inverse() * psi[v]).isclose(graph._adj[u][v], tol):
            return False, None
    return True, SwitchingFunction(tuple(psi))


def is_antibalanced(graph: GainGraph, tol: float = GAIN_TOL) -> bool:
    return is_balanced(negate(graph), tol)[0]


def switching_equivalent(
    g1: GainGraph, g2: GainGraph, tol: float = GAIN_TOL
) -> SwitchingFunction | None:
    """Find ``zeta`` with ``switch(g1, zeta) == g2``, or ``None`` if there is none.

    Works per component: ``zeta`` is fixed to 1 at the root, forced along
    the tree edges, and then checked on the co-tree edges.
    """
    if g1.n != g2.n or g1.edge_set() != g2.edge_set():
        raise GainGraphError("switching equivalence needs the same underlying graph")
    forest = spanning_forest(g1)
    zeta = [ONE] * g1.n
    for v in forest.order:
        p = forest.parent[v]
        if p is not None:
            zeta[v] = g1._adj[p][v].inverse() * zeta[p] * g2._adj[p][v]
    for u, v in forest.cotree_edges:
        if not (zeta[u].inverse() * g1._adj[u][v] * zeta[v]).isclose(g2._adj[u][v], tol):
            return None
    return SwitchingFunction(tuple(zeta))


def is_bipartite(graph: GainGraph) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Two-colour the underlying graph; gains are ignored."""
    color = [-1] * graph.n
    for r in range(graph.n):
        if color[r] >= 0:
            continue
        color[r] = 0
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in graph._adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False, None
    x = tuple(v for v in range(graph.n) if color[v] == 0)
    y = tuple(v for v in range(graph.n) if color[v] == 1)
    return True, (x, y)


def potential_holds(graph: GainGraph, psi, tol: float = GAIN_TOL) -> bool:
    """Check ``phi(u->v) = psi(u)^-1 psi(v)`` on every edge."""
    return all((psi[u].inverse() * psi[v]).isclose(g, tol) for u, v, g in graph.edges)
