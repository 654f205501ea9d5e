"""Graph families, random instances and the worked examples used as test vectors.

All angles are in units of pi.  Random generators take a
``numpy.random.Generator`` so that instances are reproducible from a seed.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .core import GainGraph, UnitGain, build_graph, switch

GAIN_MODES = ("uniform", "fourth-roots", "constant")


def star_of_triangles(m: int, thetas_pi: Sequence[float]) -> GainGraph:
    """``m`` triangles sharing vertex 0.

    Triangle ``l`` (1-based) is ``0, 2l-1, 2l`` and its gain, traversed in
    that order, is ``exp(i*pi*thetas_pi[l-1])``.
    """
    if m < 1:
        raise ValueError(f"need at least one triangle, got m={m}")
    if len(thetas_pi) != m:
        raise ValueError(f"expected {m} angles, got {len(thetas_pi)}")
    edges = []
    for l in range(1, m + 1):
        a, b = 2 * l - 1, 2 * l
        edges += [(0, a, 0.0), (a, b, thetas_pi[l - 1]), (0, b, 0.0)]
    return build_graph(2 * m + 1, edges)


def complete(n: int, gain: float = 0.0) -> GainGraph:
    return build_graph(n, [(u, v, gain) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(p: int, q: int, gain: float = 0.0) -> GainGraph:
    """``K_{p,q}`` with parts ``0..p-1`` and ``p..p+q-1``."""
    return build_graph(p + q, [(u, p + j, gain) for u in range(p) for j in range(q)])


def cycle(n: int, gain: float = 0.0) -> GainGraph:
    return build_graph(n, [(i, (i + 1) % n, gain) for i in range(n)])


def path(n: int, gain: float = 0.0) -> GainGraph:
    return build_graph(n, [(i, i + 1, gain) for i in range(n - 1)])


def i_triangle() -> GainGraph:
    """``K_3`` whose adjacency matrix is ``[[0, i, i], [-i, 0, i], [-i, -i, 0]]``."""
    return build_graph(3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)])


def bowtie_pair() -> tuple[GainGraph, GainGraph]:
    """Two gain assignments on the bowtie (triangles 0-1-2 and 0-3-4).

    The first has triangle gains ``i`` and ``1``, the second ``exp(i pi/3)``
    on both.  They are cospectral but not switching equivalent.
    """
    return star_of_triangles(2, (0.5, 0.0)), star_of_triangles(2, (1 / 3, 1 / 3))


def k4_uniform_triangles(theta_pi: float) -> GainGraph:
    """``K_4`` where every triangle ``i<j<k``, traversed ``i->j->k->i``, has gain ``exp(i*pi*theta_pi)``."""
    return build_graph(
        4,
        [(0, 1, 0.0), (0, 2, 0.0), (0, 3, 0.0), (1, 2, theta_pi), (1, 3, theta_pi), (2, 3, theta_pi)],
    )


def _gain_sampler(mode: str, rng: np.random.Generator, value: float) -> Callable[[], float]:
    if mode == "uniform":
        return lambda: float(rng.uniform(-1.0, 1.0))
    if mode == "fourth-roots":
        return lambda: float(rng.choice([0.0, 0.5, 1.0, -0.5]))
    if mode == "constant":
        return lambda: value
    raise ValueError(f"unknown gain mode {mode!r}; expected one of {GAIN_MODES}")


def with_random_gains(
    graph: GainGraph, rng: np.random.Generator, mode: str = "uniform", value: float = 0.0
) -> GainGraph:
    draw = _gain_sampler(mode, rng, value)
    return graph.with_gains([draw() for _ in graph.edges])


def random_gnp(n: int, p: float, rng: np.random.Generator, mode: str = "uniform", value: float = 0.0) -> GainGraph:
    draw = _gain_sampler(mode, rng, value)
    edges = [(u, v, draw()) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return build_graph(n, edges)


def random_tree(n: int, rng: np.random.Generator, mode: str = "uniform", value: float = 0.0) -> GainGraph:
    """Random recursive tree: vertex ``v`` attaches to a uniform earlier vertex."""
    draw = _gain_sampler(mode, rng, value)
    return build_graph(n, [(int(rng.integers(v)), v, draw()) for v in range(1, n)])


def random_connected(
    n: int, p: float, rng: np.random.Generator, mode: str = "uniform", value: float = 0.0
) -> GainGraph:
    """A random tree plus independent extra edges with probability ``p``."""
    draw = _gain_sampler(mode, rng, value)
    perm = rng.permutation(n)
    pairs = {tuple(sorted((int(perm[int(rng.integers(i))]), int(perm[i])))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in pairs and rng.random() < p:
                pairs.add((u, v))
    return build_graph(n, [(u, v, draw()) for u, v in sorted(pairs)])


def random_unicyclic(
    n: int, rng: np.random.Generator, cycle_length: int | None = None, mode: str = "uniform"
) -> GainGraph:
    """A cycle of ``cycle_length`` vertices with random trees hung off it."""
    if cycle_length is None:
        cycle_length = int(rng.integers(3, n + 1))
    if not 3 <= cycle_length <= n:
        raise ValueError(f"cycle length {cycle_length} impossible with {n} vertices")
    draw = _gain_sampler(mode, rng, 0.0)
    perm = [int(x) for x in rng.permutation(n)]
    edges = [(perm[i], perm[(i + 1) % cycle_length], draw()) for i in range(cycle_length)]
    for i in range(cycle_length, n):
        edges.append((perm[int(rng.integers(i))], perm[i], draw()))
    return build_graph(n, edges)


def random_switching(n: int, rng: np.random.Generator) -> list[UnitGain]:
    return [UnitGain(float(rng.uniform(-1.0, 1.0))) for _ in range(n)]


def random_balanced(graph: GainGraph, rng: np.random.Generator) -> GainGraph:
    """A balanced gain graph on the same underlying graph: a random switch of ``(G, 1)``."""
    return switch(graph.underlying(), random_switching(graph.n, rng))


FAMILIES = ("gnp", "tree", "cycle", "complete", "complete-bipartite", "star-of-triangles")


def generate(
    family: str,
    rng: np.random.Generator,
    n: int = 6,
    p: float = 0.5,
    q: int | None = None,
    mode: str = "uniform",
    value: float = 0.0,
) -> GainGraph:
    """Random instance of a named family; ``n`` is the family's size parameter."""
    if family == "gnp":
        return random_gnp(n, p, rng, mode, value)
    if family == "tree":
        return random_tree(n, rng, mode, value)
    if family == "cycle":
        return with_random_gains(cycle(n), rng, mode, value)
    if family == "complete":
        return with_random_gains(complete(n), rng, mode, value)
    if family == "complete-bipartite":
        return with_random_gains(complete_bipartite(n, q if q is not None else n), rng, mode, value)
    if family == "star-of-triangles":
        draw = _gain_sampler(mode, rng, value)
        return star_of_triangles(n, [draw() for _ in range(n)])
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
