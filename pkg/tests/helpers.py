"""Shared test utilities: random graph generators and independent oracles.

The float oracles here deliberately avoid the library's exact machinery:
resistance comes from a numpy pseudoinverse of the weighted Laplacian, so any
systematic error in the exact path would show up as a disagreement.
"""

from fractions import Fraction

import numpy as np

from tropinv import PolarizedMetricGraph, genus, is_stable


def random_rational(rng, max_num=12, max_den=12):
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def random_connected_graph(rng, genus_min=1, genus_max=5, max_vertices=5, stable=False):
    """Random connected polarized multigraph with genus in the given range.

    Rejection sampling; deterministic for a given rng state.  With
    stable=True every q=0 vertex gets at least three half-edges.
    """
    while True:
        n = rng.randint(1, max_vertices)
        vids = [f"v{i}" for i in range(n)]
        edges = []
        for i in range(1, n):
            j = rng.randrange(i)
            edges.append((f"t{i}", (vids[i], vids[j]), random_rational(rng)))
        b1_target = rng.randint(0, 3)
        for k in range(b1_target):
            a = rng.choice(vids)
            b = rng.choice(vids)
            edges.append((f"x{k}", (a, b), random_rational(rng)))
        b1 = len(edges) - n + 1
        q_total_max = genus_max - b1
        if q_total_max < 0:
            continue
        qs = [0] * n
        for _ in range(rng.randint(0, q_total_max)):
            qs[rng.randrange(n)] += 1
        g = PolarizedMetricGraph.build(list(zip(vids, qs)), edges)
        if stable and not is_stable(g):
            # bump offending vertices to q = 1 and re-check the genus window
            qs = [
                q if q > 0 or g.valence(v) >= 3 else 1
                for v, q in zip(vids, qs)
            ]
            g = PolarizedMetricGraph.build(list(zip(vids, qs)), edges)
            if not is_stable(g):
                continue
        _, h = genus(g)
        if genus_min <= h <= genus_max:
            return g


def random_point(g, rng):
    """Random vertex or interior point of the graph."""
    from tropinv import EdgePoint, VertexPoint

    if g.edges and rng.random() < 0.6:
        e = g.edges[rng.randrange(len(g.edges))]
        den = rng.randint(2, 13)
        num = rng.randint(1, den - 1)
        return EdgePoint(e.id, e.length * Fraction(num, den))
    vids = g.vertex_ids()
    return VertexPoint(vids[rng.randrange(len(vids))])


def float_resistance(g, x, y):
    """Independent resistance oracle via numpy pseudoinverse of the Laplacian."""
    from tropinv import with_points

    refined, (xi, yi) = with_points(g, [x, y])
    vids = refined.vertex_ids()
    index = {v: i for i, v in enumerate(vids)}
    n = len(vids)
    lap = np.zeros((n, n))
    for e in refined.edges:
        if e.is_loop:
            continue
        i, j = index[e.ends[0]], index[e.ends[1]]
        c = 1.0 / float(e.length)
        lap[i, i] += c
        lap[j, j] += c
        lap[i, j] -= c
        lap[j, i] -= c
    pinv = np.linalg.pinv(lap)
    d = np.zeros(n)
    d[index[xi]] += 1.0
    d[index[yi]] -= 1.0
    return float(d @ pinv @ d)
