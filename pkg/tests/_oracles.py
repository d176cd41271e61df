"""Independent brute-force oracles used to freeze expected test values.

Everything here recomputes definitions from scratch (sets of frozensets,
networkx BFS, plain itertools) so the main library is never checked
against itself.
"""

from itertools import combinations

import networkx as nx


def subsets(ground):
    for k in range(len(ground) + 1):
        yield from (frozenset(c) for c in combinations(ground, k))


def mask_to_set(mask):
    return frozenset(i + 1 for i in range(32) if mask >> i & 1)


def set_to_mask(s):
    out = 0
    for e in s:
        out |= 1 << (e - 1)
    return out


def shattered_oracle(vertex_sets, ground):
    """All shattered subsets of `ground`, by the literal definition."""
    fam = [mask_to_set(v) for v in vertex_sets]
    out = set()
    for x in subsets(ground):
        if all(any(s & x == y for s in fam) for y in subsets(x)):
            out.add(x)
    return out


def strongly_shattered_oracle(vertex_sets, ground):
    """All X whose full X-cube over some base lies inside the family."""
    fam = {frozenset(s) for s in (mask_to_set(v) for v in vertex_sets)}
    out = set()
    for x in subsets(ground):
        rest = frozenset(ground) - x
        for base in subsets(rest):
            if all(frozenset(base | y) in fam for y in subsets(x)):
                out.add(x)
                break
    return out


def vcd_oracle(vertex_sets, ground):
    shat = shattered_oracle(vertex_sets, ground)
    return max((len(x) for x in shat), default=-1)


def ample_oracle(vertex_sets, ground):
    """Ample iff the family is as large as its shattered complex."""
    if not vertex_sets:
        return True
    return len(set(vertex_sets)) == len(shattered_oracle(vertex_sets, ground))


def graph_of(vertex_sets):
    g = nx.Graph()
    g.add_nodes_from(vertex_sets)
    vs = sorted(vertex_sets)
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if (u ^ v).bit_count() == 1:
                g.add_edge(u, v)
    return g


def partial_cube_oracle(vertex_sets):
    """Connected + BFS distance equals Hamming distance, via networkx."""
    if not vertex_sets:
        return False
    g = graph_of(vertex_sets)
    if not nx.is_connected(g):
        return False
    lengths = dict(nx.all_pairs_shortest_path_length(g))
    return all(
        lengths[u][v] == (u ^ v).bit_count() for u in vertex_sets for v in vertex_sets
    )


def interval_oracle(vertex_sets, u, v):
    g = graph_of(vertex_sets)
    du = nx.single_source_shortest_path_length(g, u)
    dv = nx.single_source_shortest_path_length(g, v)
    return {x for x in vertex_sets if du[x] + dv[x] == du[v]}


def gallery_oracle(vertex_sets, free, base1, base2):
    """Unrestricted breadth-first search over the X-cubes of the family.

    Cubes are adjacent when their union is a cube; returns the gallery
    distance between the two bases (None if unreachable)."""
    verts = set(vertex_sets)
    subs = []
    rest = free
    sub = free
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & free

    def is_cube(b):
        return all(b | s in verts for s in subs)

    assert is_cube(base1) and is_cube(base2)
    frontier = {base1}
    seen = {base1}
    d = 0
    while frontier:
        if base2 in frontier:
            return d
        nxt = set()
        for b in frontier:
            for i in range(32):
                if free >> i & 1:
                    continue
                nb = b ^ (1 << i)
                if nb not in seen and is_cube(nb):
                    nxt.add(nb)
                    seen.add(nb)
        frontier = nxt
        d += 1
    return None
