"""Kneser graphs of nonfaces and exact chromatic numbers.

The vertices of the Kneser graph of a complex are its nonfaces (minimal
nonfaces by default), with edges between disjoint nonfaces.  The
chromatic number of this graph is the combinatorial input to every
obstruction bound downstream, so the solver is exact: DSATUR-ordered
branch and bound with a greedy clique lower bound and deterministic
tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass

from .simplicial import SimplicialComplex, _vertices


class KneserError(ValueError):
    """Invalid Kneser-graph construction or coloring."""


@dataclass(frozen=True)
class KneserGraph:
    """Disjointness graph over nonface bitmasks of a complex."""

    n_ground: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.vertices]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def vertex_sets(self) -> list[tuple[int, ...]]:
        return [_vertices(m) for m in self.vertices]


@dataclass(frozen=True)
class Coloring:
    """Proper coloring: colors[v] in {1..c} for each graph vertex."""

    colors: tuple[int, ...]
    c: int

    def __post_init__(self):
        used = set(self.colors)
        if used and (min(used) < 1 or len(used) != self.c):
            raise KneserError("c must equal the number of distinct colors used")


def kneser_graph(K: SimplicialComplex, minimal_only: bool = True) -> KneserGraph:
    """Kneser graph of the (minimal) nonfaces of K.

    Edges join disjoint nonfaces.  If twice the smallest nonface size
    exceeds the ground set, no two nonfaces can be disjoint and the edge
    scan is skipped.
    """
    verts = K.minimal_nonfaces() if minimal_only else K.nonfaces()
    if not verts:
        raise KneserError("the full simplex has no nonfaces")
    min_size = min(bin(m).count("1") for m in verts)
    edges: list[tuple[int, int]] = []
    if 2 * min_size <= K.n:
        for i in range(len(verts)):
            vi = verts[i]
            for j in range(i + 1, len(verts)):
                if vi & verts[j] == 0:
                    edges.append((i, j))
    return KneserGraph(K.n, tuple(verts), tuple(edges))


def is_proper(G: KneserGraph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in G.edges)


def _greedy_clique(adj: list[set[int]]) -> list[int]:
    """Deterministic greedy clique: grow from the max-degree vertex."""
    if not adj:
        return []
    order = sorted(range(len(adj)), key=lambda v: (-len(adj[v]), v))
    clique = [order[0]]
    for v in order[1:]:
        if all(v in adj[u] for u in clique):
            clique.append(v)
    return clique


def _dsatur_greedy(adj: list[set[int]]) -> list[int]:
    n = len(adj)
    colors = [0] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda u: (len(sat[u]), len(adj[u]), -u))
        c = 1
        while c in sat[v]:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for u in adj[v]:
            if colors[u] == 0:
                sat[u].add(c)
    return colors


def chromatic_number(G: KneserGraph) -> tuple[int, Coloring]:
    """Exact chromatic number with a re-verified witness coloring.

    DSATUR branch and bound; the greedy clique gives the lower bound and
    the DSATUR greedy coloring the initial upper bound.  Ties are broken
    by vertex index, so the witness is deterministic.
    """
    nv = len(G.vertices)
    if nv == 0:
        raise KneserError("empty graph")
    adj = G.adjacency()
    if not G.edges:
        witness = Coloring(tuple([1] * nv), 1)
        return 1, witness

    clique = _greedy_clique(adj)
    lower = len(clique)
    greedy = _dsatur_greedy(adj)
    best_k = max(greedy)
    best = list(greedy)

    if lower < best_k:
        colors = [0] * nv
        sat: list[set[int]] = [set() for _ in range(nv)]
        # pre-color the clique: any optimal coloring can be relabeled this way
        for idx, v in enumerate(clique, start=1):
            colors[v] = idx
            for u in adj[v]:
                if colors[u] == 0:
                    sat[u].add(idx)

        def pick() -> int | None:
            chosen, key = None, None
            for v in range(nv):
                if colors[v] == 0:
                    k = (len(sat[v]), len(adj[v]), -v)
                    if key is None or k > key:
                        chosen, key = v, k
            return chosen

        def backtrack(used: int):
            nonlocal best_k, best
            if used >= best_k:
                return
            v = pick()
            if v is None:
                best_k = used
                best = list(colors)
                return
            for c in range(1, min(used + 1, best_k - 1) + 1):
                if c in sat[v]:
                    continue
                colors[v] = c
                touched = []
                for u in adj[v]:
                    if colors[u] == 0 and c not in sat[u]:
                        sat[u].add(c)
                        touched.append(u)
                backtrack(max(used, c))
                colors[v] = 0
                for u in touched:
                    sat[u].discard(c)

        backtrack(lower)

    if not is_proper(G, best):
        raise AssertionError("witness coloring failed the properness re-check")
    relabel = {}
    final = []
    for c in best:
        if c not in relabel:
            relabel[c] = len(relabel) + 1
        final.append(relabel[c])
    return best_k, Coloring(tuple(final), best_k)


def lift_coloring(K: SimplicialComplex, col: Coloring) -> tuple[KneserGraph, Coloring]:
    """Extend a proper coloring of the minimal-nonface Kneser graph to
    all nonfaces: each nonface inherits the color of the lexicographically
    least minimal nonface it contains.  Returns the all-nonfaces graph
    and the lifted coloring, which is proper with the same colors."""
    G_min = kneser_graph(K, minimal_only=True)
    if len(col.colors) != len(G_min.vertices):
        raise KneserError("coloring does not match the minimal-nonface graph")
    if not is_proper(G_min, col.colors):
        raise KneserError("input coloring is not proper")
    color_of = dict(zip(G_min.vertices, col.colors))
    ordered = sorted(G_min.vertices, key=_vertices)

    G_all = kneser_graph(K, minimal_only=False)
    lifted = []
    for nf in G_all.vertices:
        inner = next(m for m in ordered if (m & ~nf) == 0)
        lifted.append(color_of[inner])
    if not is_proper(G_all, lifted):
        raise AssertionError("lifted coloring failed the properness check")
    return G_all, Coloring(tuple(lifted), len(set(lifted)))
