"""Independent oracles shared by the tests.

Everything here is deliberately separate from the library's own code
paths: plain recursion for chromatic numbers, a fresh icosahedron
quotient for the projective plane, hand convolution for products, and a
QP solver for simplex-face distances.
"""

import itertools
from fractions import Fraction

import numpy as np


def brute_force_chromatic(n_vertices: int, edges) -> int:
    """Smallest c admitting a proper coloring, by exhaustive assignment
    in vertex order (new colors introduced canonically)."""
    adj = [set() for _ in range(n_vertices)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    def feasible(c: int) -> bool:
        colors = [0] * n_vertices

        def rec(v: int) -> bool:
            if v == n_vertices:
                return True
            cap = min(c, max(colors[:v], default=0) + 1)
            for col in range(1, cap + 1):
                if all(colors[u] != col for u in adj[v] if u < v):
                    colors[v] = col
                    if rec(v + 1):
                        return True
                    colors[v] = 0
            return False

        return rec(0)

    c = 1
    while not feasible(c):
        c += 1
    return c


def icosahedron_quotient_facets():
    """Facets of the antipodal quotient of the icosahedron boundary,
    derived from coordinates (independent of the bundled data file)."""
    phi = (1 + 5**0.5) / 2
    verts = []
    for a, b in [(1, phi), (1, -phi), (-1, phi), (-1, -phi)]:
        verts += [(0, a, b), (a, b, 0), (b, 0, a)]
    verts = np.array(verts, dtype=float)
    d2 = ((verts[:, None, :] - verts[None, :, :]) ** 2).sum(-1)
    edge = np.min(d2[d2 > 1e-9])
    adj = np.abs(d2 - edge) < 1e-9
    faces = [
        (i, j, k)
        for i, j, k in itertools.combinations(range(12), 3)
        if adj[i, j] and adj[j, k] and adj[i, k]
    ]
    assert len(faces) == 20
    cls, label = {}, 0
    for i in range(12):
        if i in cls:
            continue
        j = int(np.argmin(((verts + verts[i]) ** 2).sum(-1)))
        cls[i] = cls[j] = label
        label += 1
    return sorted({tuple(sorted(cls[v] + 1 for v in f)) for f in faces})


def complexes_isomorphic(facets_a, facets_b, n: int) -> bool:
    """Exhaustive relabeling check for small vertex counts."""
    fa = {tuple(sorted(f)) for f in facets_a}
    fb = {tuple(sorted(f)) for f in facets_b}
    if len(fa) != len(fb):
        return False
    for perm in itertools.permutations(range(1, n + 1)):
        relabel = {i + 1: perm[i] for i in range(n)}
        if {tuple(sorted(relabel[v] for v in f)) for f in fa} == fb:
            return True
    return False


def convolve_oracle(x, y):
    """Hand convolution of coefficient sequences (exact)."""
    out = [Fraction(0)] * (len(x) + len(y) - 1)
    for i, xi in enumerate(x):
        for j, yj in enumerate(y):
            out[i + j] += Fraction(xi) * Fraction(yj)
    return out


QUAT_ORACLE = {
    # 1-based basis 1, i, j, k; value: (index, sign)
    (1, 1): (1, 1), (1, 2): (2, 1), (1, 3): (3, 1), (1, 4): (4, 1),
    (2, 1): (2, 1), (2, 2): (1, -1), (2, 3): (4, 1), (2, 4): (3, -1),
    (3, 1): (3, 1), (3, 2): (4, -1), (3, 3): (1, -1), (3, 4): (2, 1),
    (4, 1): (4, 1), (4, 2): (3, 1), (4, 3): (2, -1), (4, 4): (1, -1),
}


def random_fractions(rng, length, den_max=7):
    return [
        Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, den_max)))
        for _ in range(length)
    ]


def random_nonzero_fractions(rng, length, den_max=7):
    while True:
        out = random_fractions(rng, length, den_max)
        if any(v != 0 for v in out):
            return out


def qp_face_distance(x, facet_indices):
    """Distance from x to conv{e_i : i in facet} via cvxpy (oracle)."""
    import cvxpy as cp

    n = len(x)
    w = cp.Variable(len(facet_indices), nonneg=True)
    point = np.zeros((n, len(facet_indices)))
    for col, i in enumerate(facet_indices):
        point[i - 1, col] = 1.0
    prob = cp.Problem(
        cp.Minimize(cp.sum_squares(point @ w - np.asarray(x, dtype=float))),
        [cp.sum(w) == 1],
    )
    prob.solve(solver=cp.CLARABEL)
    return float(np.sqrt(max(prob.value, 0.0)))


def near_zeros_on_sphere(residual, dim, starts, seed, tol=1e-6, iters=150):
    """Multistart damped Gauss-Newton for |residual(z)| on S^{dim-1},
    returning every start that reaches tol (helper for zero-localization
    checks; mirrors the library search but stays in test code)."""
    from coupledemb.search import _levenberg

    rng = np.random.default_rng(seed)
    found = []

    def retract(v):
        return v / np.linalg.norm(v)

    def accept(v):
        if np.linalg.norm(residual(v)) < tol:
            return v.copy()
        return None

    for _ in range(starts):
        v0 = rng.standard_normal(dim)
        _, _, _, hit = _levenberg(residual, v0, retract, iters, accept)
        if hit is not None:
            found.append(retract(hit))
    return found
