"""Generate the bundled triangulation data files.

rp2_6: antipodal quotient of the icosahedron boundary (6 vertices, 10
triangles).  cp2_9: the 9-vertex triangulation of the complex projective
plane, found by searching for a group-invariant 5-uniform facet family on
9 vertices satisfying the complementarity property (exactly one of each
complementary pair of subsets is a face), the pseudomanifold condition,
and Euler characteristic 3.  Both lists are validated here and again in
the test suite; this script is a development tool, not part of the
package.
"""

import itertools
import json
import os

import numpy as np


def icosahedron_quotient():
    phi = (1 + 5**0.5) / 2
    verts = []
    for a, b in [(1, phi), (1, -phi), (-1, phi), (-1, -phi)]:
        verts += [(0, a, b), (a, b, 0), (b, 0, a)]
    verts = np.array(verts, dtype=float)
    assert len(verts) == 12
    # edges = pairs at the minimal nonzero distance
    d2 = ((verts[:, None, :] - verts[None, :, :]) ** 2).sum(-1)
    edge_len = np.min(d2[d2 > 1e-9])
    adj = (np.abs(d2 - edge_len) < 1e-9)
    faces = []
    for i, j, k in itertools.combinations(range(12), 3):
        if adj[i, j] and adj[j, k] and adj[i, k]:
            faces.append((i, j, k))
    assert len(faces) == 20, len(faces)
    # antipodal classes
    cls = {}
    label = 0
    for i in range(12):
        if i in cls:
            continue
        j = int(np.argmin(((verts + verts[i]) ** 2).sum(-1)))
        assert np.allclose(verts[j], -verts[i])
        cls[i] = cls[j] = label
        label += 1
    assert label == 6
    quotient = {tuple(sorted(cls[v] + 1 for v in f)) for f in faces}
    assert len(quotient) == 10, len(quotient)
    return sorted(quotient)


def is_face(sigma, facets):
    return any(sigma <= f for f in facets)


def validate_cp2(facets):
    """Complementarity + pseudomanifold + chi == 3 on 9 vertices."""
    ground = frozenset(range(9))
    fs = [frozenset(f) for f in facets]
    if len(fs) != 36 or any(len(f) != 5 for f in fs):
        return False
    # complementarity: exactly one of (sigma, complement) is a face
    for r in range(5):
        for sigma in itertools.combinations(range(9), r):
            s = frozenset(sigma)
            if is_face(s, fs) == is_face(ground - s, fs):
                return False
    # pseudomanifold: every 4-subset of a facet lies in exactly two facets
    from collections import Counter
    ridge = Counter()
    for f in fs:
        for r in itertools.combinations(sorted(f), 4):
            ridge[r] += 1
    if any(c != 2 for c in ridge.values()):
        return False
    # Euler characteristic
    faces = set()
    for f in fs:
        sub = sorted(f)
        for r in range(1, 6):
            faces.update(itertools.combinations(sub, r))
    chi = sum((-1) ** (len(s) - 1) for s in faces)
    return chi == 3


def search_cp2():
    """Search for facet families invariant under a transitive group."""
    five_sets = [frozenset(c) for c in itertools.combinations(range(9), 5)]

    def orbits(perm):
        seen, orbs = set(), []
        for s in five_sets:
            if s in seen:
                continue
            orb = set()
            t = s
            while t not in orb:
                orb.add(t)
                t = frozenset(perm[v] for v in t)
            orbs.append(sorted(orb, key=sorted))
            seen |= orb
        return orbs

    candidates = []
    # Z3 x Z3 translations on labels (i, j) -> v = 3i + j
    t1 = {3 * i + j: 3 * ((i + 1) % 3) + j for i in range(3) for j in range(3)}
    t2 = {3 * i + j: 3 * i + (j + 1) % 3 for i in range(3) for j in range(3)}
    group = []
    for a in range(3):
        for b in range(3):
            p = {v: v for v in range(9)}
            for _ in range(a):
                p = {v: t1[p[v]] for v in p}
            for _ in range(b):
                p = {v: t2[p[v]] for v in p}
            group.append(p)

    def group_orbits():
        seen, orbs = set(), []
        for s in five_sets:
            if s in seen:
                continue
            orb = {frozenset(g[v] for v in s) for g in group}
            orbs.append(sorted(orb, key=sorted))
            seen |= orb
        return orbs

    orbs = group_orbits()
    sizes = [len(o) for o in orbs]
    print(f"Z3xZ3: {len(orbs)} orbits, sizes {sorted(set(sizes))}")
    full = [o for o in orbs if len(o) == 9]
    for combo in itertools.combinations(range(len(full)), 4):
        facets = [f for idx in combo for f in full[idx]]
        if validate_cp2(facets):
            candidates.append(sorted(tuple(sorted(v + 1 for v in f)) for f in facets))
    return candidates


def main():
    os.makedirs("src/coupledemb/data", exist_ok=True)

    rp2 = icosahedron_quotient()
    print("rp2_6 facets:", rp2)
    with open("src/coupledemb/data/rp2_6.json", "w") as fh:
        json.dump({"n": 6, "facets": [list(f) for f in rp2], "name": "rp2_6"}, fh, indent=1)

    found = search_cp2()
    print(f"cp2_9 candidates: {len(found)}")
    if not found:
        raise SystemExit("no CP^2 facet family found under Z3xZ3; extend the search")
    best = min(found)
    print("cp2_9 facets:", best)
    with open("src/coupledemb/data/cp2_9.json", "w") as fh:
        json.dump({"n": 9, "facets": [list(f) for f in best], "name": "cp2_9"}, fh, indent=1)


if __name__ == "__main__":
    main()
