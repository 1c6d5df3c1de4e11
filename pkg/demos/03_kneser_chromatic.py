"""Kneser graphs of nonfaces and their exact chromatic numbers.

The vertices are the minimal nonfaces of a complex; edges join disjoint
ones.  The chromatic number c of this graph is the combinatorial
quantity driving every obstruction bound: small c means the nonfaces
overlap a lot, which is what the obstruction maps exploit.
"""

from coupledemb import chromatic_number, kneser_graph, lift_coloring, named, skeleton, three_points_power

print(__doc__)

for K in (named("rp2_6"), named("cp2_9"), skeleton(6, 2),
          three_points_power(1), three_points_power(3)):
    G = kneser_graph(K)
    chi, witness = chromatic_number(G)
    print(f"{str(K):>34}: {len(G.vertices):>3} minimal nonfaces, "
          f"{len(G.edges):>3} edges, chi = {chi}")

print("\nThe six-vertex projective plane has *no* disjoint nonfaces")
print("(every pair of missing triangles meets), so its graph is edgeless.")

K = three_points_power(1)
G = kneser_graph(K)
chi, col = chromatic_number(G)
G_all, lifted = lift_coloring(K, col)
print(f"\nLifting the coloring of {K}: {len(G.vertices)} minimal nonfaces "
      f"-> {len(G_all.vertices)} nonfaces, colors preserved: "
      f"{lifted.c} == {chi}")
