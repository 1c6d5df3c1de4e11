"""Coupled embeddability: constructions, obstructions, and certificates.

A map f : X x Y -> R^d is a coupled embedding when no quadruple
x1, x2, y1, y2 forms an axis-aligned parallelogram, operationally when
the four-term defect f(x1,y1)+f(x2,y2)-f(x1,y2)-f(x2,y1) never vanishes
at separated points.  This package provides:

* `simplicial` - complexes, joins, deleted joins, metric realization;
* `kneser` - nonface Kneser graphs and exact chromatic numbers;
* `hopf` - binary-digit obstruction predicates;
* `bilinear` - certified nonsingular bilinear constructions and the
  minimal-dimension catalog;
* `maps` - evaluatable product maps and equivariant obstruction maps;
* `search` - multistart witness and zero searches;
* `bounds` - the d(X, Y) certificate engine and the closed-form table;
* `cli` - the `coupledemb` command-line frontend.
"""

from .bilinear import (
    catalog_min_dim,
    certify,
    complex_poly,
    explicit_tensor,
    oct_poly,
    quat_poly,
    real_poly,
    restrict,
    scalar,
    singular_search,
    swap,
)
from .bounds import (
    BoundsCertificate,
    certificate,
    complex_space,
    lower_bound_complexes,
    lower_bound_manifolds,
    lower_bound_sphere,
    manifold_space,
    named_space,
    reproduce_table,
    sphere_space,
    upper_bound,
)
from .hopf import ActionSignature, biskew_blocked, shares_binary_one, zero_guaranteed
from .kneser import Coloring, KneserGraph, chromatic_number, kneser_graph, lift_coloring
from .maps import (
    ProductMap,
    additive_map,
    antipodal_defect,
    coindex_witness,
    coloring_obstruction,
    compose_bilinear,
    coupled_embedding_certificate,
    defect,
    embedding,
    joint_obstruction,
    mixed_partials_check,
    random_trig,
    simplex_pair_obstruction,
    tabulated_map,
)
from .search import (
    ParallelogramWitness,
    SearchReport,
    ZeroWitness,
    find_equivariant_zero,
    minimize_defect,
    verify_witness,
)
from .simplicial import (
    DeletedJoinPoint,
    RealizedPoint,
    SimplicialComplex,
    crosspolytope_chart,
    deleted_join,
    dist_to_subcomplex,
    from_facets,
    full_simplex,
    join,
    named,
    skeleton,
    three_points_power,
)

__version__ = "0.1.0"
