"""Cobordism invariants of knots in thickened surfaces.

From a signed Gauss code: the Carter surface, the polynomials u+/u-,
the graded matrix and its primitive reduction, covering-knot
invariants, graded genus and cobordism certificates, and slice
obstructions.  Exact integer arithmetic throughout.
"""

from .gauss import (
    GaussCode,
    alpha_pq,
    canonical,
    connected_sum,
    mirror,
    parse,
    realizable_pair_check,
    reverse,
    serialize,
)
from .fatgraph import (
    EmbeddedDiagram,
    Fatgraph,
    Voltage,
    build_carter,
    diagram_to_code,
    dual_voltage,
    faces_and_genus,
    homology_basis,
    intersect,
    voltage_cover,
)
from .graded import (
    GradedMatrix,
    TRIVIAL,
    bar,
    find_isomorphism,
    gamma_A,
    genus,
    is_cobordant,
    is_hyperbolic,
    is_isomorphic,
    neg,
    p_genus,
    reduce_primitive,
    u_pm_of_matrix,
)
from .invariants import (
    class_cover,
    graded_matrix_of,
    halves,
    higher_invariants,
    self_cover,
    u_polynomials,
)
from .moves import RMove, apply_rmove, enumerate_rmoves
from .polynomials import Poly
from .sliceness import Config, lagrangian_obstruction, obstruction_report

__version__ = "0.1.0"
