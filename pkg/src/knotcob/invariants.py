"""Knot invariants computed from an embedded diagram.

Each crossing x splits the knot curve into two half-loops; the
distinguished half D_x leaves along the branch that comes first in a
positively oriented tangent frame.  The intersection numbers
n(x) = D_x . D drive the polynomials u+/u-, and the pairwise
intersections of the halves (together with the full curve) form the
diagram's graded matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DoesNotLift, ResourceLimit
from .fatgraph import (
    EdgePath,
    EmbeddedDiagram,
    dual_voltage,
    intersect,
    intersect_each,
    intersection_matrix,
    voltage_cover,
)
from .graded import GradedMatrix, reduce_primitive
from .polynomials import Poly

DEFAULT_COVER_CAP = 512


@dataclass(frozen=True)
class Half:
    """Distinguished half-loop at a crossing: the loop D_x, the crossing
    sign, and n = D_x . D."""

    label: str
    path: EdgePath
    sign: int
    n: int


def half_paths(d: EmbeddedDiagram) -> list[tuple[str, EdgePath, int]]:
    """(label, D_x as an edge path, sign) per crossing, n not yet computed."""
    L = len(d.traversal)
    out = []
    for c in d.crossings:
        i, j = c.pos1, c.pos2
        if c.eta == 1:
            path = d.traversal[i:j]
        else:
            path = d.traversal[j:] + d.traversal[:i]
        out.append((c.label, tuple(path), c.writhe))
    return out


def halves(d: EmbeddedDiagram) -> list[Half]:
    hp = half_paths(d)
    if not hp:
        return []
    ns = intersect_each(d.fg, [p for _, p, _ in hp], d.traversal)
    return [Half(lab, p, s, n) for (lab, p, s), n in zip(hp, ns)]


def u_polynomials(d: EmbeddedDiagram) -> tuple[Poly, Poly]:
    """The pair (u+, u-) of the diagram's knot."""
    plus: dict[int, int] = {}
    minus: dict[int, int] = {}
    for h in halves(d):
        if h.n == 0:
            continue
        if h.n > 0 and h.sign == 1:
            plus[h.n] = plus.get(h.n, 0) + 1
        elif h.n < 0 and h.sign == -1:
            plus[-h.n] = plus.get(-h.n, 0) - 1
        elif h.n < 0 and h.sign == 1:
            minus[-h.n] = minus.get(-h.n, 0) + 1
        else:
            minus[h.n] = minus.get(h.n, 0) - 1
    return Poly.from_dict(plus), Poly.from_dict(minus)


def u_difference(d: EmbeddedDiagram) -> Poly:
    """u = u+ - u-, the underlying-loop invariant."""
    up, um = u_polynomials(d)
    return up - um


def graded_matrix_of(d: EmbeddedDiagram) -> GradedMatrix:
    """T(D): pointed set {s} + crossings, bipartition by sign, pairing
    b(g,h) = [loop of g].[loop of h] with s mapped to the whole curve."""
    hp = half_paths(d)
    paths = [d.traversal] + [p for _, p, _ in hp]
    b = intersection_matrix(d.fg, paths)
    names = ("s",) + tuple(lab for lab, _, _ in hp)
    signs = tuple(s for _, _, s in hp)
    return GradedMatrix(names, signs, tuple(tuple(row) for row in b), "Z")


def self_cover(d: EmbeddedDiagram, m: int) -> EmbeddedDiagram:
    """The m-th covering knot: lift to the cyclic covering dual to the
    curve's own class mod m (always lifts since [D].[D] = 0)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    c = dual_voltage(d.fg, d.traversal, m)
    return voltage_cover(d, c)


def class_cover(d: EmbeddedDiagram, h: EdgePath, m: int) -> EmbeddedDiagram:
    """The covering knot K_h dual to a class h mod m."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if intersect(d.fg, h, d.traversal) % m != 0:
        raise DoesNotLift("h pairs nontrivially with the knot class")
    c = dual_voltage(d.fg, h, m)
    return voltage_cover(d, c)


def iterated_cover(
    d: EmbeddedDiagram, ms: list[int], size_cap: int = DEFAULT_COVER_CAP
) -> EmbeddedDiagram:
    cur = d
    for m in ms:
        cur = self_cover(cur, m)
        if len(cur.crossings) > size_cap:
            raise ResourceLimit(
                f"iterated cover exceeds {size_cap} crossings"
            )
    return cur


def higher_invariants(
    d: EmbeddedDiagram, ms: list[int], size_cap: int = DEFAULT_COVER_CAP
) -> tuple[Poly, Poly, GradedMatrix]:
    """(u+, u-, primitive graded matrix) of the iterated self-cover."""
    cur = iterated_cover(d, ms, size_cap)
    up, um = u_polynomials(cur)
    return up, um, reduce_primitive(graded_matrix_of(cur))
