import random

import pytest

from knotcob import gauss
from knotcob.errors import Disconnected, DoesNotLift, PathNotOnGraph
from knotcob.fatgraph import (
    Fatgraph,
    build_carter,
    check_closed_path,
    diagram_to_code,
    dual_voltage,
    face_boundary_path,
    faces,
    faces_and_genus,
    homology_basis,
    intersect,
    intersection_matrix,
    step_head,
    step_tail,
    voltage_cover,
)
from knotcob.invariants import u_polynomials

from conftest import CURL, FIG8, TREFOIL, TWO_CROSSING


def carter(text):
    return build_carter(gauss.parse(text))


def test_two_crossing_is_torus():
    d = carter(TWO_CROSSING)
    assert d.fg.n_vertices == 2
    assert d.fg.n_edges == 4
    assert faces_and_genus(d.fg)[1] == 1


def test_trefoil_counts():
    d = carter(TREFOIL)
    fl, g = faces_and_genus(d.fg)
    assert (d.fg.n_vertices, d.fg.n_edges, len(fl), g) == (3, 6, 5, 0)


def test_curl_counts():
    d = carter(CURL)
    fl, g = faces_and_genus(d.fg)
    assert (d.fg.n_vertices, d.fg.n_edges, len(fl), g) == (1, 2, 3, 0)


def test_fig8_planar():
    assert faces_and_genus(carter(FIG8).fg)[1] == 0


def test_circle():
    d = build_carter(gauss.EMPTY)
    assert faces_and_genus(d.fg)[1] == 0
    assert d.crossings == ()
    assert len(homology_basis(d.fg)) == 1


def test_face_partition():
    for text in (TWO_CROSSING, TREFOIL, FIG8, CURL):
        fg = carter(text).fg
        darts = [d for f in faces(fg) for d in f]
        assert sorted(darts) == list(range(2 * fg.n_edges))


def test_homology_basis_counts():
    fg = carter(TWO_CROSSING).fg
    basis = homology_basis(fg)
    assert len(basis) == fg.n_edges - fg.n_vertices + 1 == 3
    for z in basis:
        check_closed_path(fg, z)
    # genus-0 diagram: all pairwise intersections vanish
    fg3 = carter(TREFOIL).fg
    b3 = homology_basis(fg3)
    assert len(b3) == 4
    m = intersection_matrix(fg3, b3)
    assert all(x == 0 for row in m for x in row)


def test_disconnected_rejected():
    fg = Fatgraph(((0, 1), (2, 3)))
    with pytest.raises(Disconnected):
        homology_basis(fg)


def test_intersect_fixture_values():
    d = carter(TWO_CROSSING)
    # the two halves pair +1/-1 against the curve (checked in invariants
    # tests); here: the curve self-pairs to zero, faces annihilate
    assert intersect(d.fg, d.traversal, d.traversal) == 0
    for f in faces(d.fg):
        fb = face_boundary_path(d.fg, f)
        assert intersect(d.fg, fb, d.traversal) == 0
        for z in homology_basis(d.fg):
            assert intersect(d.fg, fb, z) == 0


def test_intersect_skew_and_lane_independence():
    rng = random.Random(4)
    for _ in range(15):
        code = gauss.random_code(rng, 6)
        if code.crossings == 0:
            continue
        d = build_carter(code)
        paths = homology_basis(d.fg) + [d.traversal]
        m = intersection_matrix(d.fg, paths)
        for i in range(len(paths)):
            assert m[i][i] == 0
            for j in range(len(paths)):
                assert m[i][j] == -m[j][i]

        def perm(edge, n, rng=rng):
            order = list(range(n))
            rng.shuffle(order)
            return order

        m2 = intersection_matrix(d.fg, paths, lane_perm=perm)
        assert m == m2


def _rotate_to(path, vertex, fg):
    vmap = fg.vertex_of()
    for k, step in enumerate(path):
        if step_tail(fg, step, vmap) == vertex:
            return path[k:] + path[:k]
    return None


def test_intersect_bilinear_concatenation():
    rng = random.Random(9)
    checked = 0
    while checked < 10:
        code = gauss.random_code(rng, 5)
        if code.crossings < 2:
            continue
        d = build_carter(code)
        basis = homology_basis(d.fg)
        if len(basis) < 2:
            continue
        fg = d.fg
        vmap = fg.vertex_of()
        a, b = basis[0], basis[1]
        shared = None
        for step in a:
            v = step_tail(fg, step, vmap)
            rb = _rotate_to(b, v, fg)
            if rb is not None:
                shared = v
                a = _rotate_to(a, v, fg)
                b = rb
                break
        if shared is None:
            continue
        ab = a + b
        check_closed_path(fg, ab)
        t = d.traversal
        assert intersect(fg, ab, t) == intersect(fg, a, t) + intersect(fg, b, t)
        checked += 1


def test_bad_paths_rejected():
    d = carter(TWO_CROSSING)
    with pytest.raises(PathNotOnGraph):
        intersect(d.fg, (), d.traversal)
    with pytest.raises(PathNotOnGraph):
        intersect(d.fg, ((99, 1),), d.traversal)
    with pytest.raises(PathNotOnGraph):
        check_closed_path(d.fg, (d.traversal[0],))


def test_dual_voltage_properties():
    d = carter(TWO_CROSSING)
    fg = d.fg
    # m = 1: zero voltage
    assert all(v == 0 for v in dual_voltage(fg, d.traversal, 1).values)
    # face boundary: zero voltage
    fb = face_boundary_path(fg, faces(fg)[0])
    assert all(v == 0 for v in dual_voltage(fg, fb, 5).values)
    # total voltage of any cycle equals its pairing with h, mod m
    for m in (2, 3, 5):
        c = dual_voltage(fg, d.traversal, m)
        for z in homology_basis(fg):
            assert c.total(z) == intersect(fg, z, d.traversal) % m


def test_voltage_cover_zero_voltage_is_identity():
    from knotcob.fatgraph import Voltage

    d = carter(TWO_CROSSING)
    for m in (1, 2, 3):
        c = Voltage(m, (0,) * d.fg.n_edges)
        lifted = voltage_cover(d, c)
        assert gauss.canonical(diagram_to_code(lifted)) == gauss.canonical(
            diagram_to_code(d)
        )


def test_voltage_cover_euler_and_projection():
    d = carter(TWO_CROSSING)
    g = faces_and_genus(d.fg)[1]
    for m in (2, 3, 4):
        c = dual_voltage(d.fg, d.traversal, m)
        cov = voltage_cover(d, c)
        # these covers are connected (voltages generate Z/m)
        assert cov.fg.n_vertices == m * d.fg.n_vertices
        assert faces_and_genus(cov.fg)[1] == m * (g - 1) + 1
        # degree-1 covering of the curve: lift has the base length
        assert len(cov.traversal) == len(d.traversal)


def test_voltage_cover_does_not_lift():
    from knotcob.fatgraph import Voltage

    d = carter(TWO_CROSSING)
    basis = homology_basis(d.fg)
    h = next(
        z for z in basis if intersect(d.fg, z, d.traversal) % 2 == 1
    )
    c = dual_voltage(d.fg, h, 2)
    with pytest.raises(DoesNotLift):
        voltage_cover(d, c)


def test_cover_sheet_choice_irrelevant():
    d = carter(TWO_CROSSING)
    for m in (2, 3):
        c = dual_voltage(d.fg, d.traversal, m)
        base = None
        for k in range(m):
            cov = voltage_cover(d, c, start_sheet=k)
            inv = (
                gauss.serialize(gauss.canonical(diagram_to_code(cov))),
                u_polynomials(cov),
            )
            if base is None:
                base = inv
            assert inv == base


def test_dump_format():
    d = carter(CURL)
    text = d.fg.dump()
    assert text.startswith("v0:")
    assert len(text.splitlines()) == d.fg.n_vertices
