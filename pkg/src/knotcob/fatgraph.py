"""Ribbon graphs (fatgraphs), Carter surfaces and their homology.

A fatgraph carries a cyclic counterclockwise order of half-edges at
each vertex and thereby presents a closed oriented surface (cap every
face with a disk).  Edge k owns half-edges 2k (tail) and 2k+1 (head)
and is directed tail -> head.  Faces are traced with the face lying on
the left of the walk.

The homological intersection number of closed edge paths is computed
exactly: every passage of a path through an edge band gets its own
parallel lane, each passage of a vertex disk becomes a directed chord
between boundary points, and two chords cross iff their endpoints
interleave on the disk boundary.  The sign convention: +1 when the
counterclockwise boundary order is (a-start, b-start, a-end, b-end).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import Disconnected, DoesNotLift, OddEuler, PathNotOnGraph
from .gauss import GaussCode

# A directed edge: (edge index, +1 for tail->head, -1 for head->tail).
Step = tuple[int, int]
EdgePath = tuple[Step, ...]


@dataclass(frozen=True)
class Fatgraph:
    """Vertices with a ccw cyclic order of incident half-edges."""

    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for rot in self.rotations:
            for h in rot:
                if h in seen:
                    raise ValueError(f"half-edge {h} attached twice")
                seen.add(h)
        if seen != set(range(len(seen))):
            raise ValueError("half-edges must be exactly 0..2E-1")
        if len(seen) % 2:
            raise ValueError("odd number of half-edges")

    @property
    def n_vertices(self) -> int:
        return len(self.rotations)

    @property
    def n_edges(self) -> int:
        return sum(len(r) for r in self.rotations) // 2

    def vertex_of(self) -> list[int]:
        out = [0] * (2 * self.n_edges)
        for v, rot in enumerate(self.rotations):
            for h in rot:
                out[h] = v
        return out

    def edge_tail(self, e: int) -> int:
        return self.vertex_of()[2 * e]

    def edge_head(self, e: int) -> int:
        return self.vertex_of()[2 * e + 1]

    def dump(self) -> str:
        """Debug form: one vertex per line, half-edge h of edge e printed
        as +e (tail end) or -e (head end)."""
        lines = []
        for v, rot in enumerate(self.rotations):
            toks = " ".join(f"{'+' if h % 2 == 0 else '-'}{h // 2}" for h in rot)
            lines.append(f"v{v}: {toks}")
        return "\n".join(lines)


def step_tail(fg: Fatgraph, step: Step, vmap=None) -> int:
    vmap = vmap if vmap is not None else fg.vertex_of()
    e, d = step
    return vmap[2 * e] if d > 0 else vmap[2 * e + 1]


def step_head(fg: Fatgraph, step: Step, vmap=None) -> int:
    vmap = vmap if vmap is not None else fg.vertex_of()
    e, d = step
    return vmap[2 * e + 1] if d > 0 else vmap[2 * e]


def check_closed_path(fg: Fatgraph, path: EdgePath) -> None:
    if not path:
        raise PathNotOnGraph("empty path")
    vmap = fg.vertex_of()
    ne = fg.n_edges
    for (e, d) in path:
        if not (0 <= e < ne) or d not in (1, -1):
            raise PathNotOnGraph(f"bad step ({e}, {d})")
    for i, step in enumerate(path):
        nxt = path[(i + 1) % len(path)]
        if step_head(fg, step, vmap) != step_tail(fg, nxt, vmap):
            raise PathNotOnGraph(f"steps {i} and {i + 1} do not compose")


# -- faces and genus --------------------------------------------------------

def faces(fg: Fatgraph) -> list[tuple[int, ...]]:
    """Faces as orbits of departing half-edges, d -> sigma^{-1}(i(d));
    the face disk lies on the left of each walk."""
    prev_in_rot: dict[int, int] = {}
    for rot in fg.rotations:
        for i, h in enumerate(rot):
            prev_in_rot[h] = rot[i - 1]
    out = []
    seen: set[int] = set()
    for start in range(2 * fg.n_edges):
        if start in seen:
            continue
        orbit = []
        d = start
        while d not in seen:
            seen.add(d)
            orbit.append(d)
            d = prev_in_rot[d ^ 1]
        out.append(tuple(orbit))
    return out


def components(fg: Fatgraph) -> list[set[int]]:
    vmap = fg.vertex_of()
    adj: dict[int, set[int]] = {v: set() for v in range(fg.n_vertices)}
    for e in range(fg.n_edges):
        adj[vmap[2 * e]].add(vmap[2 * e + 1])
        adj[vmap[2 * e + 1]].add(vmap[2 * e])
    seen: set[int] = set()
    comps = []
    for v0 in range(fg.n_vertices):
        if v0 in seen:
            continue
        comp = {v0}
        stack = [v0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def faces_and_genus(fg: Fatgraph) -> tuple[list[tuple[int, ...]], int]:
    """Faces plus the total genus of the capped closed surface (sum of
    component genera for a disconnected fatgraph)."""
    fl = faces(fg)
    chi = fg.n_vertices - fg.n_edges + len(fl)
    if chi % 2:
        raise OddEuler(f"Euler characteristic {chi} is odd")
    ncomp = len(components(fg))
    genus = ncomp - chi // 2
    if genus < 0:
        raise OddEuler("negative genus: corrupt fatgraph")
    return fl, genus


def face_boundary_path(fg: Fatgraph, face: tuple[int, ...]) -> EdgePath:
    """The face boundary as a closed edge path."""
    return tuple((d // 2, 1 if d % 2 == 0 else -1) for d in face)


# -- spanning tree and fundamental cycles ----------------------------------

def _spanning_tree(fg: Fatgraph) -> tuple[dict[int, Step], list[int]]:
    """BFS tree from vertex 0: parent step per vertex (step leads from
    parent to the vertex) and the sorted list of non-tree edges."""
    vmap = fg.vertex_of()
    adj: dict[int, list[tuple[int, Step]]] = {v: [] for v in range(fg.n_vertices)}
    for e in range(fg.n_edges):
        t, h = vmap[2 * e], vmap[2 * e + 1]
        adj[t].append((h, (e, 1)))
        adj[h].append((t, (e, -1)))
    parent: dict[int, Step] = {}
    order = [0]
    seen = {0}
    tree_edges: set[int] = set()
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w, step in sorted(adj[v], key=lambda x: (x[1][0], -x[1][1], x[0])):
            if w not in seen:
                seen.add(w)
                parent[w] = step
                tree_edges.add(step[0])
                order.append(w)
    if len(seen) != fg.n_vertices:
        raise Disconnected("fatgraph is not connected")
    nontree = sorted(set(range(fg.n_edges)) - tree_edges)
    return parent, nontree


def _tree_path(fg: Fatgraph, parent: dict[int, Step], src: int, dst: int) -> list[Step]:
    """Path src -> dst inside the spanning tree."""
    vmap = fg.vertex_of()
    dst_chain = {dst}
    v = dst
    while v in parent:
        v = step_tail(fg, parent[v], vmap)
        dst_chain.add(v)
    path: list[Step] = []
    v = src
    while v not in dst_chain:
        step = parent[v]
        path.append((step[0], -step[1]))
        v = step_tail(fg, step, vmap)
    down: list[Step] = []
    w = dst
    while w != v:
        step = parent[w]
        down.append(step)
        w = step_tail(fg, step, vmap)
    path.extend(reversed(down))
    return path


def homology_basis(fg: Fatgraph) -> list[EdgePath]:
    """Fundamental cycles z_e, one per non-tree edge, deterministic."""
    parent, nontree = _spanning_tree(fg)
    out = []
    vmap = fg.vertex_of()
    for e in nontree:
        cyc: list[Step] = [(e, 1)]
        cyc.extend(_tree_path(fg, parent, vmap[2 * e + 1], vmap[2 * e]))
        out.append(tuple(cyc))
    return out


def nontree_edges(fg: Fatgraph) -> list[int]:
    return _spanning_tree(fg)[1]


def path_cycle_coords(fg: Fatgraph, path: EdgePath) -> dict[int, int]:
    """Coordinates of a closed path in the fundamental-cycle basis:
    signed multiplicity of each non-tree edge."""
    check_closed_path(fg, path)
    nontree = set(nontree_edges(fg))
    coords: dict[int, int] = {}
    for e, d in path:
        if e in nontree:
            coords[e] = coords.get(e, 0) + d
    return {e: c for e, c in coords.items() if c != 0}


# -- exact intersection numbers ---------------------------------------------

def _chords_by_vertex(
    fg: Fatgraph, paths: Sequence[EdgePath], lane_perm=None
) -> tuple[dict[int, list[tuple[int, int, int]]], dict[int, int]]:
    """Chords (start point, end point, path tag) per vertex disk.

    ``lane_perm(edge, n)`` may return a permutation of range(n) used to
    re-seat the n passages of an edge in its band; intersection numbers
    must not depend on it.
    """
    for p in paths:
        check_closed_path(fg, p)
    vmap = fg.vertex_of()
    # passages[(edge)] = list of (path index, step index)
    passages: dict[int, list[tuple[int, int]]] = {}
    for pi, p in enumerate(paths):
        for si, (e, _) in enumerate(p):
            passages.setdefault(e, []).append((pi, si))
    lane: dict[tuple[int, int], int] = {}
    for e, lst in passages.items():
        order = list(range(len(lst)))
        if lane_perm is not None:
            order = lane_perm(e, len(lst))
        for ln, idx in zip(order, range(len(lst))):
            lane[lst[idx]] = ln
    # boundary points: per vertex, walk the rotation; on a tail arc the
    # ccw order is by increasing lane, on a head arc decreasing.
    point: dict[tuple[int, int, int], int] = {}  # (path, step, end 0=tail 1=head)
    npoints: dict[int, int] = {}
    for v, rot in enumerate(fg.rotations):
        count = 0
        for h in rot:
            e = h // 2
            end = h % 2
            here = [(lane[key], key) for key in passages.get(e, ())]
            here.sort(reverse=(end == 1))
            for _, (pi, si) in here:
                point[(pi, si, end)] = count
                count += 1
        npoints[v] = count
    chords: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(fg.n_vertices)}
    for pi, p in enumerate(paths):
        L = len(p)
        for si, step in enumerate(p):
            nxt_i = (si + 1) % L
            nxt = p[nxt_i]
            v = step_head(fg, step, vmap)
            arr_end = 1 if step[1] > 0 else 0
            dep_end = 0 if nxt[1] > 0 else 1
            start = point[(pi, si, arr_end)]
            end = point[(pi, nxt_i, dep_end)]
            chords[v].append((start, end, pi))
    return chords, npoints


def _chord_sign(a1: int, a2: int, b1: int, b2: int, m: int) -> int:
    ra2 = (a2 - a1) % m
    rb1 = (b1 - a1) % m
    rb2 = (b2 - a1) % m
    if rb1 < ra2 < rb2:
        return 1
    if rb2 < ra2 < rb1:
        return -1
    return 0


def intersection_matrix(
    fg: Fatgraph, paths: Sequence[EdgePath], lane_perm=None
) -> list[list[int]]:
    """Pairwise homological intersection numbers of closed paths on the
    capped surface; the diagonal is 0 by skew-symmetry."""
    k = len(paths)
    out = [[0] * k for _ in range(k)]
    chords, npoints = _chords_by_vertex(fg, paths, lane_perm)
    for v, cl in chords.items():
        m = npoints[v]
        n = len(cl)
        for i in range(n):
            a1, a2, pa = cl[i]
            for j in range(i + 1, n):
                b1, b2, pb = cl[j]
                if pa == pb:
                    continue
                s = _chord_sign(a1, a2, b1, b2, m)
                if s:
                    out[pa][pb] += s
                    out[pb][pa] -= s
    return out


def intersect(fg: Fatgraph, a: EdgePath, b: EdgePath, lane_perm=None) -> int:
    """Homological intersection number [a].[b] on the capped surface."""
    return intersection_matrix(fg, (a, b), lane_perm)[0][1]


def intersect_each(fg: Fatgraph, paths: Sequence[EdgePath], other: EdgePath) -> list[int]:
    """[p].[other] for every p in paths, sharing one lane layout."""
    k = len(paths)
    chords, npoints = _chords_by_vertex(fg, list(paths) + [other])
    out = [0] * k
    for v, cl in chords.items():
        m = npoints[v]
        targets = [c for c in cl if c[2] == k]
        if not targets:
            continue
        for a1, a2, pa in cl:
            if pa == k:
                continue
            for b1, b2, _ in targets:
                s = _chord_sign(a1, a2, b1, b2, m)
                if s:
                    out[pa] += s
    return out


# -- embedded diagrams -------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    vertex: int
    label: str
    writhe: int
    pos1: int
    pos2: int
    flag1: str
    flag2: str

    @property
    def eta(self) -> int:
        """Orientation of (first pass, second pass) tangent frame."""
        return self.writhe if self.flag1 == "O" else -self.writhe


@dataclass(frozen=True)
class EmbeddedDiagram:
    """A knot curve carried on a fatgraph.

    ``traversal`` walks every diagram edge; crossings are the vertices
    the walk visits twice, with their over/under and writhe data.
    """

    fg: Fatgraph
    traversal: EdgePath
    crossings: tuple[Crossing, ...]

    def crossing_at(self, label: str) -> Crossing:
        for c in self.crossings:
            if c.label == label:
                return c
        raise KeyError(label)

    def genus(self) -> int:
        return faces_and_genus(self.fg)[1]


def build_carter(code: GaussCode) -> EmbeddedDiagram:
    """Carter surface of a signed Gauss code: one 4-valent vertex per
    crossing, one edge per diagram arc, rotations fixed by the local
    orientation eta of (first pass, second pass)."""
    n2 = len(code.word)
    if n2 == 0:
        fg = Fatgraph(((1, 0),))
        return EmbeddedDiagram(fg, ((0, 1),), ())
    labels = code.labels()
    vidx = {lab: i for i, lab in enumerate(labels)}
    rotations: list[tuple[int, ...]] = [()] * len(labels)
    crossings = []
    for lab in labels:
        i, j = code.positions(lab)
        w = code.writhe[lab]
        flag1 = code.word[i][1]
        flag2 = code.word[j][1]
        eta = w if flag1 == "O" else -w
        in1 = 2 * ((i - 1) % n2) + 1
        out1 = 2 * i
        in2 = 2 * ((j - 1) % n2) + 1
        out2 = 2 * j
        if eta == 1:
            rot = (in1, in2, out1, out2)
        else:
            rot = (in1, out2, out1, in2)
        v = vidx[lab]
        rotations[v] = rot
        crossings.append(Crossing(v, lab, w, i, j, flag1, flag2))
    fg = Fatgraph(tuple(rotations))
    traversal = tuple((e, 1) for e in range(n2))
    return EmbeddedDiagram(fg, traversal, tuple(crossings))


def diagram_to_code(d: EmbeddedDiagram) -> GaussCode:
    """Read the Gauss code back off an embedded diagram (canonical
    labels 1..n in traversal order)."""
    by_pos: dict[int, tuple[str, str, int]] = {}
    for c in d.crossings:
        by_pos[c.pos1] = (c.label, c.flag1, c.writhe)
        by_pos[c.pos2] = (c.label, c.flag2, c.writhe)
    word = []
    writhe: dict[str, int] = {}
    rename: dict[str, str] = {}
    for t in range(len(d.traversal)):
        if t not in by_pos:
            continue
        lab, flag, w = by_pos[t]
        if lab not in rename:
            rename[lab] = str(len(rename) + 1)
        word.append((rename[lab], flag))
        writhe[rename[lab]] = w
    return GaussCode(tuple(word), writhe)


# -- voltage coverings --------------------------------------------------------

@dataclass(frozen=True)
class Voltage:
    """Z/m voltage per edge (value negated under direction reversal);
    every face boundary must sum to zero so the covering caps."""

    m: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("modulus must be >= 1")
        if any(not (0 <= v < self.m) for v in self.values):
            raise ValueError("voltages must be reduced mod m")

    def of_step(self, step: Step) -> int:
        e, d = step
        return self.values[e] % self.m if d > 0 else (-self.values[e]) % self.m

    def total(self, path: EdgePath) -> int:
        return sum(self.of_step(s) for s in path) % self.m


def check_voltage(fg: Fatgraph, c: Voltage) -> None:
    if len(c.values) != fg.n_edges:
        raise ValueError("voltage length mismatch")
    for f in faces(fg):
        if c.total(face_boundary_path(fg, f)) != 0:
            raise ValueError("face with nonzero total voltage")


def dual_voltage(fg: Fatgraph, h: EdgePath, m: int) -> Voltage:
    """Voltage of the covering dual to the class of h mod m: zero on a
    spanning tree, z_e . h on the non-tree edge e."""
    check_closed_path(fg, h)
    if m < 1:
        raise ValueError("modulus must be >= 1")
    basis = homology_basis(fg)
    nontree = nontree_edges(fg)
    vals = [0] * fg.n_edges
    if m > 1 and basis:
        nums = intersect_each(fg, basis, h)
        for e, num in zip(nontree, nums):
            vals[e] = num % m
    return Voltage(m, tuple(vals))


def voltage_from_coords(fg: Fatgraph, gram: list[list[int]], coords: Sequence[int], m: int) -> Voltage:
    """Voltage dual to the class with the given fundamental-cycle
    coordinates: c(z_e) = sum_j gram[e][j] * coords[j] mod m."""
    nontree = nontree_edges(fg)
    vals = [0] * fg.n_edges
    for row, e in enumerate(nontree):
        vals[e] = sum(gram[row][j] * coords[j] for j in range(len(coords))) % m
    return Voltage(m, tuple(vals))


def voltage_cover(d: EmbeddedDiagram, c: Voltage, start_sheet: int = 0) -> EmbeddedDiagram:
    """Lift of the diagram to the voltage covering, restricted to the
    connected component carrying the lift of the traversal."""
    fg = d.fg
    m = c.m
    check_voltage(fg, c)
    if c.total(d.traversal) != 0:
        raise DoesNotLift("traversal has nonzero monodromy")
    vmap = fg.vertex_of()
    # sheets visited by the lift of the traversal
    sheets = []
    s = start_sheet % m
    for step in d.traversal:
        sheets.append(s)
        s = (s + c.of_step(step)) % m
    # reachable component of the cover, from the lift's start vertex
    start = (step_tail(fg, d.traversal[0], vmap), start_sheet % m)
    seen = {start}
    stack = [start]
    while stack:
        v, i = stack.pop()
        for h in fg.rotations[v]:
            e = h // 2
            if h % 2 == 0:
                w = (vmap[2 * e + 1], (i + c.values[e]) % m)
            else:
                w = (vmap[2 * e], (i - c.values[e]) % m)
            if w not in seen:
                seen.add(w)
                stack.append(w)
    vlist = sorted(seen)
    vindex = {vi: k for k, vi in enumerate(vlist)}
    # edge copies: (e, sheet of tail端)
    elist = []
    for e in range(fg.n_edges):
        for i in range(m):
            if (vmap[2 * e], i) in seen:
                elist.append((e, i))
    eindex = {ei: k for k, ei in enumerate(elist)}
    rotations = []
    for (v, i) in vlist:
        rot = []
        for h in fg.rotations[v]:
            e = h // 2
            if h % 2 == 0:
                rot.append(2 * eindex[(e, i)])
            else:
                rot.append(2 * eindex[(e, (i - c.values[e]) % m)] + 1)
        rotations.append(tuple(rot))
    cover = Fatgraph(tuple(rotations))
    lift: list[Step] = []
    for step, sh in zip(d.traversal, sheets):
        e, dr = step
        tail_sheet = sh if dr > 0 else (sh - c.values[e]) % m
        lift.append((eindex[(e, tail_sheet)], dr))
    # crossing inheritance: base crossing survives iff both passes land
    # on the same sheet of its vertex
    crossings = []
    for cr in d.crossings:
        s1, s2 = sheets[cr.pos1], sheets[cr.pos2]
        if s1 == s2:
            v = vindex[(cr.vertex, s1)]
            crossings.append(
                Crossing(v, f"{cr.label}s{s1}", cr.writhe, cr.pos1, cr.pos2,
                         cr.flag1, cr.flag2)
            )
    return EmbeddedDiagram(cover, tuple(lift), tuple(crossings))
