"""Slice obstructions: vanishing of u-polynomials, hyperbolicity of the
(higher) graded matrices, p-genera, the Lagrangian test, and the slice
genus lower bound 2 sg >= sigma.

The Lagrangian obstruction enumerates all subgroups L of
H = H_1(capped Carter surface; Z/m) with L = Ann(L) that contain the
knot class; a Lagrangian passes when every covering knot K_h, h in L,
has vanishing computable obstructions and the crossing classes admit a
matching into L.  Failure of every Lagrangian is a sound not-slice
certificate.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ResourceLimit, SizeCap
from .fatgraph import (
    EmbeddedDiagram,
    faces_and_genus,
    homology_basis,
    intersection_matrix,
    nontree_edges,
    path_cycle_coords,
    voltage_from_coords,
    voltage_cover,
)
from .graded import genus as matrix_genus
from .graded import mod_p, reduce_primitive
from .invariants import (
    DEFAULT_COVER_CAP,
    graded_matrix_of,
    half_paths,
    iterated_cover,
    u_polynomials,
)
from .linalg import skew_normal_form

DEFAULT_LAGRANGIAN_CAP = 1 << 16


@dataclass(frozen=True)
class Config:
    """Knobs for the obstruction report."""

    primes: tuple[int, ...] = (2, 3, 5)
    covers: tuple[tuple[int, ...], ...] = ((2,), (3,))
    coeff_bound: int = 2
    lagrangian_ms: tuple[int, ...] = (2,)
    max_crossings: int = DEFAULT_COVER_CAP
    max_elements: int = 18
    max_lagrangian: int = DEFAULT_LAGRANGIAN_CAP

    def __post_init__(self):
        if self.coeff_bound < 0 or self.max_crossings < 1 or self.max_elements < 1:
            raise ValueError("caps must be positive")
        for p in self.primes:
            if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise ValueError(f"{p} is not prime")


# -- symplectic coordinates on H_1 of the capped surface ---------------------

@dataclass(frozen=True)
class SymplecticData:
    genus: int
    gram: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[int, ...], ...]  # 2g basis rows in cycle coords


def symplectic_data(d: EmbeddedDiagram) -> SymplecticData:
    basis = homology_basis(d.fg)
    gram = intersection_matrix(d.fg, basis)
    divisors, u = skew_normal_form(gram)
    if any(dv != 1 for dv in divisors):
        raise AssertionError("capped intersection form must be unimodular")
    g = len(divisors)
    rows = tuple(tuple(u[i]) for i in range(2 * g))
    return SymplecticData(g, tuple(tuple(r) for r in gram), rows)


def _class_coords(d: EmbeddedDiagram, sd: SymplecticData, path, m: int) -> tuple[int, ...]:
    """H-coordinates (alpha1, beta1, ...) of a closed path, mod m."""
    nt = nontree_edges(d.fg)
    pos = {e: i for i, e in enumerate(nt)}
    c = [0] * len(nt)
    for e, mult in path_cycle_coords(d.fg, path).items():
        c[pos[e]] = mult
    n = len(c)
    ca = [sum(c[k] * sd.gram[k][l] for k in range(n)) for l in range(n)]

    def pair_with(row):
        return sum(ca[l] * row[l] for l in range(n))

    out = []
    for i in range(sd.genus):
        a_row, b_row = sd.rows[2 * i], sd.rows[2 * i + 1]
        out.append(pair_with(b_row) % m)     # alpha_i = v . b_i
        out.append((-pair_with(a_row)) % m)  # beta_i = -v . a_i
    return tuple(out)


def _coords_pairing(u: tuple[int, ...], w: tuple[int, ...], m: int) -> int:
    total = 0
    for i in range(0, len(u), 2):
        total += u[i] * w[i + 1] - u[i + 1] * w[i]
    return total % m


def _coords_to_cycle(sd: SymplecticData, coords: tuple[int, ...]) -> list[int]:
    n = len(sd.gram)
    out = [0] * n
    for i, c in enumerate(coords):
        for k in range(n):
            out[k] += c * sd.rows[i][k]
    return out


def _closure(gens: list[tuple[int, ...]], m: int, dim: int) -> frozenset[tuple[int, ...]]:
    zero = tuple([0] * dim)
    elems = {zero}
    frontier = [zero]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple((a + b) % m for a, b in zip(x, g))
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return frozenset(elems)


def lagrangians_containing(
    k0: tuple[int, ...], g: int, m: int, cap: int = DEFAULT_LAGRANGIAN_CAP
) -> list[frozenset[tuple[int, ...]]]:
    """All subgroups L = Ann(L) of (Z/m)^{2g} containing k0, by greedy
    isotropic extension (maximal isotropic = Lagrangian)."""
    if m ** (2 * g) > cap:
        raise SizeCap(f"m^2g = {m ** (2 * g)} exceeds cap {cap}")
    universe = [tuple(v) for v in itertools.product(range(m), repeat=2 * g)]
    out: list[frozenset] = []
    seen: set[frozenset] = set()

    def ann(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
        return [
            h
            for h in universe
            if all(_coords_pairing(h, x, m) == 0 for x in gens)
        ]

    def rec(elems: frozenset, gens: list[tuple[int, ...]]) -> None:
        if elems in seen:
            return
        seen.add(elems)
        annihilator = ann(gens)
        if len(annihilator) == len(elems):
            out.append(elems)
            return
        for x in annihilator:
            if x not in elems:
                rec(_closure(gens + [x], m, 2 * g), gens + [x])

    start_gens = [k0] if any(k0) else []
    rec(_closure(start_gens, m, 2 * g), start_gens)
    return sorted(out, key=lambda L: sorted(L))


@dataclass(frozen=True)
class LagrangianResult:
    passes: bool
    m: int
    surface_genus: int
    lagrangians: int
    witness: Optional[dict] = None


def lagrangian_obstruction(
    d: EmbeddedDiagram,
    m: int,
    element_cap: int = 18,
    lag_cap: int = DEFAULT_LAGRANGIAN_CAP,
) -> LagrangianResult:
    """The secondary obstruction at modulus m; ``passes=False`` is a
    sound not-slice certificate."""
    if m < 2:
        raise ValueError("m must be >= 2")
    sd = symplectic_data(d)
    k0 = _class_coords(d, sd, d.traversal, m)
    lags = lagrangians_containing(k0, sd.genus, m, lag_cap)
    hp = half_paths(d)
    cls = [_class_coords(d, sd, p, m) for _, p, _ in hp]
    memo: dict[tuple[int, ...], bool] = {}

    def h_ok(h: tuple[int, ...]) -> bool:
        if h not in memo:
            if not any(h):
                cover = d
            else:
                assert _coords_pairing(h, k0, m) == 0
                volt = voltage_from_coords(
                    d.fg, [list(r) for r in sd.gram], _coords_to_cycle(sd, h), m
                )
                cover = voltage_cover(d, volt)
            up, um = u_polynomials(cover)
            if up or um:
                memo[h] = False
            else:
                t = reduce_primitive(graded_matrix_of(cover))
                memo[h] = matrix_genus(t, element_cap) == 0
        return memo[h]

    def matching_into(lag: frozenset) -> Optional[list[tuple[int, ...]]]:
        idx = list(range(len(cls)))

        def rec(rem: tuple[int, ...]) -> Optional[list]:
            if not rem:
                return []
            x, rest = rem[0], rem[1:]
            if cls[x] in lag:
                tail = rec(rest)
                if tail is not None:
                    return [(x,)] + tail
            for k, y in enumerate(rest):
                pair_cls = tuple((a + b) % m for a, b in zip(cls[x], cls[y]))
                if pair_cls in lag:
                    tail = rec(rest[:k] + rest[k + 1:])
                    if tail is not None:
                        return [(x, y)] + tail
            return None

        return rec(tuple(idx))

    for lag in lags:
        orbits = matching_into(lag)
        if orbits is None:
            continue
        if all(h_ok(h) for h in sorted(lag)):
            witness = {
                "lagrangian": sorted(lag),
                "involution": [
                    [hp[i][0] for i in orbit] for orbit in orbits
                ],
            }
            return LagrangianResult(True, m, sd.genus, len(lags), witness)
    return LagrangianResult(False, m, sd.genus, len(lags))


# -- the aggregated report -----------------------------------------------------

@dataclass
class ObstructionReport:
    verdict: str  # "NotSlice" | "Inconclusive"
    reasons: list[dict] = field(default_factory=list)
    sg_lower_bound: int = 0
    partial: bool = False

    def to_json(self) -> str:
        return json.dumps(
            {
                "verdict": self.verdict,
                "reasons": self.reasons,
                "sg_lower_bound": self.sg_lower_bound,
                "partial": self.partial,
            },
            sort_keys=True,
        )


def obstruction_report(d: EmbeddedDiagram, config: Config = Config()) -> ObstructionReport:
    """Run every configured obstruction and collect the failures."""
    reasons: list[dict] = []
    partial = False
    sequences: list[tuple[int, ...]] = [()] + [tuple(c) for c in config.covers]
    sigma_base = Fraction(0)
    for seq in sequences:
        try:
            cur = iterated_cover(d, list(seq), config.max_crossings)
        except ResourceLimit:
            partial = True
            continue
        up, um = u_polynomials(cur)
        if up or um:
            reasons.append(
                {
                    "kind": "u_nonzero",
                    "cover": list(seq),
                    "u_plus": str(up),
                    "u_minus": str(um),
                }
            )
        t = reduce_primitive(graded_matrix_of(cur))
        try:
            sigma = matrix_genus(t, config.max_elements)
        except SizeCap:
            partial = True
            continue
        if seq == ():
            sigma_base = sigma
        if sigma != 0:
            reasons.append(
                {"kind": "not_hyperbolic", "cover": list(seq), "sigma": str(sigma)}
            )
        for p in config.primes:
            try:
                sp = matrix_genus(mod_p(t, p), config.max_elements)
            except SizeCap:
                partial = True
                continue
            if sp != 0:
                reasons.append(
                    {
                        "kind": "p_genus_nonzero",
                        "cover": list(seq),
                        "p": p,
                        "sigma_p": str(sp),
                    }
                )
    for m in config.lagrangian_ms:
        try:
            res = lagrangian_obstruction(d, m, config.max_elements, config.max_lagrangian)
        except SizeCap:
            partial = True
            continue
        if not res.passes:
            reasons.append(
                {
                    "kind": "lagrangian",
                    "m": m,
                    "surface": "carter",
                    "lagrangians_checked": res.lagrangians,
                }
            )
    bound = math.ceil(sigma_base / 2)
    return ObstructionReport(
        "NotSlice" if reasons else "Inconclusive",
        reasons,
        int(bound),
        partial,
    )
