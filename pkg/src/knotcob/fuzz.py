"""Seeded randomized invariance checking: random codes, random R-move
walks, and the invariants that must survive them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .fatgraph import build_carter
from .gauss import GaussCode, random_code, serialize
from .graded import GradedMatrix, is_isomorphic, reduce_primitive
from .invariants import graded_matrix_of, u_polynomials
from .moves import RMove, apply_rmove, enumerate_rmoves


@dataclass
class FuzzViolation:
    case: int
    start: str
    moves: list[RMove]
    message: str


@dataclass
class FuzzReport:
    cases: int
    moves_applied: int = 0
    violations: list[FuzzViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def random_move(code: GaussCode, rng: random.Random) -> RMove:
    """Pick a kind uniformly among the available kinds, then a move."""
    moves = enumerate_rmoves(code)
    kinds = sorted({m.kind for m in moves})
    kind = rng.choice(kinds)
    return rng.choice([m for m in moves if m.kind == kind])


def run_rmove_fuzz(
    seed: int,
    cases: int = 500,
    max_crossings: int = 6,
    max_moves: int = 8,
) -> FuzzReport:
    """Random codes, random move walks; u+/u-/u and the class of
    T-bullet must be unchanged, and every code must satisfy the
    derivative identity u'+(1) = u'-(1)."""
    rng = random.Random(seed)
    report = FuzzReport(cases)
    for case in range(cases):
        code = random_code(rng, max_crossings)
        d = build_carter(code)
        up0, um0 = u_polynomials(d)
        t0 = reduce_primitive(graded_matrix_of(d))
        if up0.derivative_at_one() != um0.derivative_at_one():
            report.violations.append(
                FuzzViolation(case, serialize(code), [], "u'+(1) != u'-(1) on start")
            )
            continue
        cur = code
        applied: list[RMove] = []
        bad = False
        for _ in range(rng.randint(0, max_moves)):
            mv = random_move(cur, rng)
            applied.append(mv)
            cur = apply_rmove(cur, mv)
            report.moves_applied += 1
            up, um = u_polynomials(build_carter(cur))
            if (up, um) != (up0, um0):
                report.violations.append(
                    FuzzViolation(
                        case,
                        serialize(code),
                        applied.copy(),
                        f"u changed: ({up}, {um}) != ({up0}, {um0})",
                    )
                )
                bad = True
                break
            if up.derivative_at_one() != um.derivative_at_one():
                report.violations.append(
                    FuzzViolation(case, serialize(code), applied.copy(), "u'+(1) != u'-(1)")
                )
                bad = True
                break
        if bad:
            continue
        t1 = reduce_primitive(graded_matrix_of(build_carter(cur)))
        if not is_isomorphic(t0, t1):
            report.violations.append(
                FuzzViolation(case, serialize(code), applied, "T_bullet class changed")
            )
    return report


def random_skew_matrix(
    rng: random.Random, max_elements: int = 8, entry_bound: int = 3
) -> GradedMatrix:
    """Random skew-symmetric graded matrix over Z."""
    n = rng.randint(1, max_elements)
    names = ("s",) + tuple(f"g{i}" for i in range(1, n))
    signs = tuple(rng.choice((1, -1)) for _ in range(n - 1))
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-entry_bound, entry_bound)
            b[i][j] = v
            b[j][i] = -v
    return GradedMatrix(names, signs, tuple(tuple(r) for r in b))
