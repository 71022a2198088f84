"""Integer polynomials in t with zero constant term.

These house the knot polynomials u+ and u-.  The constant term is
structurally absent: every stored exponent is >= 1 and no zero
coefficients are kept.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Poly:
    """Sparse integer polynomial with zero constant term.

    ``terms`` is a tuple of (exponent, coefficient) pairs, sorted by
    increasing exponent, with all exponents >= 1 and no zero
    coefficients.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        seen = set()
        last = 0
        for exp, coeff in self.terms:
            if exp < 1:
                raise ValueError("constant or negative-degree term not allowed")
            if coeff == 0:
                raise ValueError("zero coefficient stored")
            if exp <= last or exp in seen:
                raise ValueError("terms must be sorted by increasing exponent")
            seen.add(exp)
            last = exp

    @classmethod
    def from_dict(cls, coeffs: dict[int, int]) -> "Poly":
        terms = tuple(sorted((e, c) for e, c in coeffs.items() if c != 0))
        return cls(terms)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "Poly":
        if coeff == 0:
            return cls()
        return cls(((exp, coeff),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        coeffs = self.as_dict()
        for e, c in other.terms:
            coeffs[e] = coeffs.get(e, 0) + c
        return Poly.from_dict(coeffs)

    def __neg__(self) -> "Poly":
        return Poly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, scalar: int) -> "Poly":
        if scalar == 0:
            return Poly()
        return Poly(tuple((e, c * scalar) for e, c in self.terms))

    __rmul__ = __mul__

    def derivative_at_one(self) -> int:
        """Value of d/dt at t=1, i.e. sum of exp*coeff."""
        return sum(e * c for e, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "t" if e == 1 else f"t^{e}"
            if abs(c) != 1:
                mono = f"{abs(c)}{mono}"
            if not parts:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"{'+' if c > 0 else '-'} {mono}")
        return " ".join(parts)


ZERO = Poly()
