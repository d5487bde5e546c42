"""
The obstruction check at gamma = x_1 x_2^{-1} (genus >= 2).

Every coboundary d(m) evaluated at gamma has coefficient 0 on the canonical
wedge x_1 ^ x_2^{-1}: a term {gamma, u} ^ v can only land there when gamma*u
is x_1 or x_2^{-1}, and in both cases i(gamma, u) = 0.  The loop cobracket,
abelianized, takes exactly the value x_1 ^ x_2^{-1} at gamma, so no coboundary
can agree with it there.  The scan below checks the vanishing on every
canonical pair of a finite window; the loop-side value is a recorded constant,
not something computed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from w1coh.bimodules import Wedge2Element, coboundary_value
from w1coh.errors import GenusError, WindowError
from w1coh.lattice_poisson import LaurentElement, box, format_fraction


def _need_genus(genus: int) -> None:
    if genus < 2:
        raise GenusError(f"the gamma check needs genus >= 2, got {genus}")


def gamma(genus: int) -> tuple:
    """Exponent vector of x_1 x_2^{-1}."""
    _need_genus(genus)
    return (1, 0, -1, 0) + (0,) * (2 * genus - 4)


def target_pair(genus: int) -> tuple:
    """Canonical (u > v) orientation of x_1 ^ x_2^{-1}."""
    _need_genus(genus)
    x1 = (1,) + (0,) * (2 * genus - 1)
    x2inv = (0, 0, -1) + (0,) * (2 * genus - 3)
    return (x1, x2inv) if x1 > x2inv else (x2inv, x1)


def target_coefficient(w: Wedge2Element) -> Fraction:
    """Coefficient of x_1 ^ x_2^{-1} in d(w)(gamma), for any finite wedge element."""
    g = w.genus
    value = coboundary_value(w, LaurentElement.mono(gamma(g)))
    return value.coefficient(*target_pair(g))


def gamma_coefficient(u: tuple, v: tuple, genus: int) -> Fraction:
    """Coefficient of x_1 ^ x_2^{-1} in d(u ^ v)(gamma)."""
    _need_genus(genus)
    if len(u) != 2 * genus or len(v) != 2 * genus:
        raise GenusError(f"monomials must have length {2 * genus}")
    return target_coefficient(Wedge2Element(genus, {(tuple(u), tuple(v)): 1}))


def turaev_value(genus: int) -> Wedge2Element:
    """The recorded loop-cobracket value at gamma after abelianization."""
    return Wedge2Element(genus, {target_pair(genus): 1})


@dataclass(frozen=True)
class TuraevReport:
    genus: int
    radius: int
    pairs_checked: int
    all_zero: bool
    nonzero: list = field(default_factory=list)  # [(u, v, coefficient)]

    @property
    def passed(self) -> bool:
        return self.all_zero

    def to_json(self) -> dict:
        g = self.genus
        return {
            "genus": g,
            "radius": self.radius,
            "gamma": list(gamma(g)),
            "pairs_checked": self.pairs_checked,
            "all_zero": self.all_zero,
            "nonzero": [{"u": list(u), "v": list(v), "coef": format_fraction(c)}
                        for u, v, c in self.nonzero],
            "turaev_value": {
                "value": turaev_value(g).to_json(),
                "provenance": "recorded constant (abelianized loop cobracket at gamma)",
            },
            "conclusion": (
                "no coboundary supported in the window takes the recorded value at gamma"
                if self.all_zero else
                "a window coboundary has a non-zero target coefficient"),
        }


def nontriviality_scan(genus: int, radius: int) -> TuraevReport:
    """Evaluate gamma_coefficient on every canonical pair u > v with ||u||, ||v|| <= radius."""
    _need_genus(genus)
    if radius < 0:
        raise WindowError(f"radius must be >= 0, got {radius}")
    G = LaurentElement.mono(gamma(genus))
    tgt = target_pair(genus)
    monos = box(genus, radius)
    count = 0
    bad = []
    for i, u in enumerate(monos):
        for v in monos[:i]:  # box() is sorted, so u > v
            count += 1
            c = coboundary_value(Wedge2Element._raw(genus, {(u, v): Fraction(1)}), G
                                 ).coefficient(*tgt)
            if c:
                bad.append((u, v, c))
    return TuraevReport(genus, radius, count, not bad, bad)
