"""
Windowed 1-cochains W_1(g) -> W_1(g)^{(x)2} or W_1(g)^{^2}.

A cochain is known on every monomial Z with sup-norm <= domain_radius and
nowhere else.  Its values are exact, untruncated module elements.  Asking for
a value outside the window raises WindowError; it is never read as zero.

Residual convention used throughout:

    res(Z1, Z2) = i(Z1, Z2) D(Z1 Z2) - Z1 . D(Z2) + Z2 . D(Z1)

which vanishes for every in-window pair exactly when D is a cocycle on the
window.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from w1coh.bimodules import (
    Tensor2Element,
    Wedge2Element,
    act,
    element_class,
    element_from_json,
)
from w1coh.errors import GenusError, ParseError, WindowError
from w1coh.lattice_poisson import (
    LaurentElement,
    Monomial,
    box,
    format_fraction,
    generators,
    graded_key,
    intersection_form,
    monomial_str,
    parse_fraction,
    parse_monomial,
    sup_norm,
    unit,
)


# -- functionals on the exponent lattice --------------------------------------

@dataclass(frozen=True)
class HomFunctional:
    """A homomorphism Z^{2g} -> Q given by its values on the standard basis."""

    basis_values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(c) for c in self.basis_values)
        if not vals or len(vals) % 2:
            raise GenusError(f"need 2g basis values, got {len(vals)}")
        object.__setattr__(self, "basis_values", vals)

    @property
    def genus(self) -> int:
        return len(self.basis_values) // 2

    def __call__(self, u: Monomial) -> Fraction:
        if len(u) != len(self.basis_values):
            raise GenusError(f"monomial {u} does not match genus {self.genus}")
        return sum((c * a for c, a in zip(self.basis_values, u)), Fraction(0))

    @classmethod
    def basis(cls, genus: int, index: int) -> "HomFunctional":
        """The dual of the ``index``-th coordinate (0-based, order a_1, b_1, ...)."""
        vals = [0] * (2 * genus)
        vals[index] = 1
        return cls(tuple(vals))

    def to_json(self) -> dict:
        return {"basis_values": [format_fraction(c) for c in self.basis_values]}

    @classmethod
    def from_json(cls, data) -> "HomFunctional":
        try:
            vals = data["basis_values"]
        except (KeyError, TypeError):
            raise ParseError("HomFunctional needs 'basis_values'") from None
        if not isinstance(vals, list) or not vals or len(vals) % 2:
            raise ParseError("basis_values must be a list of 2g rationals")
        return cls(tuple(parse_fraction(c) for c in vals))


@dataclass(frozen=True)
class FiniteKMap:
    """An arbitrary finitely supported map Z^{2g} -> Q, zero off its support."""

    genus: int
    values: Mapping = field(default_factory=dict)

    def __post_init__(self):
        vals = {}
        for u, c in dict(self.values).items():
            u = tuple(u)
            if len(u) != 2 * self.genus:
                raise GenusError(f"monomial {u} does not match genus {self.genus}")
            c = Fraction(c)
            if c:
                vals[u] = c
        object.__setattr__(self, "values", vals)

    def __call__(self, u: Monomial) -> Fraction:
        return self.values.get(tuple(u), Fraction(0))

    def __hash__(self):
        return hash((self.genus, frozenset(self.values.items())))

    @classmethod
    def indicator(cls, u: Monomial, value=1) -> "FiniteKMap":
        return cls(len(u) // 2, {tuple(u): value})

    @classmethod
    def from_function(cls, genus: int, fn: Callable, radius: int) -> "FiniteKMap":
        """Tabulate ``fn`` on the box of the given radius."""
        return cls(genus, {u: fn(u) for u in box(genus, radius)})

    @classmethod
    def restrict(cls, k: HomFunctional, radius: int) -> "FiniteKMap":
        return cls.from_function(k.genus, k, radius)

    def with_value(self, u: Monomial, value) -> "FiniteKMap":
        vals = dict(self.values)
        vals[tuple(u)] = value
        return FiniteKMap(self.genus, vals)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "values": [{"exp": list(u), "value": format_fraction(c)}
                       for u, c in sorted(self.values.items())],
        }

    @classmethod
    def from_json(cls, data) -> "FiniteKMap":
        try:
            genus = data["genus"]
            vals = {parse_monomial(t["exp"], genus): parse_fraction(t["value"])
                    for t in data["values"]}
        except (KeyError, TypeError):
            raise ParseError("malformed FiniteKMap") from None
        return cls(genus, vals)


def kmap_from_json(data):
    if isinstance(data, dict) and "basis_values" in data:
        return HomFunctional.from_json(data)
    return FiniteKMap.from_json(data)


# -- cochains -----------------------------------------------------------------

class Cochain1:
    """
    A 1-cochain known on the window ||Z||_inf <= domain_radius.

    ``values`` maps monomials to Tensor2Element / Wedge2Element; monomials that
    are in the window but absent from the mapping have value zero.
    """

    __slots__ = ("genus", "flavor", "domain_radius", "_values")

    def __init__(self, genus: int, flavor: str, domain_radius: int, values: Mapping = ()):
        if domain_radius < 0:
            raise WindowError(f"domain radius must be >= 0, got {domain_radius}")
        cls = element_class(flavor)
        self.genus = genus
        self.flavor = flavor
        self.domain_radius = domain_radius
        vals = {}
        items = values.items() if isinstance(values, Mapping) else values
        for Z, m in items:
            Z = tuple(Z)
            if len(Z) != 2 * genus:
                raise GenusError(f"monomial {Z} does not match genus {genus}")
            if sup_norm(Z) > domain_radius:
                raise WindowError(f"{monomial_str(Z)} outside domain radius {domain_radius}")
            if not isinstance(m, cls) or m.genus != genus:
                raise TypeError(f"value at {Z} is not a genus-{genus} {flavor} element")
            if m:
                vals[Z] = m
        self._values = vals

    def in_window(self, Z: Monomial) -> bool:
        return len(Z) == 2 * self.genus and sup_norm(Z) <= self.domain_radius

    def __call__(self, Z: Monomial):
        Z = tuple(Z)
        if not self.in_window(Z):
            raise WindowError(
                f"{monomial_str(Z)} is outside the domain window of radius {self.domain_radius}")
        v = self._values.get(Z)
        return v if v is not None else element_class(self.flavor).zero(self.genus)

    value = __call__

    def window(self) -> list:
        return box(self.genus, self.domain_radius)

    def support(self) -> list:
        return sorted(self._values)

    def items(self):
        for Z in sorted(self._values):
            yield Z, self._values[Z]

    def _check(self, other: "Cochain1"):
        if (self.genus, self.flavor, self.domain_radius) != (
                other.genus, other.flavor, other.domain_radius):
            raise WindowError("cochains live on different windows or flavors")

    def __add__(self, other):
        if not isinstance(other, Cochain1):
            return NotImplemented
        self._check(other)
        vals = dict(self._values)
        for Z, m in other._values.items():
            vals[Z] = vals[Z] + m if Z in vals else m
        return Cochain1(self.genus, self.flavor, self.domain_radius, vals)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, Cochain1):
            return NotImplemented
        return self + (-other)

    def scale(self, r) -> "Cochain1":
        return Cochain1(self.genus, self.flavor, self.domain_radius,
                        {Z: m.scale(r) for Z, m in self._values.items()})

    def __rmul__(self, r):
        if isinstance(r, (int, Fraction)):
            return self.scale(r)
        return NotImplemented

    def map_values(self, fn, flavor: str | None = None) -> "Cochain1":
        """Apply a module map value-wise, e.g. ``tensor_to_wedge``."""
        return Cochain1(self.genus, flavor or self.flavor, self.domain_radius,
                        {Z: fn(m) for Z, m in self._values.items()})

    def restrict(self, radius: int) -> "Cochain1":
        if radius > self.domain_radius:
            raise WindowError(f"cannot widen a cochain from {self.domain_radius} to {radius}")
        return Cochain1(self.genus, self.flavor, radius,
                        {Z: m for Z, m in self._values.items() if sup_norm(Z) <= radius})

    def is_zero(self) -> bool:
        return not self._values

    def __eq__(self, other):
        if not isinstance(other, Cochain1):
            return NotImplemented
        return ((self.genus, self.flavor, self.domain_radius, self._values)
                == (other.genus, other.flavor, other.domain_radius, other._values))

    def __hash__(self):
        return hash((self.genus, self.flavor, self.domain_radius,
                     frozenset(self._values.items())))

    def __repr__(self):
        return (f"Cochain1(genus={self.genus}, flavor={self.flavor!r}, "
                f"domain_radius={self.domain_radius}, nonzero={len(self._values)})")

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "flavor": self.flavor,
            "domain_radius": self.domain_radius,
            "entries": [{"Z": list(Z), "value": m.to_json()} for Z, m in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "Cochain1":
        try:
            genus = data["genus"]
            flavor = data["flavor"]
            radius = data["domain_radius"]
            entries = data["entries"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed cochain: missing {exc}") from None
        if flavor not in ("tensor", "wedge"):
            raise ParseError(f"unknown flavor {flavor!r}")
        if not isinstance(genus, int) or genus < 1 or not isinstance(radius, int):
            raise ParseError("malformed cochain header")
        vals = {}
        for e in entries:
            try:
                Z = parse_monomial(e["Z"], genus)
                m = element_from_json(e["value"])
            except (KeyError, TypeError):
                raise ParseError(f"malformed cochain entry {e!r}") from None
            if m.kind != flavor or m.genus != genus:
                raise ParseError(f"entry at {list(Z)} does not match cochain flavor/genus")
            if Z in vals:
                raise ParseError(f"duplicate entry at {list(Z)}")
            vals[Z] = m
        return cls(genus, flavor, radius, vals)


def _genus_of(k) -> int:
    return k.genus


def make_delta_k(k, domain_radius: int) -> Cochain1:
    """Z -> k(Z) Z ^ 1 on the window."""
    g = _genus_of(k)
    one = unit(g)
    vals = {}
    for Z in box(g, domain_radius):
        c = k(Z)
        if c and Z != one:
            vals[Z] = Wedge2Element._raw(g, {(Z, one): Fraction(c)} if Z > one
                                         else {(one, Z): -Fraction(c)})
    return Cochain1(g, "wedge", domain_radius, vals)


def make_delta_k_left(k, domain_radius: int) -> Cochain1:
    """Z -> k(Z) Z (x) 1 on the window."""
    g = _genus_of(k)
    one = unit(g)
    vals = {Z: Tensor2Element._raw(g, {(Z, one): Fraction(k(Z))})
            for Z in box(g, domain_radius) if k(Z)}
    return Cochain1(g, "tensor", domain_radius, vals)


def make_delta_k_right(k, domain_radius: int) -> Cochain1:
    """Z -> k(Z) 1 (x) Z on the window."""
    g = _genus_of(k)
    one = unit(g)
    vals = {Z: Tensor2Element._raw(g, {(one, Z): Fraction(k(Z))})
            for Z in box(g, domain_radius) if k(Z)}
    return Cochain1(g, "tensor", domain_radius, vals)


def make_delta0(r, domain_radius: int, genus: int = 1) -> Cochain1:
    """r * 1 (x) 1 at Z = 1 and zero elsewhere."""
    one = unit(genus)
    r = Fraction(r)
    vals = {one: Tensor2Element._raw(genus, {(one, one): r})} if r else {}
    return Cochain1(genus, "tensor", domain_radius, vals)


def coboundary_cochain(m, domain_radius: int) -> Cochain1:
    """The window restriction of d(m): Z -> Z . m."""
    g = m.genus
    vals = {}
    for Z in box(g, domain_radius):
        v = act(LaurentElement._raw(g, {Z: Fraction(1)}), m)
        if v:
            vals[Z] = v
    return Cochain1(g, m.kind, domain_radius, vals)


# -- cocycle residual ---------------------------------------------------------

def cocycle_residual(delta: Cochain1, Z1: Monomial, Z2: Monomial):
    """i(Z1,Z2) D(Z1 Z2) - Z1 . D(Z2) + Z2 . D(Z1)"""
    Z1, Z2 = tuple(Z1), tuple(Z2)
    if len(Z1) != 2 * delta.genus or len(Z2) != 2 * delta.genus:
        raise GenusError("residual arguments do not match the cochain genus")
    Z12 = tuple(a + b for a, b in zip(Z1, Z2))
    for Z in (Z1, Z2, Z12):
        if not delta.in_window(Z):
            raise WindowError(
                f"{monomial_str(Z)} is outside the domain window of radius {delta.domain_radius}")
    g = delta.genus
    one = Fraction(1)
    res = act(LaurentElement._raw(g, {Z2: one}), delta(Z1)) - act(
        LaurentElement._raw(g, {Z1: one}), delta(Z2))
    i = intersection_form(Z1, Z2)
    if i:
        res = res + delta(Z12).scale(i)
    return res


def residual_pairs(genus: int, domain_radius: int) -> list:
    """
    Unordered pairs {Z1, Z2}, Z1 != Z2, with Z1, Z2, Z1 Z2 in the window.

    Each pair is oriented Z1 > Z2 (the wedge orientation) and the list is
    sorted by total degree of the pair, then lexicographically.
    """
    win = box(genus, domain_radius)
    out = []
    for Z1 in win:
        for Z2 in win:
            if Z2 >= Z1:
                break
            if all(abs(a + b) <= domain_radius for a, b in zip(Z1, Z2)):
                out.append((Z1, Z2))
    out.sort(key=_pair_key)
    return out


def _pair_key(p):
    Z1, Z2 = p
    return (graded_key(Z1)[0] + graded_key(Z2)[0], Z1, Z2)


def _scan_chunk(args):
    delta, pairs = args
    out = []
    for Z1, Z2 in pairs:
        r = cocycle_residual(delta, Z1, Z2)
        if r:
            out.append((Z1, Z2, r))
    return out


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("W1COH_WORKERS", "1")))
    except ValueError:
        return 1


def residual_scan(delta: Cochain1, workers: int | None = None) -> list:
    """
    Every in-window pair with a non-zero residual, as (Z1, Z2, residual).

    Z1 == Z2 is skipped (the residual is identically zero there).  Output order
    is fixed by ``residual_pairs`` whatever the number of workers.
    """
    pairs = residual_pairs(delta.genus, delta.domain_radius)
    workers = workers or _workers()
    if workers <= 1 or len(pairs) < 2000:
        return _scan_chunk((delta, pairs))
    n = -(-len(pairs) // workers)
    chunks = [(delta, pairs[i:i + n]) for i in range(0, len(pairs), n)]
    with ProcessPoolExecutor(workers) as ex:
        results = list(ex.map(_scan_chunk, chunks))
    return [w for chunk in results for w in chunk]


# -- the functional-equation machinery for k ----------------------------------

@dataclass(frozen=True)
class KCheck:
    """Result of testing k(uv) = k(u) + k(v) on pairs with i(u, v) != 0."""

    origin_value: Fraction
    witnesses: tuple  # (u, v, k(uv) - k(u) - k(v)), oriented u > v

    @property
    def ok(self) -> bool:
        return not self.origin_value and not self.witnesses


def k_compatibility_check(k, box_radius: int) -> KCheck:
    """Pairs u, v in the box with non-zero pairing on which k fails to be additive.

    The product uv may leave the box; k is evaluated there as usual.
    """
    if box_radius < 1:
        raise WindowError(f"box radius must be >= 1, got {box_radius}")
    g = k.genus
    win = box(g, box_radius)
    vals = {u: Fraction(k(u)) for u in win}
    wit = []
    for u in win:
        ku = vals[u]
        for v in win:
            if v >= u:
                break
            if not intersection_form(u, v):
                continue
            uv = tuple(a + b for a, b in zip(u, v))
            kuv = vals[uv] if uv in vals else Fraction(k(uv))
            defect = kuv - ku - vals[v]
            if defect:
                wit.append((u, v, defect))
    wit.sort(key=lambda w: _pair_key(w[:2]))
    return KCheck(Fraction(k(unit(g))), tuple(wit))


class ExtensionError(ValueError):
    """k does not agree with the homomorphism built from its basis values."""

    def __init__(self, monomial, expected, actual):
        self.monomial = monomial
        self.expected = expected
        self.actual = actual
        super().__init__(f"k({monomial_str(monomial)}) = {actual}, "
                         f"but the additive extension gives {expected}")


def extend_to_hom(k, box_radius: int) -> HomFunctional:
    """
    The homomorphism agreeing with k on the basis monomials, checked against k
    at every non-zero point of the box.  The value at the origin is ignored.
    Raises ExtensionError at the first disagreement in graded order.
    """
    g = k.genus
    hom = HomFunctional(tuple(Fraction(k(e)) for e in generators(g)))
    one = unit(g)
    for u in sorted(box(g, box_radius), key=graded_key):
        if u == one:
            continue
        got, want = Fraction(k(u)), hom(u)
        if got != want:
            raise ExtensionError(u, want, got)
    return hom


# -- non-coboundary certificate -------------------------------------------------

def noncoboundary_certificate(delta: Cochain1):
    """
    An in-window Z != 1 whose value has a non-zero Z ^ 1 coefficient, or None.

    The Z ^ 1 coefficient of Z . m vanishes for every wedge element m, so a
    returned Z shows that no d(m) agrees with ``delta`` on the window.
    Generators are tried first, then the rest of the window in graded order.
    """
    if delta.flavor != "wedge":
        raise ValueError("the certificate applies to wedge-valued cochains")
    one = unit(delta.genus)
    gens = generators(delta.genus)
    rest = sorted((Z for Z in delta.window() if Z not in gens), key=graded_key)
    for Z in [G for G in gens if delta.in_window(G)] + rest:
        if Z != one and delta(Z).coefficient(Z, one):
            return Z
    return None
