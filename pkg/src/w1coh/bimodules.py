"""
The tensor square and wedge square of W_1(g) as modules over W_1(g).

Both are stored sparsely as ``{(u, v): coefficient}``.  A wedge element keeps
only the orientation with ``u > v`` in lexicographic order; anything else is
folded in with the sign of u^v = -v^u, and u^u is dropped.

Z acts on either square as a derivation:

    Z . (u (x) v) = {Z, u} (x) v + u (x) {Z, v}
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from w1coh.errors import GenusError, ParseError
from w1coh.lattice_poisson import (
    LaurentElement,
    Monomial,
    format_fraction,
    intersection_form,
    monomial_str,
    parse_fraction,
    parse_monomial,
    unit,
)

_HALF = Fraction(1, 2)


class _PairElement:
    __slots__ = ("genus", "_terms")
    kind = "?"

    def __init__(self, genus: int, terms: Mapping | Iterable = ()):
        if genus < 1:
            raise GenusError(f"genus must be >= 1, got {genus}")
        n = 2 * genus
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for (u, v), c in items:
            u, v = tuple(u), tuple(v)
            if len(u) != n or len(v) != n:
                raise GenusError(f"pair ({u}, {v}) has wrong length for genus {genus}")
            self._accumulate(acc, u, v, Fraction(c))
        self.genus = genus
        self._terms = {k: c for k, c in acc.items() if c}

    @staticmethod
    def _accumulate(acc, u, v, c):
        acc[(u, v)] = acc.get((u, v), 0) + c

    @classmethod
    def _raw(cls, genus, terms):
        obj = cls.__new__(cls)
        obj.genus = genus
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, genus: int):
        return cls._raw(genus, {})

    @classmethod
    def pair(cls, u: Monomial, v: Monomial, coef=1):
        return cls(len(u) // 2, {(u, v): coef})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        for k in sorted(self._terms):
            yield k, self._terms[k]

    def support(self) -> list:
        return sorted(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if type(self) is not type(other):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.genus != other.genus:
            raise GenusError(f"genus mismatch: {self.genus} vs {other.genus}")

    def __add__(self, other):
        if not isinstance(other, _PairElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return self._raw(self.genus, out)

    def __neg__(self):
        return self._raw(self.genus, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, _PairElement):
            return NotImplemented
        return self + (-other)

    def scale(self, r):
        r = Fraction(r)
        if not r:
            return self.zero(self.genus)
        return self._raw(self.genus, {k: r * c for k, c in self._terms.items()})

    def __rmul__(self, r):
        if isinstance(r, (int, Fraction)):
            return self.scale(r)
        return NotImplemented

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, _PairElement):
            return NotImplemented
        return (type(self) is type(other) and self.genus == other.genus
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.kind, self.genus, frozenset(self._terms.items())))

    def __repr__(self):
        sym = " (x) " if self.kind == "tensor" else " ^ "
        if not self._terms:
            return f"{type(self).__name__}({self.genus}, 0)"
        body = " + ".join(f"{c}*{monomial_str(u)}{sym}{monomial_str(v)}"
                          for (u, v), c in self.items())
        return f"{type(self).__name__}({self.genus}, {body})"

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "kind": self.kind,
            "terms": [{"u": list(u), "v": list(v), "coef": format_fraction(c)}
                      for (u, v), c in self.items()],
        }

    @classmethod
    def from_json(cls, data):
        try:
            genus, kind, terms = data["genus"], data.get("kind", cls.kind), data["terms"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed pair element: {exc}") from None
        if kind != cls.kind:
            raise ParseError(f"expected kind {cls.kind!r}, got {kind!r}")
        if not isinstance(genus, int) or genus < 1 or not isinstance(terms, list):
            raise ParseError("malformed pair element header")
        seen = set()
        out = []
        for t in terms:
            try:
                u = parse_monomial(t["u"], genus)
                v = parse_monomial(t["v"], genus)
                c = parse_fraction(t["coef"])
            except (KeyError, TypeError):
                raise ParseError(f"malformed term {t!r}") from None
            if (u, v) in seen:
                raise ParseError(f"duplicate pair {list(u)}, {list(v)}")
            seen.add((u, v))
            out.append(((u, v), c))
        return cls(genus, out)


class Tensor2Element(_PairElement):
    """Element of W_1(g) (x) W_1(g)."""

    __slots__ = ()
    kind = "tensor"

    def coefficient(self, u: Monomial, v: Monomial) -> Fraction:
        return self._terms.get((tuple(u), tuple(v)), Fraction(0))


class Wedge2Element(_PairElement):
    """Element of W_1(g) ^ W_1(g), stored on pairs with u > v."""

    __slots__ = ()
    kind = "wedge"

    @staticmethod
    def _accumulate(acc, u, v, c):
        if u == v:
            return
        if u < v:
            u, v, c = v, u, -c
        acc[(u, v)] = acc.get((u, v), 0) + c

    def coefficient(self, u: Monomial, v: Monomial) -> Fraction:
        u, v = tuple(u), tuple(v)
        if u == v:
            return Fraction(0)
        if u > v:
            return self._terms.get((u, v), Fraction(0))
        return -self._terms.get((v, u), Fraction(0))

    @classmethod
    def from_json(cls, data):
        obj = super().from_json(data)
        for t in data["terms"]:
            if not tuple(t["u"]) > tuple(t["v"]):
                raise ParseError(f"wedge term not in canonical orientation: {t!r}")
        return obj


def _act_pairs(Z: LaurentElement, terms: dict, add) -> dict:
    acc: dict = {}
    zt = Z._terms
    # integer fast path: Fraction arithmetic dominates otherwise
    integral = (all(c.denominator == 1 for c in zt.values())
                and all(c.denominator == 1 for c in terms.values()))
    if integral:
        zt = {z: int(c) for z, c in zt.items()}
        terms = {k: int(c) for k, c in terms.items()}
    for z, a in zt.items():
        for (u, v), b in terms.items():
            ab = a * b
            i = intersection_form(z, u)
            if i:
                add(acc, tuple(p + q for p, q in zip(z, u)), v, i * ab)
            i = intersection_form(z, v)
            if i:
                add(acc, u, tuple(p + q for p, q in zip(z, v)), i * ab)
    if integral:
        return {k: Fraction(c) for k, c in acc.items() if c}
    return {k: c for k, c in acc.items() if c}


def _check_genus(Z: LaurentElement, m: _PairElement) -> None:
    if Z.genus != m.genus:
        raise GenusError(f"genus mismatch: {Z.genus} vs {m.genus}")


def act_tensor(Z: LaurentElement, t: Tensor2Element) -> Tensor2Element:
    _check_genus(Z, t)
    return Tensor2Element._raw(t.genus, _act_pairs(Z, t._terms, Tensor2Element._accumulate))


def act_wedge(Z: LaurentElement, w: Wedge2Element) -> Wedge2Element:
    _check_genus(Z, w)
    return Wedge2Element._raw(w.genus, _act_pairs(Z, w._terms, Wedge2Element._accumulate))


def act(Z: LaurentElement, m: _PairElement) -> _PairElement:
    """Dispatch to the action matching the flavour of ``m``."""
    if isinstance(m, Wedge2Element):
        return act_wedge(Z, m)
    if isinstance(m, Tensor2Element):
        return act_tensor(Z, m)
    raise TypeError(f"expected a tensor or wedge element, got {type(m).__name__}")


def coboundary_value(m: _PairElement, Z: LaurentElement) -> _PairElement:
    """(d m)(Z) = Z . m"""
    return act(Z, m)


def wedge_to_tensor(w: Wedge2Element) -> Tensor2Element:
    """u ^ v  ->  u (x) v - v (x) u"""
    out = {}
    for (u, v), c in w._terms.items():
        out[(u, v)] = c
        out[(v, u)] = -c
    return Tensor2Element._raw(w.genus, out)


def tensor_to_wedge(t: Tensor2Element) -> Wedge2Element:
    """u (x) v  ->  1/2 u ^ v"""
    return Wedge2Element(t.genus, (((u, v), _HALF * c) for (u, v), c in t._terms.items()))


# -- module decomposition ----------------------------------------------------

TENSOR_PARTS = ("one_one", "left", "right", "prime")
WEDGE_PARTS = ("left", "prime")


def tensor_part(u: Monomial, v: Monomial) -> str:
    """Which summand R(1(x)1), W'(x)1, 1(x)W', W'(x)W' the pair u (x) v lies in."""
    one = (0,) * len(u)
    if u == one:
        return "one_one" if v == one else "right"
    return "left" if v == one else "prime"


def wedge_part(u: Monomial, v: Monomial) -> str:
    """W' ^ 1 (called ``left``) or W' ^ W' (``prime``)."""
    one = (0,) * len(u)
    return "left" if one in (u, v) else "prime"


def part_of(flavor: str, u: Monomial, v: Monomial) -> str:
    return tensor_part(u, v) if flavor == "tensor" else wedge_part(u, v)


def decompose_tensor(t: Tensor2Element) -> tuple:
    """Split into the (1(x)1, W'(x)1, 1(x)W', W'(x)W') parts."""
    parts = {p: {} for p in TENSOR_PARTS}
    for (u, v), c in t._terms.items():
        parts[tensor_part(u, v)][(u, v)] = c
    return tuple(Tensor2Element._raw(t.genus, parts[p]) for p in TENSOR_PARTS)


def decompose_wedge(w: Wedge2Element) -> tuple:
    """Split into the (W' ^ 1, W' ^ W') parts."""
    parts = {p: {} for p in WEDGE_PARTS}
    for (u, v), c in w._terms.items():
        parts[wedge_part(u, v)][(u, v)] = c
    return tuple(Wedge2Element._raw(w.genus, parts[p]) for p in WEDGE_PARTS)


def element_class(flavor: str):
    if flavor == "tensor":
        return Tensor2Element
    if flavor == "wedge":
        return Wedge2Element
    raise ValueError(f"unknown flavor {flavor!r}")


def element_from_json(data) -> _PairElement:
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind not in ("tensor", "wedge"):
        raise ParseError(f"unknown pair element kind {kind!r}")
    return element_class(kind).from_json(data)


def unit_pair(genus: int, flavor: str = "tensor") -> _PairElement:
    """1 (x) 1; the wedge version is zero."""
    one = unit(genus)
    return element_class(flavor).pair(one, one)
