"""
Laurent monomials on the lattice Z^{2g} and the Poisson algebra they span.

A monomial x_1^{a_1} y_1^{b_1} ... x_g^{a_g} y_g^{b_g} is stored as the plain
tuple (a_1, b_1, ..., a_g, b_g); the genus is half its length.  Elements of the
algebra are finite sums of monomials with exact rational coefficients, and the
bracket is determined on monomials by

    {u, v} = i(u, v) * u v

where i is the standard symplectic pairing of exponent vectors.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from w1coh.errors import GenusError, ParseError

Monomial = tuple  # tuple[int, ...] of length 2g

_FRACTION_RE = re.compile(r"^-?\d+(/\d+)?$")


# -- monomials ---------------------------------------------------------------

def unit(genus: int) -> Monomial:
    if genus < 1:
        raise GenusError(f"genus must be >= 1, got {genus}")
    return (0,) * (2 * genus)


def monomial_genus(u: Monomial) -> int:
    return len(u) // 2


def generator(genus: int, name: str) -> Monomial:
    """Exponent vector of a named generator, e.g. ``"x1"`` or ``"y2"``."""
    m = re.fullmatch(r"([xy])(\d+)", name)
    if m is None:
        raise ValueError(f"bad generator name {name!r}")
    j = int(m.group(2))
    if not 1 <= j <= genus:
        raise GenusError(f"generator {name} does not exist in genus {genus}")
    exps = [0] * (2 * genus)
    exps[2 * (j - 1) + (m.group(1) == "y")] = 1
    return tuple(exps)


def generators(genus: int) -> list:
    """x_1, y_1, ..., x_g, y_g in that order."""
    return [generator(genus, f"{c}{j}") for j in range(1, genus + 1) for c in "xy"]


def _check_same(u: Monomial, v: Monomial) -> None:
    if len(u) != len(v):
        raise GenusError(
            f"genus mismatch: {monomial_genus(u)} vs {monomial_genus(v)}")


def intersection_form(u: Monomial, v: Monomial) -> int:
    """Sum over handles of a_j b'_j - a'_j b_j."""
    _check_same(u, v)
    s = 0
    for j in range(0, len(u), 2):
        s += u[j] * v[j + 1] - v[j] * u[j + 1]
    return s


def monomial_mul(u: Monomial, v: Monomial) -> Monomial:
    _check_same(u, v)
    return tuple(a + b for a, b in zip(u, v))


def monomial_inv(u: Monomial) -> Monomial:
    return tuple(-a for a in u)


def sup_norm(u: Monomial) -> int:
    return max((abs(a) for a in u), default=0)


def box(genus: int, radius: int) -> list:
    """All monomials with sup-norm <= radius, in lexicographic order."""
    if radius < 0:
        return []
    r = range(-radius, radius + 1)
    return list(itertools.product(r, repeat=2 * genus))


def monomial_str(u: Monomial) -> str:
    parts = []
    for j in range(len(u) // 2):
        for name, e in (("x", u[2 * j]), ("y", u[2 * j + 1])):
            if e == 1:
                parts.append(f"{name}{j + 1}")
            elif e:
                parts.append(f"{name}{j + 1}^{e}")
    return "*".join(parts) if parts else "1"


# -- rationals ---------------------------------------------------------------

def format_fraction(q) -> str:
    return str(Fraction(q))


def parse_fraction(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str) or not _FRACTION_RE.match(s.strip()):
        raise ParseError(f"not an exact rational string: {s!r}")
    try:
        return Fraction(s.strip())
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {s!r}") from None


def parse_monomial(data, genus: int) -> Monomial:
    if (not isinstance(data, (list, tuple)) or len(data) != 2 * genus
            or not all(isinstance(a, int) and not isinstance(a, bool) for a in data)):
        raise ParseError(f"expected {2 * genus} integer exponents, got {data!r}")
    return tuple(data)


# -- elements ----------------------------------------------------------------

class LaurentElement:
    """
    A finite linear combination of monomials with Fraction coefficients.

    Instances are immutable; zero coefficients are never stored, so two
    elements are equal exactly when their term dictionaries are.
    """

    __slots__ = ("genus", "_terms")

    def __init__(self, genus: int, terms: Mapping | Iterable = ()):
        if genus < 1:
            raise GenusError(f"genus must be >= 1, got {genus}")
        n = 2 * genus
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for u, c in items:
            u = tuple(u)
            if len(u) != n:
                raise GenusError(f"monomial {u} has wrong length for genus {genus}")
            acc[u] = acc.get(u, 0) + Fraction(c)
        self.genus = genus
        self._terms = {u: c for u, c in acc.items() if c}

    @classmethod
    def _raw(cls, genus: int, terms: dict) -> "LaurentElement":
        # terms already canonical: tuples of the right length, Fraction, non-zero
        obj = cls.__new__(cls)
        obj.genus = genus
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, genus: int) -> "LaurentElement":
        return cls._raw(genus, {})

    @classmethod
    def mono(cls, u: Monomial, coef=1) -> "LaurentElement":
        return cls(monomial_genus(u), {tuple(u): coef})

    @classmethod
    def one(cls, genus: int) -> "LaurentElement":
        return cls(genus, {unit(genus): 1})

    # access
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        """(monomial, coefficient) pairs in lexicographic monomial order."""
        for u in sorted(self._terms):
            yield u, self._terms[u]

    def coefficient(self, u: Monomial) -> Fraction:
        return self._terms.get(tuple(u), Fraction(0))

    def support(self) -> list:
        return sorted(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic
    def _check(self, other: "LaurentElement") -> None:
        if self.genus != other.genus:
            raise GenusError(f"genus mismatch: {self.genus} vs {other.genus}")

    def __add__(self, other):
        if not isinstance(other, LaurentElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for u, c in other._terms.items():
            s = out.get(u, 0) + c
            if s:
                out[u] = s
            else:
                out.pop(u, None)
        return LaurentElement._raw(self.genus, out)

    def __neg__(self):
        return LaurentElement._raw(self.genus, {u: -c for u, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self + (-other)

    def scale(self, r) -> "LaurentElement":
        r = Fraction(r)
        if not r:
            return LaurentElement.zero(self.genus)
        return LaurentElement._raw(self.genus, {u: r * c for u, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentElement):
            self._check(other)
            out: dict = {}
            for u, a in self._terms.items():
                for v, b in other._terms.items():
                    w = tuple(p + q for p, q in zip(u, v))
                    out[w] = out.get(w, 0) + a * b
            return LaurentElement._raw(self.genus, {w: c for w, c in out.items() if c})
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.genus == other.genus and self._terms == other._terms

    def __hash__(self):
        return hash((self.genus, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"LaurentElement({self.genus}, 0)"
        body = " + ".join(f"{c}*{monomial_str(u)}" for u, c in self.items())
        return f"LaurentElement({self.genus}, {body})"

    # serialization
    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "terms": [{"exp": list(u), "coef": format_fraction(c)} for u, c in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "LaurentElement":
        try:
            genus = data["genus"]
            terms = data["terms"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed element: {exc}") from None
        if not isinstance(genus, int) or genus < 1 or not isinstance(terms, list):
            raise ParseError("malformed element header")
        acc = {}
        for t in terms:
            try:
                u = parse_monomial(t["exp"], genus)
                c = parse_fraction(t["coef"])
            except (KeyError, TypeError):
                raise ParseError(f"malformed term {t!r}") from None
            if u in acc:
                raise ParseError(f"duplicate monomial {list(u)}")
            acc[u] = c
        return cls(genus, acc)


def bracket(P: LaurentElement, Q: LaurentElement) -> LaurentElement:
    """Poisson bracket, extended bilinearly from {u, v} = i(u, v) uv."""
    P._check(Q)
    out: dict = {}
    for u, a in P._terms.items():
        for v, b in Q._terms.items():
            i = intersection_form(u, v)
            if i:
                w = tuple(p + q for p, q in zip(u, v))
                out[w] = out.get(w, 0) + i * a * b
    return LaurentElement._raw(P.genus, {w: c for w, c in out.items() if c})


def graded_key(u: Monomial):
    """Total absolute degree first, then lexicographic."""
    return (sum(abs(a) for a in u), u)
