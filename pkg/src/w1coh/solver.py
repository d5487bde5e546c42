"""
Windowed linear algebra for 1-cocycles.

Unknowns are the coefficients C^Z_{u,v} of a cochain, one per monomial Z in
the domain window and pair (u, v) in the value window.  The cocycle condition
at (Z1, Z2), read off at the coefficient of u (x) v, is the homogeneous row

    i(Z1,Z2) C^{Z1Z2}_{u,v}
      - i(Z1,u) C^{Z2}_{Z1^-1 u, v} - i(Z1,v) C^{Z2}_{u, Z1^-1 v}
      + i(Z2,u) C^{Z1}_{Z2^-1 u, v} + i(Z2,v) C^{Z1}_{u, Z2^-1 v}  = 0.

The value window can be read in two ways (``boundary``):

  support  the cochain's values are supported in the value window, so every
           coefficient outside it is a structural zero and every residual
           coefficient gives a row, including those landing outside the
           window.  Zero-extension to a larger window preserves solutions.
  drop     nothing is assumed outside the window: a row is kept only when
           every coefficient it needs with a non-zero multiplier is an
           unknown, a known (pinned) value, or structurally zero.  Unknowns
           near the window edge are then barely constrained.

For the wedge flavour the unknowns are the canonical (u > v) coefficients and
the same formula is read antisymmetrically.

Everything splits by the weight  u v Z^{-1}  in Z^{2g}: the action and the
row above both preserve it.  Large computations are therefore done one weight
block at a time; the blocks are independent, so their union is the full
system.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from w1coh.bimodules import (
    Tensor2Element,
    Wedge2Element,
    element_class,
    part_of,
    tensor_to_wedge,
)
from w1coh.cochains import (
    Cochain1,
    HomFunctional,
    coboundary_cochain,
    make_delta0,
    make_delta_k,
    make_delta_k_left,
    make_delta_k_right,
    noncoboundary_certificate,
    residual_pairs,
    residual_scan,
)
from w1coh.errors import GenusError, WindowError
from w1coh.lattice_poisson import (
    box,
    format_fraction,
    generators,
    intersection_form,
    sup_norm,
    unit,
)
from w1coh.linalg import Inconsistent, SparseEchelon, peel_singletons

FLAVORS = ("tensor", "wedge")
BOUNDARIES = ("drop", "support")


class VarIndex(NamedTuple):
    """The unknown C^Z_{u,v}.  Wedge unknowns always have u > v."""

    Z: tuple
    u: tuple
    v: tuple


@dataclass
class LinearSystem:
    """
    Sparse exact rows over named unknowns.

    ``rows`` holds ``(coefficients, rhs, tag)`` with coefficients a dict
    VarIndex -> Fraction/int and tag the (Z1, Z2, u, v) instance that
    produced the row.
    """

    genus: int
    flavor: str
    domain_radius: int
    value_radius: int
    variables: list
    rows: list = field(default_factory=list)
    part: str | None = None
    weight: tuple | None = None
    known: tuple = ()
    boundary: str = "support"

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def num_equations(self) -> int:
        return len(self.rows)

    def residual(self, assignment) -> list:
        """Rows violated by ``assignment`` (dict VarIndex -> value, missing = 0)."""
        bad = []
        for coeffs, rhs, tag in self.rows:
            s = sum((c * assignment.get(x, 0) for x, c in coeffs.items()), Fraction(0))
            if s != rhs:
                bad.append(tag)
        return bad


# -- helpers -------------------------------------------------------------------

def _mul(a, b):
    return tuple(p + q for p, q in zip(a, b))


def _div(a, b):
    return tuple(p - q for p, q in zip(a, b))


def _in_box(u, r):
    for a in u:
        if a > r or a < -r:
            return False
    return True


def _check_flavor(flavor):
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")


def weight_of(Z, u, v):
    """The grading u v Z^{-1} preserved by the action and by the cocycle rows."""
    return tuple(a + b - z for z, a, b in zip(Z, u, v))


def cochain_assignment(delta: Cochain1) -> dict:
    """Coefficient dictionary VarIndex -> Fraction of a cochain."""
    out = {}
    for Z, m in delta.items():
        for (u, v), c in m.items():
            out[VarIndex(Z, u, v)] = c
    return out


def assignment_to_cochain(genus, flavor, domain_radius, assignment) -> Cochain1:
    cls = element_class(flavor)
    by_Z: dict = {}
    for x, c in assignment.items():
        if c:
            by_Z.setdefault(x.Z, {})[(x.u, x.v)] = Fraction(c)
    return Cochain1(genus, flavor, domain_radius,
                    {Z: cls(genus, t) for Z, t in by_Z.items()})


def _value_pairs(genus, value_radius, flavor, part, weight_target=None):
    """Pairs (u, v) of the value window (canonical for wedge), optionally with uv fixed."""
    by_product = _pairs_by_product(genus, value_radius, flavor, part)
    if weight_target is not None:
        return list(by_product.get(tuple(weight_target), ()))
    return sorted(x for pairs in by_product.values() for x in pairs)


@functools.lru_cache(maxsize=32)
def _pairs_by_product(genus, value_radius, flavor, part):
    out: dict = {}
    V = box(genus, value_radius)
    for u in V:
        for v in V:
            if flavor == "wedge" and not u > v:
                continue
            if part is not None and part_of(flavor, u, v) != part:
                continue
            out.setdefault(_mul(u, v), []).append((u, v))
    return out


@functools.lru_cache(maxsize=32)
def _residual_pairs_by_product(genus, domain_radius):
    out: dict = {}
    for Z1, Z2 in residual_pairs(genus, domain_radius):
        out.setdefault(_mul(Z1, Z2), []).append((Z1, Z2))
    return out


def cocycle_weights(genus: int, domain_radius: int, value_radius: int, flavor: str = "tensor",
                    part: str | None = None) -> list:
    """Every weight carried by some unknown, in lexicographic order."""
    prods = _pairs_by_product(genus, value_radius, flavor, part)
    return sorted({_div(Q, Z) for Q in prods for Z in box(genus, domain_radius)})


# -- the cocycle system --------------------------------------------------------

def build_cocycle_system(genus: int, domain_radius: int, value_radius: int, flavor: str,
                         part: str | None = None, weight=None, known: dict | None = None,
                         boundary: str = "support") -> LinearSystem:
    """
    Rows of the cocycle condition on the window.

    ``part`` restricts values to one summand of the module (``one_one``,
    ``left``, ``right``, ``prime`` for tensors; ``left``, ``prime`` for
    wedges); coefficients outside it are zero.  ``weight`` keeps only one
    block of the grading.  ``known`` maps monomials Z to fully known values
    (Tensor2Element / Wedge2Element); their coefficients are moved to the
    right-hand side and they carry no unknowns.

    ``boundary`` decides what happens at the edge of the value window:
    ``"drop"`` keeps only rows whose referenced coefficients all lie in the
    window; ``"support"`` treats every coefficient outside the window as a
    structural zero (cochains whose values are supported in the window) and
    keeps every residual coefficient, including those landing outside it.
    """
    _check_flavor(flavor)
    if boundary not in BOUNDARIES:
        raise ValueError(f"unknown boundary rule {boundary!r}")
    if genus < 1:
        raise GenusError(f"genus must be >= 1, got {genus}")
    if not (value_radius >= domain_radius >= 1):
        raise WindowError(
            f"need value_radius >= domain_radius >= 1, got {value_radius}, {domain_radius}")
    known = {tuple(Z): m for Z, m in (known or {}).items()}
    for Z, m in known.items():
        if m.kind != flavor or m.genus != genus:
            raise ValueError(f"known value at {Z} has the wrong flavor or genus")
    wedge = flavor == "wedge"
    R, S = domain_radius, value_radius
    weight = tuple(weight) if weight is not None else None
    window = box(genus, R)

    variables = []
    for Z in window:
        if Z in known:
            continue
        target = _mul(weight, Z) if weight is not None else None
        for u, v in _value_pairs(genus, S, flavor, part, target):
            variables.append(VarIndex(Z, u, v))

    def ref(W, p, q):
        # -> ('zero',) | ('known', value) | ('var', VarIndex, sign) | None (out of window)
        sign = 1
        if wedge:
            if p == q:
                return 0, None, 0
            if p < q:
                p, q, sign = q, p, -1
        if W in known:
            c = known[W].coefficient(p, q)
            return (1, None, sign * c) if c else (0, None, 0)
        if part is not None and part_of(flavor, p, q) != part:
            return 0, None, 0
        if not (_in_box(p, S) and _in_box(q, S)):
            return zero_outside
        return 2, VarIndex(W, p, q), sign

    support = boundary == "support"
    zero_outside = (0, None, 0) if support else None
    row_radius = S + R if support else S
    by_prod = _pairs_by_product(genus, row_radius, flavor, part)
    if weight is None:
        all_vals = _value_pairs(genus, row_radius, flavor, part)
        instances = ((Z1, Z2, all_vals) for Z1, Z2 in residual_pairs(genus, R))
    else:
        res = _residual_pairs_by_product(genus, R)
        if len(by_prod) < len(res):
            prods = sorted(P for P in (_div(Q, weight) for Q in by_prod) if P in res)
        else:
            prods = sorted(P for P in res if _mul(weight, P) in by_prod)
        instances = ((Z1, Z2, by_prod[_mul(weight, P)]) for P in prods for Z1, Z2 in res[P])
    rows = []
    for Z1, Z2, vals in instances:
        if not vals:
            continue
        Z12 = _mul(Z1, Z2)
        i12 = intersection_form(Z1, Z2)
        Z1inv = tuple(-a for a in Z1)
        Z2inv = tuple(-a for a in Z2)
        for a, b in vals:
            terms = (
                (i12, Z12, a, b),
                (-intersection_form(Z1, a), Z2, _mul(Z1inv, a), b),
                (-intersection_form(Z1, b), Z2, a, _mul(Z1inv, b)),
                (intersection_form(Z2, a), Z1, _mul(Z2inv, a), b),
                (intersection_form(Z2, b), Z1, a, _mul(Z2inv, b)),
            )
            coeffs: dict = {}
            rhs = Fraction(0)
            ok = True
            for c, W, p, q in terms:
                if not c:
                    continue
                r = ref(W, p, q)
                if r is None:
                    ok = False
                    break
                kind, x, val = r
                if kind == 2:
                    s = coeffs.get(x, 0) + c * val
                    if s:
                        coeffs[x] = s
                    else:
                        coeffs.pop(x, None)
                elif kind == 1:
                    rhs -= c * val
            if not ok or (not coeffs and not rhs):
                continue
            rows.append((coeffs, rhs, (Z1, Z2, a, b)))
    return LinearSystem(genus, flavor, R, S, variables, rows, part, weight,
                        tuple(sorted(known)), boundary)


# -- kernels -------------------------------------------------------------------

@dataclass
class SolveReport:
    """Outcome of eliminating a LinearSystem (or a family of weight blocks)."""

    genus: int
    flavor: str
    domain_radius: int
    value_radius: int
    num_variables: int
    num_equations: int
    rank: int
    kernel_dimension: int
    part: str | None = None
    weight: tuple | None = None
    kernel_basis: list | None = None  # list of Cochain1 when requested
    certificate: list | None = None   # [(tag, multiplier)] when infeasible

    def to_json(self, include_basis: bool = False) -> dict:
        out = {
            "genus": self.genus,
            "flavor": self.flavor,
            "domain_radius": self.domain_radius,
            "value_radius": self.value_radius,
            "part": self.part,
            "weight": list(self.weight) if self.weight is not None else None,
            "num_variables": self.num_variables,
            "num_equations": self.num_equations,
            "rank": self.rank,
            "kernel_dimension": self.kernel_dimension,
        }
        if self.certificate is not None:
            out["certificate"] = _certificate_json(self.certificate)
        if include_basis and self.kernel_basis is not None:
            out["kernel_basis"] = [c.to_json() for c in self.kernel_basis]
        return out


def _certificate_json(cert):
    return [{"row": [list(x) for x in tag], "multiplier": format_fraction(c)}
            for tag, c in cert]


def _ordered_rows(sys: LinearSystem, index: dict):
    # pivot rule: rows in tag order, each reduced at its smallest variable
    for coeffs, rhs, tag in sorted(sys.rows, key=lambda r: r[2]):
        yield {index[x]: c for x, c in coeffs.items()}, rhs, tag


def _eliminate(sys: LinearSystem, order_key=None, track=False):
    variables = sorted(sys.variables, key=order_key) if order_key else sorted(sys.variables)
    index = {x: n for n, x in enumerate(variables)}
    ech = SparseEchelon(track=track)
    ech.add_rows(_ordered_rows(sys, index))
    return ech, variables, index


def kernel_basis(sys: LinearSystem, with_basis: bool = True) -> SolveReport:
    """Exact basis of the homogeneous solution space of ``sys``."""
    if any(rhs for _, rhs, _ in sys.rows):
        raise ValueError("kernel_basis expects a homogeneous system")
    ech, variables, _ = _eliminate(sys)
    basis = None
    if with_basis:
        basis = []
        for vec in ech.kernel_basis(range(len(variables))):
            basis.append(assignment_to_cochain(
                sys.genus, sys.flavor, sys.domain_radius,
                {variables[n]: c for n, c in vec.items()}))
    return SolveReport(sys.genus, sys.flavor, sys.domain_radius, sys.value_radius,
                       sys.num_variables, sys.num_equations, ech.rank,
                       sys.num_variables - ech.rank, sys.part, sys.weight, basis)


def satisfies(sys: LinearSystem, delta: Cochain1) -> bool:
    """Whether the coefficients of ``delta`` solve every row of ``sys``.

    Coefficients of ``delta`` outside the system's unknowns must vanish.
    """
    assignment = cochain_assignment(delta)
    names = set(sys.variables)
    for x, c in assignment.items():
        if x.Z in sys.known:
            continue
        if sys.weight is not None and weight_of(*x) != sys.weight:
            continue
        if x not in names and sup_norm(x.Z) <= sys.domain_radius:
            return False
    return not sys.residual(assignment)


@dataclass
class ProjectionReport:
    """Solution set of a (blocked) cocycle system projected onto interior unknowns."""

    genus: int
    flavor: str
    domain_radius: int
    value_radius: int
    interior_radius: int
    part: str | None
    num_variables: int
    num_equations: int
    interior_variables: int
    interior_dimension: int
    feasible: bool
    blocks: int
    solution: Cochain1 | None = None
    certificate: list | None = None
    value_margin: int = 0
    boundary: str = "support"

    @property
    def unique(self) -> bool:
        return self.feasible and self.interior_dimension == 0

    def to_json(self) -> dict:
        out = {
            "genus": self.genus,
            "flavor": self.flavor,
            "domain_radius": self.domain_radius,
            "value_radius": self.value_radius,
            "interior_radius": self.interior_radius,
            "value_margin": self.value_margin,
            "boundary": self.boundary,
            "part": self.part,
            "num_variables": self.num_variables,
            "num_equations": self.num_equations,
            "weight_blocks": self.blocks,
            "interior_variables": self.interior_variables,
            "interior_dimension": self.interior_dimension,
            "feasible": self.feasible,
            "unique_on_interior": self.unique,
        }
        if self.solution is not None:
            out["interior_solution"] = self.solution.to_json()
        if self.certificate is not None:
            out["certificate"] = _certificate_json(self.certificate)
        return out


def _block_projection(sys: LinearSystem, is_interior, track=False):
    """
    Singleton propagation followed by elimination of the remaining core with
    interior unknowns ordered last.  Returns (interior count, projection
    dimension, forced interior values or None).  Raises Inconsistent, with a
    combination over the original row tags when ``track`` is set.
    """
    rows = sorted(sys.rows, key=lambda r: r[2])
    fixed, core = peel_singletons(rows, track)
    free = sorted({x for coeffs, _, _ in core for x in coeffs},
                  key=lambda x: (is_interior(x), x))
    index = {x: n for n, x in enumerate(free)}
    first = next((n for n, x in enumerate(free) if is_interior(x)), len(free))
    ech = SparseEchelon(track=track)
    try:
        for n, (coeffs, rhs, _) in enumerate(core):
            ech.add({index[x]: c for x, c in coeffs.items()}, rhs, n)
    except Inconsistent as exc:
        if not track:
            raise
        comb: dict = {}
        for n, mult in exc.combination.items():
            for tag, c in core[n][2].items():
                comb[tag] = comb.get(tag, 0) + mult * c
        raise Inconsistent({t: c for t, c in comb.items() if c}, exc.rhs) from None
    interior = [x for x in sys.variables if is_interior(x)]
    unfixed = sum(1 for x in interior if x not in fixed)
    int_rank = sum(1 for v in ech.pivots if v >= first)
    dim = unfixed - int_rank
    values = None
    if dim == 0:
        values = {x: c for x, c in fixed.items() if is_interior(x) and c}
        for n, c in ech.solve(range(first, len(free))).items():
            values[free[n]] = c
    return len(interior), dim, values


def project_to_interior(genus, domain_radius, value_radius, flavor, part=None,
                        known=None, interior_radius=None, weights=None,
                        value_margin=0, boundary="support") -> ProjectionReport:
    """
    Solve the cocycle system block by block and measure the projection of its
    solution set onto the interior unknowns (||Z|| <= interior_radius).

    Rows with one remaining unknown are solved and substituted first; the
    leftover core is eliminated with interior unknowns ordered last, so pivot
    rows landing on interior unknowns mention only interior unknowns and
    their count is the rank of the projection.

    ``value_margin`` > 0 additionally requires ||u||, ||v|| <= value_radius -
    value_margin for an unknown to count as interior.
    """
    if interior_radius is None:
        interior_radius = domain_radius - 1
    known = known or {}
    value_cap = value_radius - value_margin

    def is_interior(x):
        return (sup_norm(x.Z) <= interior_radius
                and (not value_margin or (sup_norm(x.u) <= value_cap
                                          and sup_norm(x.v) <= value_cap)))

    if weights is None:
        weights = cocycle_weights(genus, domain_radius, value_radius, flavor, part)
    nvar = neq = n_int = dim = blocks = 0
    solution: dict = {}
    for w in weights:
        sys = build_cocycle_system(genus, domain_radius, value_radius, flavor,
                                   part=part, weight=w, known=known, boundary=boundary)
        if not sys.variables and not sys.rows:
            continue
        blocks += 1
        nvar += sys.num_variables
        neq += sys.num_equations
        try:
            k, d, values = _block_projection(sys, is_interior)
        except Inconsistent:
            try:
                _block_projection(sys, is_interior, track=True)
            except Inconsistent as exc:
                cert = sorted((tag, Fraction(c)) for tag, c in exc.combination.items() if c)
            return ProjectionReport(genus, flavor, domain_radius, value_radius,
                                    interior_radius, part, nvar, neq, n_int, 0, False,
                                    blocks, None, cert, value_margin, boundary)
        n_int += k
        dim += d
        if values:
            solution.update(values)
    sol = None
    if dim == 0:
        for Z, m in known.items():
            for (u, v), c in m.items():
                x = VarIndex(tuple(Z), u, v)
                if is_interior(x):
                    solution[x] = c
        sol = assignment_to_cochain(genus, flavor, interior_radius,
                                    {x: c for x, c in solution.items() if is_interior(x)})
    return ProjectionReport(genus, flavor, domain_radius, value_radius, interior_radius,
                            part, nvar, neq, n_int, dim, True, blocks, sol, None,
                            value_margin, boundary)


# -- coboundary membership -----------------------------------------------------

@dataclass
class CoboundaryResult:
    """Outcome of solving d(m) = delta on the window with m in a box."""

    feasible: bool
    m: object = None                  # Tensor2Element / Wedge2Element
    certificate: list | None = None   # [((Z, u, v), multiplier)] proving infeasibility
    absolute: object = None           # monomial witness from the Z^1 coefficient test
    num_variables: int = 0
    num_equations: int = 0

    def to_json(self) -> dict:
        out = {
            "feasible": self.feasible,
            "num_variables": self.num_variables,
            "num_equations": self.num_equations,
            "window_relative": self.absolute is None,
        }
        if self.m is not None:
            out["m"] = self.m.to_json()
        if self.certificate is not None:
            out["certificate"] = _certificate_json(self.certificate)
        if self.absolute is not None:
            out["absolute_witness"] = list(self.absolute)
        return out


def _action_coeffs(Z, a, b, wedge, radius):
    """Coefficient of (a, b) in Z . m as a dict over basis pairs of m in the box."""
    out: dict = {}
    Zinv = tuple(-z for z in Z)
    for c, p, q in ((intersection_form(Z, a), _mul(Zinv, a), b),
                    (intersection_form(Z, b), a, _mul(Zinv, b))):
        if not c:
            continue
        if wedge:
            if p == q:
                continue
            if p < q:
                p, q, c = q, p, -c
        if _in_box(p, radius) and _in_box(q, radius):
            s = out.get((p, q), 0) + c
            if s:
                out[(p, q)] = s
            else:
                out.pop((p, q))
    return out


def is_coboundary(delta: Cochain1, coboundary_radius: int) -> CoboundaryResult:
    """
    Look for m with sup-norm support <= coboundary_radius and (Z . m) = delta(Z)
    for every Z in the window.  Infeasibility is relative to that box unless
    ``absolute`` is set (a Z ^ 1 witness, which rules out every m).
    """
    g, R, S = delta.genus, delta.domain_radius, coboundary_radius
    wedge = delta.flavor == "wedge"
    for Z, val in delta.items():
        for (a, b), _ in val.items():
            if sup_norm(a) > S + R or sup_norm(b) > S + R:
                raise WindowError(
                    f"value at {Z} reaches beyond radius {S + R}; enlarge the coboundary box")
    target = cochain_assignment(delta)
    weights = sorted({weight_of(*x) for x in target})
    cls = element_class(delta.flavor)
    window = box(g, R)
    m_terms: dict = {}
    nvar = neq = 0
    for w in weights:
        unknowns = [(p, q) for p, q in _value_pairs(g, S, delta.flavor, None, w)]
        index = {x: n for n, x in enumerate(unknowns)}
        nvar += len(unknowns)
        rows = []
        for Z in window:
            pairs = set()
            for p, q in unknowns:
                pairs.add((_mul(Z, p), q))
                pairs.add((p, _mul(Z, q)))
            val = delta(Z)
            pairs.update(k for k in val.support() if weight_of(Z, *k) == w)
            for a, b in sorted(pairs):
                if wedge:
                    if a == b:
                        continue
                    if a < b:
                        continue  # canonical orientation appears separately
                coeffs = _action_coeffs(Z, a, b, wedge, S)
                rhs = val.coefficient(a, b)
                if coeffs or rhs:
                    rows.append(({index[x]: c for x, c in coeffs.items()}, rhs, (Z, a, b)))
        rows.sort(key=lambda r: r[2])
        neq += len(rows)
        ech = SparseEchelon(track=False)
        try:
            ech.add_rows(rows)
        except Inconsistent:
            ech = SparseEchelon(track=True)
            try:
                ech.add_rows(rows)
            except Inconsistent as exc:
                cert = sorted((tag, Fraction(c)) for tag, c in exc.combination.items() if c)
                return CoboundaryResult(False, None, cert,
                                        noncoboundary_certificate(delta) if wedge else None,
                                        nvar, neq)
        for n, c in ech.solve().items():
            m_terms[unknowns[n]] = c
    m = cls(g, m_terms)
    if coboundary_cochain(m, R) != delta:
        raise AssertionError("coboundary solve failed exact verification")
    return CoboundaryResult(True, m, None, None, nvar, neq)


def verify_certificate(delta: Cochain1, coboundary_radius: int, certificate) -> bool:
    """Check an infeasibility certificate independently of the elimination."""
    wedge = delta.flavor == "wedge"
    total: dict = {}
    rhs = Fraction(0)
    for (Z, a, b), c in certificate:
        for x, e in _action_coeffs(Z, a, b, wedge, coboundary_radius).items():
            total[x] = total.get(x, 0) + c * e
        rhs += c * delta(Z).coefficient(a, b)
    return all(v == 0 for v in total.values()) and rhs != 0


# -- quotient ranks --------------------------------------------------------------

def _coboundary_rows(genus, flavor, domain_radius, coboundary_radius, weight):
    """Vectors d(e) for the weight-``weight`` basis elements e of the m-box."""
    cls = element_class(flavor)
    for p, q in _value_pairs(genus, coboundary_radius, flavor, None, weight):
        yield cochain_assignment(coboundary_cochain(cls.pair(p, q), domain_radius))


def rank_modulo_coboundaries(family: list, coboundary_radius: int) -> dict:
    """
    Dimension of span(family) in (cochains on the window) / (window
    restrictions of d(m), m supported in the coboundary box).

    Both spaces split by weight, so each family member is reduced weight by
    weight against the coboundaries of that weight; the reduced vectors lie
    in a fixed complement of the coboundary space and their rank is the
    answer.
    """
    if not family:
        return {"family_rank": 0, "quotient_rank": 0, "coboundary_rank": 0}
    g, flavor, R = family[0].genus, family[0].flavor, family[0].domain_radius
    for f in family:
        if (f.genus, f.flavor, f.domain_radius) != (g, flavor, R):
            raise WindowError("family members live on different windows")
    vecs = [cochain_assignment(f) for f in family]
    weights = sorted({weight_of(*x) for v in vecs for x in v})
    names: dict = {}

    def idx(x):
        # weight-major numbering keeps each block contiguous
        n = names.get(x)
        if n is None:
            n = names[x] = len(names)
        return n

    reduced = [dict() for _ in vecs]
    cob_rank = 0
    for w in weights:
        ech = SparseEchelon()
        block = [sorted(x for x in v if weight_of(*x) == w) for v in vecs]
        keys = sorted({x for b in block for x in b})
        for x in keys:
            idx(x)
        cob = list(_coboundary_rows(g, flavor, R, coboundary_radius, w))
        for x in sorted({x for row in cob for x in row}):
            idx(x)
        for n, row in enumerate(cob):
            ech.add({idx(x): c for x, c in row.items()}, 0, n)
        cob_rank += ech.rank
        for j, v in enumerate(vecs):
            part = {idx(x): v[x] for x in block[j]}
            if part:
                reduced[j].update(ech.remainder(part))
    fam = SparseEchelon()
    fam_q = SparseEchelon()
    for j, v in enumerate(vecs):
        fam.add({idx(x): c for x, c in v.items()}, 0, j)
        if reduced[j]:
            fam_q.add(reduced[j], 0, j)
    return {"family_rank": fam.rank, "quotient_rank": fam_q.rank,
            "coboundary_rank": cob_rank}


# -- reports -----------------------------------------------------------------------

def basis_homs(genus: int) -> list:
    return [HomFunctional.basis(genus, j) for j in range(2 * genus)]


def family(genus: int, domain_radius: int, flavor: str) -> list:
    """(name, cochain) for the classes the classification predicts."""
    ks = basis_homs(genus)
    labels = [f"{c}{j}" for j in range(1, genus + 1) for c in "ab"]
    if flavor == "wedge":
        return [(f"delta_k[{l}]", make_delta_k(k, domain_radius)) for l, k in zip(labels, ks)]
    out = [("delta_0", make_delta0(1, domain_radius, genus))]
    out += [(f"delta_l[{l}]", make_delta_k_left(k, domain_radius)) for l, k in zip(labels, ks)]
    out += [(f"delta_r[{l}]", make_delta_k_right(k, domain_radius)) for l, k in zip(labels, ks)]
    return out


def expected_dimension(genus: int, flavor: str) -> int:
    return 2 * genus if flavor == "wedge" else 1 + 2 * (2 * genus)


def classification_report(genus: int, domain_radius: int, value_radius: int, flavor: str,
                          coboundary_radius: int | None = None) -> dict:
    """
    Rank of the predicted generators of H^1 modulo windowed coboundaries,
    together with the checks that each generator is a cocycle on the window
    and satisfies the cocycle rows of its weight block.
    """
    _check_flavor(flavor)
    if coboundary_radius is None:
        coboundary_radius = value_radius
    if not (value_radius >= domain_radius >= 1) or coboundary_radius < 1:
        raise WindowError("need value_radius >= domain_radius >= 1 and coboundary_radius >= 1")
    fam = family(genus, domain_radius, flavor)
    cochains = [c for _, c in fam]
    ranks = rank_modulo_coboundaries(cochains, coboundary_radius)
    cocycle = {name: not residual_scan(c) for name, c in fam}
    zero = unit(genus)
    sys0 = build_cocycle_system(genus, domain_radius, value_radius, flavor, weight=zero)
    in_system = {name: satisfies(sys0, c) for name, c in fam}
    expected = expected_dimension(genus, flavor)
    report = {
        "command": "classify",
        "genus": genus,
        "flavor": flavor,
        "domain_radius": domain_radius,
        "value_radius": value_radius,
        "coboundary_radius": coboundary_radius,
        "family": [name for name, _ in fam],
        "family_rank": ranks["family_rank"],
        "coboundary_rank_in_family_weights": ranks["coboundary_rank"],
        "dimension_mod_coboundaries": ranks["quotient_rank"],
        "expected_dimension": expected,
        "expected_met": ranks["quotient_rank"] == expected,
        "cocycle_on_window": cocycle,
        "satisfies_cocycle_system": in_system,
        "weight_block_size": {"variables": sys0.num_variables,
                              "equations": sys0.num_equations},
    }
    if flavor == "tensor":
        diffs = {}
        for j, k in enumerate(basis_homs(genus)):
            lr = make_delta_k_left(k, domain_radius) - make_delta_k_right(k, domain_radius)
            d = lr.map_values(tensor_to_wedge, "wedge") - make_delta_k(k, domain_radius)
            diffs[str(j)] = "zero" if d.is_zero() else (
                "coboundary" if is_coboundary(d, coboundary_radius).feasible else "nonzero")
        report["iota_composition"] = diffs
    report["passed"] = (report["expected_met"] and all(cocycle.values())
                        and all(in_system.values())
                        and all(v == "zero" or v == "coboundary"
                                for v in report.get("iota_composition", {}).values()))
    return report


# -- generator propagation -------------------------------------------------------

def pin_generators(genus: int, flavor: str, assignments: dict, value_radius: int,
                   part: str | None = None) -> dict:
    """Known values at 1, x_1, y_1, ..., x_g, y_g (missing ones are zero), validated."""
    _check_flavor(flavor)
    gens = [unit(genus)] + generators(genus)
    cls = element_class(flavor)
    assignments = {tuple(Z): m for Z, m in assignments.items()}
    for Z in assignments:
        if Z not in gens:
            raise ValueError(f"{list(Z)} is not 1 or a generator")
    known = {}
    for Z in gens:
        m = assignments.get(Z, cls.zero(genus))
        if not isinstance(m, cls) or m.genus != genus:
            raise ValueError(f"assignment at {list(Z)} must be a genus-{genus} {flavor} element")
        for (u, v), _ in m.items():
            if sup_norm(u) > value_radius or sup_norm(v) > value_radius:
                raise WindowError(f"assignment at {list(Z)} leaves the value window")
            if part is not None and part_of(flavor, u, v) != part:
                raise ValueError(f"assignment at {list(Z)} is not in the {part} component")
        known[Z] = m
    return known


def propagate_from_generators(genus: int, flavor: str, assignments: dict,
                              domain_radius: int, value_radius: int,
                              part: str | None = None, value_margin: int = 0,
                              boundary: str = "support") -> ProjectionReport:
    """
    Pin D(1), D(x_1), D(y_1), ..., D(y_g) to the given values and solve the
    windowed cocycle system for everything else.  The report says whether the
    values on the interior sub-window ||Z|| <= domain_radius - 1 are forced,
    and gives them when they are.
    """
    known = pin_generators(genus, flavor, assignments, value_radius, part)
    return project_to_interior(genus, domain_radius, value_radius, flavor,
                               part=part, known=known, value_margin=value_margin,
                               boundary=boundary)


def verify_row_certificate(genus, domain_radius, value_radius, flavor, certificate,
                           part=None, known=None, boundary="support") -> bool:
    """
    Independent check of an infeasibility certificate from project_to_interior:
    the stated combination of cocycle rows has all-zero coefficients and a
    non-zero right-hand side.
    """
    if not certificate:
        return False
    total: dict = {}
    rhs = Fraction(0)
    systems: dict = {}
    for tag, mult in certificate:
        Z1, Z2, a, b = (tuple(t) for t in tag)
        w = _div(_mul(a, b), _mul(Z1, Z2))
        if w not in systems:
            sys = build_cocycle_system(genus, domain_radius, value_radius, flavor,
                                       part=part, weight=w, known=known, boundary=boundary)
            systems[w] = {r[2]: r for r in sys.rows}
        row = systems[w].get((Z1, Z2, a, b))
        if row is None:
            return False
        for x, c in row[0].items():
            total[x] = total.get(x, 0) + mult * c
        rhs += mult * row[1]
    return all(c == 0 for c in total.values()) and rhs != 0


def interior_kernel(genus, domain_radius, value_radius, flavor, part=None,
                    value_margin=0, boundary="support") -> ProjectionReport:
    """Homogeneous system (nothing pinned), projected to the interior."""
    return project_to_interior(genus, domain_radius, value_radius, flavor, part=part,
                               value_margin=value_margin, boundary=boundary)
