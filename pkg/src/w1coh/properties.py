"""
Exhaustive and seeded-random checks of the algebraic axioms, shared by the
``verify-axioms`` command and the test-suite.  Each check returns a
``CheckResult`` with the number of cases tried and the first few failures.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from w1coh.bimodules import (
    Tensor2Element,
    Wedge2Element,
    act,
    decompose_tensor,
    decompose_wedge,
    element_from_json,
    tensor_to_wedge,
    wedge_to_tensor,
)
from w1coh.lattice_poisson import LaurentElement, bracket, box, unit

MAX_FAILURES = 5


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail) -> None:
        self.cases += 1
        if not ok and len(self.failures) < MAX_FAILURES:
            self.failures.append(detail)

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "passed": self.passed,
                "failures": [str(f) for f in self.failures]}


# -- random objects ------------------------------------------------------------

def random_monomial(rng: random.Random, genus: int, radius: int) -> tuple:
    return tuple(rng.randint(-radius, radius) for _ in range(2 * genus))


def random_element(rng: random.Random, genus: int, radius: int, terms: int = 3):
    n = rng.randint(1, terms)
    return LaurentElement(genus, [(random_monomial(rng, genus, radius), rng.randint(-3, 3))
                                  for _ in range(n)])


def random_pair_element(rng: random.Random, genus: int, radius: int, flavor: str,
                        terms: int = 3):
    cls = Wedge2Element if flavor == "wedge" else Tensor2Element
    n = rng.randint(1, terms)
    return cls(genus, [((random_monomial(rng, genus, radius), random_monomial(rng, genus, radius)),
                        rng.randint(-3, 3)) for _ in range(n)])


# -- Poisson axioms --------------------------------------------------------------

def _poisson_case(results, P, Q, R):
    anti, jac, leib, cent = results
    anti.record(bracket(P, Q) == -bracket(Q, P), (P, Q))
    j = bracket(P, bracket(Q, R)) + bracket(Q, bracket(R, P)) + bracket(R, bracket(P, Q))
    jac.record(not j, (P, Q, R))
    leib.record(bracket(P, Q * R) == bracket(P, Q) * R + Q * bracket(P, R), (P, Q, R))
    cent.record(not bracket(LaurentElement.one(P.genus), P), P)


def poisson_axioms(exhaustive_radius: int = 2, samples: int = 500, seed: int = 0,
                   sample_genus: int = 2) -> list:
    """
    Antisymmetry, Jacobi, Leibniz and centrality of 1: every monomial triple
    of the genus-1 box of the given radius, then ``samples`` random triples
    of small elements in ``sample_genus``.
    """
    results = [CheckResult(n) for n in
               ("antisymmetry", "jacobi", "leibniz", "unit_central")]
    monos = [LaurentElement.mono(u) for u in box(1, exhaustive_radius)]
    for P, Q, R in itertools.product(monos, repeat=3):
        _poisson_case(results, P, Q, R)
    rng = random.Random(seed)
    for _ in range(samples):
        P, Q, R = (random_element(rng, sample_genus, 2) for _ in range(3))
        _poisson_case(results, P, Q, R)
    return results


# -- module axioms -----------------------------------------------------------------

def module_axioms(samples: int = 200, seed: int = 0, genus_choices=(1, 2)) -> list:
    """
    Random checks of the action axiom X.(Y.m) - Y.(X.m) = {X, Y}.m on both
    flavours, the intertwining of s: wedge -> tensor and p: tensor -> wedge
    with the action, p(s(w)) = w, the component decompositions summing back,
    and JSON round-trips.
    """
    action = CheckResult("action_axiom")
    inter = CheckResult("s_p_intertwine")
    retract = CheckResult("p_after_s_identity")
    decomp = CheckResult("decomposition_sums")
    trip = CheckResult("json_round_trip")
    rng = random.Random(seed)
    for _ in range(samples):
        g = rng.choice(genus_choices)
        X = random_element(rng, g, 2, 2)
        Y = random_element(rng, g, 2, 2)
        for flavor in ("tensor", "wedge"):
            m = random_pair_element(rng, g, 2, flavor)
            lhs = act(X, act(Y, m)) - act(Y, act(X, m))
            action.record(lhs == act(bracket(X, Y), m), (flavor, X, Y, m))
            trip.record(element_from_json(m.to_json()) == m, m)
        w = random_pair_element(rng, g, 2, "wedge")
        t = random_pair_element(rng, g, 2, "tensor")
        inter.record(wedge_to_tensor(act(X, w)) == act(X, wedge_to_tensor(w))
                     and tensor_to_wedge(act(X, t)) == act(X, tensor_to_wedge(t)), (X, w, t))
        retract.record(tensor_to_wedge(wedge_to_tensor(w)) == w, w)
        tp = decompose_tensor(t)
        wp = decompose_wedge(w)
        decomp.record(sum(tp, Tensor2Element.zero(g)) == t
                      and sum(wp, Wedge2Element.zero(g)) == w, (t, w))
        trip.record(LaurentElement.from_json(X.to_json()) == X, X)
    return [action, inter, retract, decomp, trip]


def unit_is_invariant(genus: int, radius: int) -> CheckResult:
    """1 (x) 1 is killed by every monomial of the box (it spans a trivial submodule)."""
    res = CheckResult("unit_tensor_invariant")
    one = Tensor2Element(genus, {(unit(genus), unit(genus)): 1})
    for u in box(genus, radius):
        res.record(not act(LaurentElement.mono(u), one), u)
    return res
