"""
Brute-force reference implementations, written against plain dicts so that
they share no code with the package.  Slow on purpose.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def pairing(u, v):
    return sum(u[2 * j] * v[2 * j + 1] - v[2 * j] * u[2 * j + 1] for j in range(len(u) // 2))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def bracket(P: dict, Q: dict) -> dict:
    out = {}
    for u, a in P.items():
        for v, b in Q.items():
            w = add(u, v)
            out[w] = out.get(w, 0) + pairing(u, v) * a * b
    return {w: c for w, c in out.items() if c}


def act_tensor(Z: dict, T: dict) -> dict:
    """Z . (u (x) v) = {Z,u} (x) v + u (x) {Z,v}, extended bilinearly."""
    out = {}
    for z, a in Z.items():
        for (u, v), b in T.items():
            for key, c in (((add(z, u), v), pairing(z, u)), ((u, add(z, v)), pairing(z, v))):
                out[key] = out.get(key, 0) + a * b * c
    return {k: c for k, c in out.items() if c}


def wedge_as_tensor(W: dict) -> dict:
    """Antisymmetric tensor of a wedge given on arbitrary orientations."""
    out = {}
    for (u, v), c in W.items():
        out[(u, v)] = out.get((u, v), 0) + c
        out[(v, u)] = out.get((v, u), 0) - c
    return {k: c for k, c in out.items() if c}


def wedge_coefficient(T: dict, u, v):
    """Coefficient of u ^ v (u > v) read from an antisymmetric tensor."""
    return T.get((u, v), 0)


def box(genus, r):
    return list(itertools.product(range(-r, r + 1), repeat=2 * genus))


def rank(rows: list, ncols: int) -> int:
    """Dense Gaussian elimination over Q."""
    M = [[Fraction(x) for x in row] for row in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r
