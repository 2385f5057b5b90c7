"""Volume polynomials of flipped polytopes.

For a simple chi the tight bases that are vertices of Delta^chi_A do not
change inside the chamber of chi, and each vertex is a linear function of
chi.  Summing Lawrence's terms symbolically gives a homogeneous degree-d
polynomial that computes Vol Delta^eta_A for every eta in the chamber.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chambers import Chamber, chamber_of, is_simple_chi
from .configuration import VectorConfiguration, is_admissible
from .exact import rat_vector, solve
from .polyhedra import FlippedPolytope, NotSimple, Unbounded, lawrence_term, random_functional
from .polynomials import MultiPoly, chi_names


@dataclass(frozen=True)
class VolumePolynomial:
    poly: MultiPoly
    chamber: Chamber
    A: frozenset

    def __call__(self, eta: Sequence) -> Fraction:
        return self.poly.evaluate(eta)


def _vertex_bases(P: FlippedPolytope) -> list[tuple[int, ...]]:
    """Tight bases of the vertices of P at a simple chi (one basis per vertex)."""
    out = []
    for v in P.vertices():
        if len(v.tight_set) != P.cfg.d:
            raise NotSimple(f"{P!r}: vertex {v.point} is degenerate")
        out.append(tuple(sorted(v.tight_set)))
    return out


def _height_form(cfg: VectorConfiguration, B: Sequence[int], c: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of chi -> <c, v_B(chi)> where v_B . a_i = -chi_i on B.

    With w solving sum_i w_i a_i = c (i in B), <c, v_B> = -sum_i w_i chi_i.
    """
    d = cfg.d
    MT = [[cfg.a[i - 1][r] for i in B] for r in range(d)]
    w = solve(MT, c)
    coeffs = [Fraction(0)] * cfg.n
    for i, wi in zip(B, w):
        coeffs[i - 1] = -wi
    return coeffs


def _generic_functional(P: FlippedPolytope, vbases, seed: int) -> tuple[list[Fraction], list[Fraction]]:
    rng = random.Random(seed)
    outward = [[[-x for x in P.normal(i)] for i in B] for B in vbases]
    for _ in range(1000):
        c = random_functional(rng, P.cfg.d)
        terms = [lawrence_term(M, c) for M in outward]
        if all(t is not None for t in terms):
            return c, terms
    raise RuntimeError("failed to draw a generic functional")


def symbolic_lawrence(P: FlippedPolytope, seed: int = 0) -> MultiPoly:
    """sum over vertex bases B of <c, v_B(chi)>^d / (d! |det| prod gamma)."""
    cfg = P.cfg
    names = chi_names(cfg.n)
    vbases = _vertex_bases(P)
    if not vbases:
        return MultiPoly.zero(names)
    c, terms = _generic_functional(P, vbases, seed)
    total = MultiPoly.zero(names)
    for B, t in zip(vbases, terms):
        height = MultiPoly.linear(names, _height_form(cfg, B, c))
        total = total + (height ** cfg.d) * t
    return total


def volume_polynomial(cfg: VectorConfiguration, chi: Sequence, A=(), seed: int = 0) -> VolumePolynomial:
    """The polynomial P^chi_A with Vol Delta^eta_A = P^chi_A(eta) near chi.

    Raises NotSimple off the chambers and Unbounded when A is inadmissible
    while Delta^chi_A is nonempty.  An empty Delta^chi_A gives zero.
    """
    chi = rat_vector(chi)
    A = frozenset(A)
    key = ("volpoly", tuple(chi), A, seed)
    if key in cfg._cache:
        return cfg._cache[key]
    if not is_simple_chi(cfg, chi):
        raise NotSimple(f"chi={[str(x) for x in chi]} is not simple")
    chamber = chamber_of(cfg, chi)
    P = FlippedPolytope(cfg, chi, A)
    # The a_i span Q^d, so a nonempty Delta has a vertex.
    if not P.vertices():
        poly = MultiPoly.zero(chi_names(cfg.n))
    elif not is_admissible(cfg, A):
        raise Unbounded(f"{P!r} is nonempty and A={sorted(A)} is not admissible")
    else:
        poly = symbolic_lawrence(P, seed)
    result = VolumePolynomial(poly, chamber, A)
    cfg._cache[key] = result
    return result


def translation_operators(cfg: VectorConfiguration) -> list[list[int]]:
    """Rows of the a-matrix: the directions chi -> chi + (v . a_i)_i for v = e_r."""
    return cfg.matrix


def check_translation_invariance(cfg: VectorConfiguration, P: MultiPoly | VolumePolynomial) -> bool:
    """sum_i a_i,r dP/dchi_i = 0 for every coordinate r."""
    poly = P.poly if isinstance(P, VolumePolynomial) else P
    return all(not poly.directional(row) for row in translation_operators(cfg))
