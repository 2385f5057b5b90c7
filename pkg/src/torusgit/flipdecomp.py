"""Signed decompositions of flipped-polytope indicators into unflipped ones.

For i in A and N_i large, 1_{G_i^chi} = 1_{F_i^N} - 1_{F_i^chi} on a region
containing Delta^chi_A (almost everywhere), so expanding the product over A
gives

    1_{Delta^chi_A} = sum_{S subset A} (-1)^{|A - S|} 1_{Delta^{eta^S}}

with eta^S_i = N_i for i in S and chi_i otherwise.  Taking volumes turns this
into an identity of volume polynomials in which the N_i cancel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Sequence

from .chambers import Chamber, chamber_of, is_simple_chi
from .cohomology import NotProjective
from .configuration import VectorConfiguration, is_admissible
from .exact import rat_vector
from .polyhedra import FlippedPolytope, NotSimple
from .polynomials import MultiPoly, chi_names
from .volpoly import volume_polynomial

MAX_RETRIES = 1000


class Inadmissible(ValueError):
    pass


class ResidualNSymbol(AssertionError):
    """Large-number symbols survived the signed sum."""


class Mismatch(AssertionError):
    pass


@dataclass(frozen=True)
class Term:
    sign: int
    eta: tuple[int, ...]
    chamber: Chamber
    flipped: frozenset  # the subset S of A whose coordinates carry N

    def to_json(self) -> dict:
        return {"sign": self.sign, "eta": list(self.eta), "chamber": self.chamber.signs_text()}


@dataclass(frozen=True)
class SignedDecomposition:
    cfg: VectorConfiguration
    chi: tuple[int, ...]
    A: frozenset
    terms: tuple[Term, ...]
    bigN: dict

    def with_sign_flipped(self, index: int) -> "SignedDecomposition":
        """Copy with one term's sign reversed (mutation fixture)."""
        terms = list(self.terms)
        t = terms[index]
        terms[index] = Term(-t.sign, t.eta, t.chamber, t.flipped)
        return SignedDecomposition(self.cfg, self.chi, self.A, tuple(terms), self.bigN)

    def to_json(self) -> dict:
        return {
            "terms": [t.to_json() for t in self.terms],
            "bigN": {str(i): n for i, n in sorted(self.bigN.items())},
        }


def _vertex_bound(cfg: VectorConfiguration, chi, A, i: int) -> int:
    """Smallest integer N with x . a_i + N >= 0 on Delta^chi_A (and N > chi_i)."""
    P = FlippedPolytope(cfg, chi, A)
    need = [Fraction(chi[i - 1]) + 1]
    need += [-cfg.pair(v.point, i) for v in P.vertices()]
    return max(1, ceil(max(need)))


def _subsets(A: Sequence[int]):
    """Subsets of A as indicator tuples, from all-in down to empty."""
    for bits in product((1, 0), repeat=len(A)):
        yield frozenset(i for i, b in zip(A, bits) if b)


def _eta(chi, S, bigN) -> tuple[int, ...]:
    return tuple(bigN[i] if i in S else c for i, c in enumerate(chi, 1))


def flip_decompose(cfg: VectorConfiguration, chi: Sequence, A) -> SignedDecomposition:
    chi_r = rat_vector(chi)
    if any(x.denominator != 1 for x in chi_r):
        raise ValueError("chi: must be integral")
    chi = tuple(int(x) for x in chi_r)
    A = frozenset(A)
    if not is_simple_chi(cfg, chi):
        raise NotSimple(f"chi={list(chi)} is not simple")
    if not is_admissible(cfg, ()):
        raise NotProjective(f"{cfg.name}: the empty flip-set is inadmissible")
    if not is_admissible(cfg, A):
        raise Inadmissible(f"flip set {sorted(A)} is not admissible")

    order = sorted(A)
    bigN: dict[int, int] = {}
    for i in order:
        n = 2 * _vertex_bound(cfg, chi, A, i)
        while n in bigN.values():
            n += 1
        bigN[i] = n

    bump = random.Random(0)
    for attempt in range(MAX_RETRIES):
        etas = [(S, _eta(chi, S, bigN)) for S in _subsets(order)]
        if all(is_simple_chi(cfg, eta) for _, eta in etas):
            break
        # a fixed bump pattern can stay on a wall forever, so draw it (deterministically)
        for i in order:
            n = bigN[i] + bump.randint(1, 2 + attempt)
            while n in (v for j, v in bigN.items() if j != i):
                n += 1
            bigN[i] = n
    else:
        raise NotSimple("could not find large numbers avoiding all walls")

    terms = tuple(
        Term((-1) ** (len(A) - len(S)), eta, chamber_of(cfg, eta), S) for S, eta in etas
    )
    return SignedDecomposition(cfg, chi, A, terms, bigN)


def _inside(pairings, eta, A) -> bool:
    """Membership in Delta^eta_A given the pairings x . a_i."""
    for i, (p, e) in enumerate(zip(pairings, eta), 1):
        v = p + e
        if (v < 0) if i not in A else (v > 0):
            return False
    return True


def _bounding_box(cfg, polys: list[FlippedPolytope]):
    pts = [v.point for P in polys for v in P.vertices()]
    if not pts:
        return [Fraction(-1)] * cfg.d, [Fraction(1)] * cfg.d
    lo = [min(p[r] for p in pts) for r in range(cfg.d)]
    hi = [max(p[r] for p in pts) for r in range(cfg.d)]
    pad = [max((h - l) / 5, Fraction(1)) for l, h in zip(lo, hi)]
    return [l - p for l, p in zip(lo, pad)], [h + p for h, p in zip(hi, pad)]


def _random_point(rng: random.Random, lo, hi) -> list[Fraction]:
    return [l + (h - l) * Fraction(rng.randint(0, 10**6), 10**6) for l, h in zip(lo, hi)]


def _random_interior(rng: random.Random, verts) -> list[Fraction]:
    """A strictly positive random combination of the vertices."""
    w = [rng.randint(1, 1000) for _ in verts]
    total = sum(w)
    return [sum(Fraction(wj) * v[r] for wj, v in zip(w, verts)) / total for r in range(len(verts[0]))]


def verify_indicator_identity(dec: SignedDecomposition, samples: int = 1000, seed: int = 0) -> bool:
    """Check sum sign * 1_{Delta^eta}(x) = 1_{Delta^chi_A}(x) at random generic points.

    Sample sources rotate between a box around Delta^chi_A, a box around every
    term, and the interior of each nonempty polytope involved (so that no term
    can hide by being small).  Points on any of the hyperplanes are redrawn.
    """
    cfg = dec.cfg
    target = FlippedPolytope(cfg, dec.chi, dec.A)
    pieces = [(t.sign, t.eta) for t in dec.terms]
    etas = [dec.chi] + [t.eta for t in dec.terms]
    polys = [P for P in [target] + [FlippedPolytope(cfg, t.eta) for t in dec.terms] if P.vertices()]
    whole = _bounding_box(cfg, polys)
    near = _bounding_box(cfg, [target]) if target.vertices() else whole
    sources = [("box", near), ("box", whole)]
    sources += [("poly", [v.point for v in P.vertices()]) for P in polys]
    no_flip = frozenset()
    rng = random.Random(seed)
    for k in range(samples):
        kind, data = sources[k % len(sources)]
        while True:
            x = _random_point(rng, *data) if kind == "box" else _random_interior(rng, data)
            pairings = [cfg.pair(x, i) for i in range(1, cfg.n + 1)]
            if not any(p + eta[i] == 0 for eta in etas for i, p in enumerate(pairings)):
                break
        total = sum(s for s, eta in pieces if _inside(pairings, eta, no_flip))
        if total != int(_inside(pairings, dec.chi, dec.A)):
            return False
    return True


def n_names(dec: SignedDecomposition) -> tuple[str, ...]:
    return tuple(f"N{i}" for i in sorted(dec.A))


def term_polynomials(dec: SignedDecomposition) -> list[MultiPoly]:
    """Chamber polynomial of each eta^S, in chi-variables."""
    return [volume_polynomial(dec.cfg, t.eta).poly for t in dec.terms]


def plain_signed_sum(dec: SignedDecomposition) -> MultiPoly:
    """sum sign * P^{eta^S} with every variable kept as chi."""
    total = MultiPoly.zero(chi_names(dec.cfg.n))
    for t, P in zip(dec.terms, term_polynomials(dec)):
        total = total + P * t.sign
    return total


def symbolic_signed_sum(dec: SignedDecomposition) -> MultiPoly:
    """sum sign * P^{eta^S} with chi_i replaced by a symbol N_i for i in S."""
    xs = chi_names(dec.cfg.n)
    names = xs + n_names(dec)
    nsym = {i: len(xs) + k for k, i in enumerate(sorted(dec.A))}
    total = MultiPoly.zero(names)
    for t, P in zip(dec.terms, term_polynomials(dec)):
        images = [
            MultiPoly.var(names, nsym[i] if i in t.flipped else i - 1) for i in range(1, dec.cfg.n + 1)
        ]
        total = total + P.substitute(images) * t.sign
    return total


def volume_identity(dec: SignedDecomposition) -> MultiPoly:
    """The N-free polynomial sum sign * P^{eta^S}; checked against P^chi_A."""
    F = symbolic_signed_sum(dec)
    xs = chi_names(dec.cfg.n)
    residual = [name for k, name in enumerate(F.names) if name not in xs and F.depends_on(k)]
    if residual:
        raise ResidualNSymbol(f"symbols {residual} do not cancel in {F.to_text()}")
    F = F.restrict(xs)
    expected = volume_polynomial(dec.cfg, dec.chi, dec.A).poly
    if F != expected:
        raise Mismatch(f"signed sum {F.to_text()} differs from P_A = {expected.to_text()}")
    return F


def decomposition_report(dec: SignedDecomposition, samples: int = 1000, seed: int = 0) -> dict:
    poly = volume_identity(dec)
    return {
        **dec.to_json(),
        "indicator_ok": verify_indicator_identity(dec, samples, seed),
        "polynomial": poly.to_text(),
        "polynomial_coefficients": poly.to_json(),
    }
